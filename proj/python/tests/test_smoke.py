import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import strata


def test_degree_of_a_cusp():
    assert strata.degree("A_2") == "12(d-2)(d-1)"
    assert strata.degree_coefficients("A_2") == [24, -36, 12]


def test_fixed_degree_route():
    assert strata.degree("A_7", 4) == "504"


def test_names_normalize():
    assert strata.normalize_type_name("a_{5}") == "A5"
    assert strata.degree("A5") == strata.degree("A_5")


def test_errors_map_to_python_exceptions():
    with pytest.raises(strata.UnknownType):
        strata.degree("Q_99")
    with pytest.raises(strata.DegenError):
        strata.degree("E_14")
    with pytest.raises(strata.EliminationError):
        strata.ideal("A_5", degree_guard=2)


def test_multidegree_json_has_the_top_term():
    cls = json.loads(strata.multidegree_json("A_2"))
    top = [t for t in cls["terms"] if t["exp"] == [2, 2, 2]]
    assert top and top[0]["coeff"] == [24, -36, 12]


def test_ideal_of_a4():
    assert "a21^2-4*a02*a40" in strata.ideal("A_4", saturate_by="a40")


def test_verify_ideals_suite():
    rep = strata.verify("ideals", jobs=2)
    assert rep["ok"]
    assert rep["failures"] == 0


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=8, max_value=60))
def test_evaluated_degree_matches_the_polynomial(dv):
    coeffs = strata.degree_coefficients("D_6")
    assert strata.degree("D_6", dv) == str(sum(c * dv**k for k, c in enumerate(coeffs)))


def test_every_catalog_type_has_bounds():
    for t in strata.types():
        det, cod = strata.universality_bounds(t)
        assert det >= 1 and cod >= 1
