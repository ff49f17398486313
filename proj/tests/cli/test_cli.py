import json
import os
import pathlib
import shutil
import subprocess

import jsonschema
import pytest
import sympy
from referencing import Registry, Resource
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

BIN = os.environ.get("STRATA_BIN", "strata")
SCHEMA_DIR = pathlib.Path(os.environ.get("STRATA_SCHEMA_DIR", "data/schema"))
DATA_DIR = pathlib.Path(os.environ.get("STRATA_DATA_DIR", "data"))

d = sympy.Symbol("d")


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("STRATA_CATALOG", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env, timeout=300)


def schema(name):
    resources = []
    for p in SCHEMA_DIR.glob("*.schema.json"):
        resources.append((p.name, Resource.from_contents(json.loads(p.read_text()))))
    registry = Registry().with_resources(resources)
    cls = jsonschema.validators.validator_for(json.loads((SCHEMA_DIR / name).read_text()))
    return cls(json.loads((SCHEMA_DIR / name).read_text()), registry=registry)


def parse_degree(text):
    tr = standard_transformations + (implicit_multiplication_application, convert_xor)
    return sympy.expand(parse_expr(text, local_dict={"d": d}, transformations=tr))


DETERMINISTIC = [
    ["degree", "A_5"],
    ["degree", "A_7", "--d", "4", "--format", "json"],
    ["multidegree", "D_7", "--format", "json"],
    ["tree", "A_6"],
    ["ideal", "A_4", "--format", "json"],
    ["verify", "--suite", "identities", "--jobs", "3", "--format", "json"],
]


@pytest.mark.parametrize("args", DETERMINISTIC, ids=lambda a: " ".join(a))
def test_identical_invocations_give_identical_output(args):
    a, b = run(*args), run(*args)
    assert (a.returncode, a.stdout, a.stderr) == (b.returncode, b.stdout, b.stderr)


def test_verify_report_does_not_depend_on_jobs():
    a = run("verify", "--suite", "all", "--jobs", "1", "--format", "json")
    b = run("verify", "--suite", "all", "--jobs", "6", "--format", "json")
    assert a.stdout == b.stdout


@pytest.mark.parametrize(
    "args,code",
    [
        (["degree", "A_5"], 0),
        (["degree", "a_{5}"], 0),
        (["degree", "Q_99"], 2),
        (["degree", "E_14"], 2),
        (["tree", "E_14"], 2),
        (["tree", "A_2"], 0),
        (["degree", "A_5", "--format", "yaml"], 2),
        (["frobnicate"], 2),
        ([], 2),
        (["ideal", "A_5", "--degree-guard", "2"], 2),
        (["verify", "--suite", "ideals"], 0),
        (["verify", "--suite", "nope"], 2),
    ],
    ids=lambda x: " ".join(x) if isinstance(x, list) else str(x),
)
def test_exit_codes(args, code):
    assert run(*args).returncode == code


def test_verify_exits_one_while_deviations_remain():
    r = run("verify", "--suite", "tables", "--format", "json")
    assert r.returncode == 1
    report = json.loads(r.stdout)
    failing = [c for c in report["cases"] if not c["passed"]]
    assert failing and all("known_deviation" in c for c in failing)


def test_unknown_type_lists_neighbours():
    r = run("degree", "A_77")
    assert "A_7" in r.stderr


def test_omitted_step_is_reported_as_unsupported():
    r = run("tree", "E_14")
    assert "unsupported" in (r.stdout + r.stderr)


@pytest.mark.parametrize("typ", ["A_1", "A_2", "A_5", "D_4", "X_9", "E_12", "Z_13", "J_{2,1}", "W_24"])
def test_degree_json_matches_schema_and_text(typ):
    j = run("degree", typ, "--format", "json")
    assert j.returncode == 0, j.stderr
    obj = json.loads(j.stdout)
    schema("degree.schema.json").validate(obj)
    text = run("degree", typ).stdout.strip()
    poly = parse_degree(text)
    assert poly == sum(int(c) * d**k for k, c in enumerate(obj["coefficients"]))
    assert poly == parse_degree(obj["degree"])


@pytest.mark.parametrize("args", [["A_7", "--d", "4"], ["A_7", "--d", "3"], ["D_4", "--d", "9"]])
def test_degree_at_fixed_d(args):
    obj = json.loads(run("degree", *args, "--format", "json").stdout)
    schema("degree.schema.json").validate(obj)
    if args[0] == "A_7" and args[2] == "4":
        assert obj["value"] == "504"
        assert obj["route"] == "fixed-degree degeneration"
    if args[2] == "3":
        assert "warning" in obj


def test_warning_goes_to_stderr_in_text_mode():
    r = run("degree", "A_7", "--d", "3")
    assert r.stdout.strip() == "-4068"
    assert "universality" in r.stderr


@pytest.mark.parametrize("typ", ["A_2", "A_4", "D_4", "D_8", "X_9", "W_25"])
def test_multidegree_json(typ):
    obj = json.loads(run("multidegree", typ, "--format", "json").stdout)
    schema("multidegree.schema.json").validate(obj)
    assert obj["text"] == run("multidegree", typ).stdout.strip()


def test_multidegree_text_round_trips_through_the_grammar():
    x, l, f = sympy.symbols("X L F")
    obj = json.loads(run("multidegree", "A_4", "--format", "json").stdout)
    tr = standard_transformations + (implicit_multiplication_application, convert_xor)
    parsed = sympy.expand(parse_expr(obj["text"], local_dict={"d": d, "X": x, "L": l, "F": f}, transformations=tr))
    expect = 0
    for t in obj["class"]["terms"]:
        c = sum(int(v) * d**k for k, v in enumerate(t["coeff"]))
        ex = t["exp"]
        expect += c * x ** ex[0] * l ** ex[1] * f ** ex[2]
    assert parsed == sympy.expand(expect)


def test_ideal_json():
    obj = json.loads(run("ideal", "A_4", "--format", "json").stdout)
    schema("ideal.schema.json").validate(obj)
    assert "a21^2-4*a02*a40" in obj["generators"]


def test_verify_json():
    obj = json.loads(run("verify", "--format", "json").stdout)
    schema("verify.schema.json").validate(obj)
    assert obj["passed"] + obj["failed"] == len(obj["cases"])


def test_catalog_override_with_a_broken_golden_row(tmp_path):
    text = (DATA_DIR / "goldens.json").read_text()
    assert "12(d-1)(d-2)" in text
    (tmp_path / "goldens.json").write_text(text.replace("12(d-1)(d-2)", "12(d-1)(d-3)", 1))
    r = run("degree", "A_5", env={"STRATA_CATALOG": str(tmp_path)})
    assert r.returncode == 3
    assert "A_2" in r.stderr


def test_catalog_override_with_a_catalog_file(tmp_path):
    shutil.copy(DATA_DIR / "catalog.json", tmp_path / "types.json")
    r = run("degree", "A_5", env={"STRATA_CATALOG": str(tmp_path / "types.json")})
    assert r.returncode == 0
    assert r.stdout.strip() == run("degree", "A_5").stdout.strip()
