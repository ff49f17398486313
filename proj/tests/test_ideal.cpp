#include <algorithm>
#include <random>

#include "doctest.h"
#include "strata/data.hpp"
#include "strata/ideal.hpp"

using namespace strata;

namespace {

Poly v(const std::string& n) { return Poly::var(n); }

JetPoly jet(std::initializer_list<std::pair<LatticePoint, long>> terms, int order) {
    JetPoly j;
    j.order = order;
    for (auto& [p, c] : terms) j.add(p.i, p.j, Poly(c));
    return j;
}

Poly zero_params(Poly p, const std::vector<std::string>& params) {
    for (auto& n : params) p = p.substitute(n, Poly(0));
    return p;
}

}  // namespace

TEST_SUITE("ideal") {
    TEST_CASE("coefficient names") {
        CHECK(jet_coeff_name(2, 1) == "a21");
        CHECK(jet_coeff_name(0, 4) == "a04");
        CHECK(jet_coeff_name(1, 12) == "a_{1,12}");
    }

    TEST_CASE("generic jet has no constant or linear part") {
        JetPoly f = generic_curve_jet(4);
        CHECK(f.terms.size() == 3 + 4 + 5);
        for (auto& [p, c] : f.terms) CHECK(p.i + p.j >= 2);
        CHECK(generic_curve_jet(6, 4).terms.size() == 3 + 4 + 5);
    }

    TEST_CASE("single-term substitution") {
        // x1^2 under x1 -> x1 + x2^2 gives x1^2 + 2 x1 x2^2 + x2^4
        JetPoly f = jet({{{2, 0}, 1}}, 5);
        JetPoly phi1 = jet({{{0, 2}, 1}}, 5), phi2 = jet({}, 5);
        JetPoly got = substitute_jet(f, phi1, phi2, 5);
        CHECK(got == jet({{{2, 0}, 1}, {{1, 2}, 2}, {{0, 4}, 1}}, 5));
        CHECK(substitute_jet(f, phi1, phi2, 3) == jet({{{2, 0}, 1}, {{1, 2}, 2}}, 3));
    }

    TEST_CASE("substitutions compose") {
        std::mt19937 rng(3);
        std::uniform_int_distribution<int> c(-3, 3);
        auto random_jet = [&](int lo, int order) {
            JetPoly j;
            j.order = order;
            for (int s = lo; s <= order; ++s)
                for (int i = 0; i <= s; ++i)
                    if (int k = c(rng)) j.add(i, s - i, Poly(k));
            return j;
        };
        for (int it = 0; it < 10; ++it) {
            const int n = 6;
            JetPoly f = random_jet(2, n), p1 = random_jet(2, n), p2 = random_jet(2, n), s1 = random_jet(2, n),
                    s2 = random_jet(2, n);
            JetPoly twice = substitute_jet(substitute_jet(f, p1, p2, n), s1, s2, n);
            JetPoly once = substitute_jet(f, s1 + substitute_jet(p1, s1, s2, n), s2 + substitute_jet(p2, s1, s2, n), n);
            CHECK(twice == once);
        }
    }

    TEST_CASE("transform is the identity at zero parameters") {
        JetPoly f = generic_curve_jet(5);
        JetPoly t = apply_transform(f, 5, 3);
        auto params = transform_params(3);
        CHECK(params.size() == 2 * (3 + 4));
        for (int s = 2; s <= 5; ++s)
            for (int i = 0; i <= s; ++i) CHECK(zero_params(t.coeff(i, s - i), params) == f.coeff(i, s - i));
        // no linear part: the quadratic terms are untouched, the cubic ones are not
        CHECK(t.coeff(2, 0) == f.coeff(2, 0));
        CHECK(t.coeff(1, 1) == f.coeff(1, 1));
        CHECK(t.coeff(2, 1) != f.coeff(2, 1));
    }

    TEST_CASE("groebner basis is independent of generator order") {
        std::vector<Poly> gens = {v("x") * v("x") - v("y"), v("x") * v("y") - Poly(1), v("y") * v("y") * v("z") - v("x")};
        std::vector<std::string> order = {"x", "y", "z"};
        RatIdeal ref = groebner(gens, order);
        std::mt19937 rng(5);
        for (int it = 0; it < 6; ++it) {
            std::shuffle(gens.begin(), gens.end(), rng);
            RatIdeal g = groebner(gens, order);
            CHECK(g.generators == ref.generators);
        }
        for (auto& p : gens) CHECK(contains(ref, p));
        CHECK_FALSE(contains(ref, v("x") - Poly(2)));
    }

    TEST_CASE("elimination and saturation") {
        // x = t^2, y = t^3 eliminates to y^2 = x^3
        RatIdeal e = eliminate({v("x") - v("t").pow(2), v("y") - v("t").pow(3)}, {"t"});
        REQUIRE(e.generators.size() == 1);
        CHECK(e.generators[0] == (v("y").pow(2) - v("x").pow(3)).primitive());
        // <x y, x^2> : x^inf = <1>
        RatIdeal s = saturate(groebner({v("x") * v("y"), v("x") * v("x")}, {"x", "y"}), v("x"));
        CHECK(contains(s, Poly(1)));
        RatIdeal s2 = saturate(groebner({v("x") * v("y")}, {"x", "y"}), v("x"));
        CHECK(contains(s2, v("y")));
    }

    TEST_CASE("degree guard") {
        // the first S-pair already has degree 4
        std::vector<Poly> gens = {v("x") * v("x") * v("y") - v("z"), v("x") * v("y") * v("y") - v("x")};
        CHECK_THROWS_AS(groebner(gens, {"x", "y", "z"}, 3), EliminationError);
        CHECK_NOTHROW(groebner(gens, {"x", "y", "z"}, 20));
    }

    TEST_CASE("A_4 stratum ideal") {
        const Engine& eng = Engine::instance();
        RatIdeal raw = stratum_ideal(eng.describe("A_4"));
        RatIdeal chart = saturate(raw, v("a40"));
        Poly a11 = v("a11"), a20 = v("a20"), a30 = v("a30");
        Poly disc = v("a21") * v("a21") - Poly(4) * v("a02") * v("a40");
        RatIdeal printed = groebner({a11, a20, a30, disc}, chart.vars);
        for (auto& p : printed.generators) CHECK(contains(chart, p));
        for (auto& p : chart.generators) CHECK(contains(printed, p));

        InspectionReport rep = substitute_and_inspect(chart, "a02", {{"D_5", {"a21"}, "a21", "", 2}});
        REQUIRE(rep.components.size() == 1);
        CHECK(rep.components[0].multiplicity == 2);
        CHECK(rep.components[0].ok());

        InspectionReport same = substitute_and_inspect(chart, "a77", {});
        CHECK(same.unchanged);
    }

    TEST_CASE("a corrupted generator breaks containment") {
        const Engine& eng = Engine::instance();
        RatIdeal chart = saturate(stratum_ideal(eng.describe("A_4")), v("a40"));
        CHECK_FALSE(contains(chart, v("a21") * v("a21") - Poly(3) * v("a02") * v("a40")));
    }
}
