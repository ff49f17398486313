#include "doctest.h"
#include "strata/data.hpp"
#include "strata/degen.hpp"

using namespace strata;

namespace {

ClassElement g(const char* n) { return ClassElement::gen(standard_ring(), n); }

DegenStep step(std::string parent, std::vector<std::pair<std::string, long>> children,
               ClassElement div = divisor_class_default(0, 2)) {
    DegenStep s;
    s.parent = std::move(parent);
    s.killed = {0, 2};
    s.divisor = div;
    s.children = std::move(children);
    return s;
}

GoldenLookup golden_lookup() {
    return [](const std::string& t) { return Engine::instance().goldens().multidegree(t); };
}

}  // namespace

TEST_SUITE("degen") {
    TEST_CASE("default divisor") {
        // (d - b - 2a) X + F + (a - b) L
        CHECK(divisor_class_default(0, 2) == DegreeScalar::linear(1, -2) * g("X") + g("F") - DegreeScalar(2) * g("L"));
        CHECK(divisor_class_default(1, 2) == DegreeScalar::linear(1, -4) * g("X") + g("F") - g("L"));
        CHECK_THROWS(divisor_class_default(-1, 0));
    }

    TEST_CASE("A_4 and D_7 steps as full-class identities") {
        const Engine& e = Engine::instance();
        ClassElement a4 = e.lifted("A_4"), d5 = e.lifted("D_5"), d7 = e.lifted("D_7"), e8 = e.lifted("E_8");
        CHECK(a4 * (DegreeScalar::linear(1, -2) * g("X") + g("F") - DegreeScalar(2) * g("L")) ==
              DegreeScalar(2) * d5);
        CHECK(d7 * (DegreeScalar::linear(1, -4) * g("X") + g("F") - g("L")) == DegreeScalar(2) * e8);
        CHECK(*e.goldens().multidegree("A_4") == a4);
        CHECK(*e.goldens().multidegree("D_7") == d7);
    }

    TEST_CASE("cusp series by degeneration agrees with the chain") {
        const Engine& e = Engine::instance();
        const char* names[] = {"A_2", "E_6", "W_12"};
        for (int p = 2; p <= 4; ++p) CHECK(cusp_class_by_degeneration(p) == e.lifted(names[p - 2]));
    }

    TEST_CASE("negative control: a wrong multiplicity is caught") {
        Resolver& r = Engine::instance().resolver();
        auto good = validate_step(step("A_4", {{"D_5", 2}}), r, golden_lookup());
        CHECK(good.ok());
        auto bad = validate_step(step("A_4", {{"D_5", 3}}), r, golden_lookup());
        CHECK_FALSE(bad.ok());
        const DegenStep* a6 = Engine::instance().degenerations().step_for("A_6");
        REQUIRE(a6);
        DegenStep corrupt = *a6;
        corrupt.children[1].second += 1;  // E_7
        CHECK_FALSE(validate_step(corrupt, r, golden_lookup()).ok());
        CHECK(validate_step(*a6, r, golden_lookup()).ok());
    }

    TEST_CASE("catalog structural errors") {
        auto types = Engine::instance().degenerations().types_ptr();
        // cycle A_4 -> A_5 -> A_4
        CHECK_THROWS_AS(DegenCatalog({step("A_4", {{"A_5", 1}}), step("A_5", {{"A_4", 1}})}, types), DegenError);
        // divisor without a unit F
        CHECK_THROWS_AS(DegenCatalog({step("A_4", {{"D_5", 2}}, DegreeScalar(2) * g("F") + g("X"))}, types),
                        DegenError);
        // nonlinear leaf with no step of its own
        CHECK_THROWS_AS(DegenCatalog({step("A_5", {{"A_4", 2}})}, types), DegenError);
        CHECK_THROWS_AS(DegenCatalog({step("A_4", {{"D_5", 2}}), step("A_4", {{"D_5", 2}})}, types), DegenError);
        CHECK_THROWS_AS(DegenCatalog({step("A_4", {{"D_5", 0}})}, types), DegenError);
        CHECK_THROWS_AS(DegenCatalog({step("A_4", {{"nf:1,x", 2}})}, types), DegenError);
        CHECK_NOTHROW(DegenCatalog({step("A_4", {{"D_5", 2}})}, types));
    }

    TEST_CASE("anonymous references") {
        const Catalog& types = Engine::instance().types();
        CHECK(is_anonymous_ref("nf:1,2;4,0"));
        CHECK_FALSE(is_anonymous_ref("D_5"));
        SingularityDescriptor nf = describe_ref("nf:1,2;4,0", types);
        CHECK(nf.linear);
        CHECK(multidegree(nf) == Engine::instance().lifted("D_5"));
        SingularityDescriptor st = describe_ref("stair:3,2,0", types);
        CHECK(multidegree(st) == multidegree(nf));
    }

    TEST_CASE("catalog json round trip") {
        const DegenCatalog& c = Engine::instance().degenerations();
        DegenCatalog back = DegenCatalog::from_json(c.to_json(), c.types_ptr());
        CHECK(back.to_json() == c.to_json());
        CHECK(back.steps().size() == c.steps().size());
    }

    TEST_CASE("omitted steps are reported as unsupported") {
        Resolver& r = Engine::instance().resolver();
        for (const char* t : {"E_14", "W_26"}) {
            try {
                r.resolve({t, {}});
                FAIL("expected an error for " << t);
            } catch (const DegenError& e) {
                CHECK(std::string(e.what()).find("unsupported") != std::string::npos);
            }
        }
    }

    TEST_CASE("Newton-degenerate family") {
        // 2 [linear child] = [N_{p,q}] * divisor
        for (auto [p, q] : {std::pair{3, 4}, {3, 5}, {4, 5}}) {
            ClassElement n = newton_degenerate_class(p, q);
            SingularityDescriptor child;
            child.name = "child";
            child.normal_form = newton_degenerate_child(p, q);
            child.linear = true;
            CHECK(n * newton_degenerate_divisor(p) == DegreeScalar(2) * multidegree(child));
        }
        CHECK_THROWS(newton_degenerate_class(3, 6));
    }

    TEST_CASE("quartic A_7 counts") {
        CHECK(conic_pair_count(5, 2) == 4);
        CHECK(conic_pair_count(4, 3) == 12);
        CHECK(conic_pair_count(2, 5) == 4);
        CHECK(quartic_a7(Engine::instance().degenerations()).degree == 504);
        CHECK_THROWS(conic_pair_count(6, 1));
    }
}
