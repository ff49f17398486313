#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "strata/data.hpp"
#include "strata/golden.hpp"
#include "strata/verify.hpp"

using namespace strata;

namespace {

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_SUITE("data") {
    TEST_CASE("embedded data loads") {
        DataSources src = load_data_sources();
        CHECK(!src.catalog.empty());
        CHECK(!src.degenerations.empty());
        CHECK(!src.goldens.empty());
        const Engine& e = Engine::instance();
        CHECK(e.types().find("A_7"));
        CHECK(!e.goldens().ideals().empty());
    }

    TEST_CASE("unknown names carry suggestions") {
        try {
            Engine::instance().describe("A_77");
            FAIL("expected UnknownType");
        } catch (const UnknownType& ex) {
            CHECK(std::string(ex.what()).find("A_7") != std::string::npos);
        }
    }

    TEST_CASE("golden multidegree rows use Q = (d - q) X + F") {
        RingPtr r = standard_ring();
        ClassElement q = parse_multidegree("Q^2", 3);
        ClassElement expect = (DegreeScalar::linear(1, -3) * ClassElement::gen(r, "X") + ClassElement::gen(r, "F")).pow(2);
        CHECK(q == expect);
    }

    TEST_CASE("an inconsistent golden row aborts the load with the row named") {
        std::string text(load_data_sources().goldens);
        CHECK_NOTHROW(GoldenStore::from_json(text));
        // break the A_2 degree row so it no longer matches its series or multidegree row
        std::string bad = replace_once(text, "12(d-1)(d-2)", "12(d-1)(d-3)");
        try {
            GoldenStore::from_json(bad);
            FAIL("expected GoldenError");
        } catch (const GoldenError& ex) {
            CHECK(std::string(ex.what()).find("A_2") != std::string::npos);
        }
    }

    TEST_CASE("errata keep the printed text") {
        const GoldenStore& g = Engine::instance().goldens();
        const GoldenEntry* x12 = g.find(GoldenEntry::Kind::Degree, "X_{1,2}");
        REQUIRE(x12);
        CHECK(!x12->erratum.empty());
        CHECK(x12->printed != x12->used);
    }

    TEST_CASE("fixed-degree route") {
        const Engine& e = Engine::instance();
        CHECK(e.has_fixed_step("A_7", 4));
        CHECK(e.degree("A_7", 4) == DegreeScalar(504));
        CHECK_FALSE(e.has_fixed_step("A_7", 5));
        // elsewhere the universal polynomial is evaluated
        CHECK(e.degree("A_5", 7) == DegreeScalar(e.degree("A_5").eval(7)));
    }

    TEST_CASE("verify is deterministic across worker counts") {
        const Engine& e = Engine::instance();
        VerifyReport one = run_verify(e, "tables", 1);
        VerifyReport four = run_verify(e, "tables", 4);
        CHECK(one.json() == four.json());
        CHECK(one.unexplained_failures() == 0);
        CHECK_THROWS(run_verify(e, "bogus", 1));
    }

    TEST_CASE("catalog override by directory") {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "strata_override_test";
        fs::create_directories(dir);
        std::string cat(load_data_sources().catalog);
        {
            std::ofstream(dir / "catalog.json") << cat;
        }
        setenv("STRATA_CATALOG", dir.c_str(), 1);
        DataSources src = load_data_sources();
        unsetenv("STRATA_CATALOG");
        CHECK(src.origin == dir.string());
        CHECK(src.catalog == cat);
        CHECK(src.goldens == load_data_sources().goldens);
        fs::remove_all(dir);
    }
}
