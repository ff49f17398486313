#pragma once

#include <string>
#include <vector>

#include "strata/data.hpp"

namespace strata {

struct VerifyCase {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string expected;
    std::string actual;
    std::string detail;
    // non-empty when the failure is a documented disagreement with a printed value
    std::string known_deviation;
    double seconds = 0;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    bool ok() const;
    size_t failures() const;
    size_t unexplained_failures() const;
    std::string json() const;
};

// suite: tables, identities, ideals or all
std::vector<std::string> verify_suites();
VerifyReport run_verify(const Engine& engine, const std::string& suite, int jobs = 1);

}  // namespace strata
