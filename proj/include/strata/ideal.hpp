#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata/diagram.hpp"
#include "strata/poly.hpp"

namespace strata {

// Truncated power series in x1, x2 with polynomial coefficients.
struct JetPoly {
    int order = 0;
    std::map<LatticePoint, Poly> terms;  // zero coefficients are not stored

    Poly coeff(int i, int j) const;
    void add(int i, int j, const Poly& c);
    friend JetPoly operator+(const JetPoly& a, const JetPoly& b);
    friend JetPoly operator*(const JetPoly& a, const JetPoly& b);  // truncated at min order
    bool operator==(const JetPoly& o) const;
};

// name of the coefficient of x1^i x2^j: "a21", or "a_{1,12}" once an index has two digits
std::string jet_coeff_name(int i, int j);

// Germ singular at the origin with all coefficients free: sum a_ij x1^i x2^j over
// 2 <= i + j <= order. `coeff_degree_cap` zeroes the coefficients above a curve degree.
JetPoly generic_curve_jet(int order, std::optional<int> coeff_degree_cap = {});

// x1 -> x1 + phi1, x2 -> x2 + phi2, truncated at `order`
JetPoly substitute_jet(const JetPoly& f, const JetPoly& phi1, const JetPoly& phi2, int order);
// generic change of coordinates without linear part, parameters A1_ij, A2_ij of
// total degree 2..param_degree
JetPoly apply_transform(const JetPoly& f, int order, int param_degree);
std::vector<std::string> transform_params(int param_degree);

// transformed coefficients at the lattice points under the diagram (total degree >= 2)
std::vector<Poly> preliminary_form_equations(const JetPoly& f, const NewtonDiagram& diag);

struct RatIdeal {
    std::vector<std::string> vars;
    std::vector<Poly> generators;  // content-free, positive leading coefficient
    std::string json() const;
};

struct EliminationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduced Groebner basis, graded reverse lexicographic on `order` (variables not
// listed are appended).
RatIdeal groebner(const std::vector<Poly>& gens, const std::vector<std::string>& order, int degree_guard = 20);
// Remainder on division by a Groebner basis computed with groebner().
Poly reduce(const Poly& p, const RatIdeal& gb);
bool contains(const RatIdeal& gb, const Poly& p);

// Block order, `drop` greatest; returns the generators free of the dropped variables.
RatIdeal eliminate(const std::vector<Poly>& eqs, const std::set<std::string>& drop, int degree_guard = 20);

// I : u^infinity
RatIdeal saturate(const RatIdeal& ideal, const Poly& u, int degree_guard = 20);

struct ComponentSpec {
    std::string name;
    std::vector<std::string> forms;  // vanish on the component
    std::string distinguished;       // power tested for the multiplicity
    std::string localize;            // nonzero at the generic point, "" for none
    int expected_multiplicity = 1;
};

struct ComponentReport {
    std::string name;
    std::vector<std::pair<std::string, int>> form_exponents;  // -1: no power up to the cap
    int multiplicity = -1;
    int expected = 0;
    bool ok() const;
};

struct InspectionReport {
    RatIdeal substituted;
    bool unchanged = false;
    std::vector<ComponentReport> components;
};

InspectionReport substitute_and_inspect(const RatIdeal& ideal, const std::string& kill,
                                        const std::vector<ComponentSpec>& components, int max_exponent = 4,
                                        int degree_guard = 20);

struct StratumIdealOptions {
    std::optional<int> jet_order;     // default determinacy + 1
    std::optional<int> curve_degree;  // zero coefficients above this total degree
    int degree_guard = 20;
};

// Ideal in the a_ij cut out by the preliminary form of the type's diagram.
RatIdeal stratum_ideal(const SingularityDescriptor& desc, const StratumIdealOptions& opt = {});

}  // namespace strata
