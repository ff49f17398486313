#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/diagram.hpp"
#include "strata/linear.hpp"
#include "strata/ring.hpp"

namespace strata {

// (d - b - 2a) X + F + (a - b) L: the divisor killing the coefficient of x1^a x2^b
ClassElement divisor_class_default(int a, int b);

// A stratum in a degeneration tree. `name` is either a catalog type, or an
// anonymous linear leaf written "nf:i,j;i,j;..." (normal-form monomials) or
// "stair:h0,h1,..." (explicit staircase).
struct StratumRef {
    std::string name;
    std::optional<int> fixed_degree;
};

struct DegenStep {
    std::string parent;
    std::optional<int> fixed_degree;
    LatticePoint killed;
    std::optional<ClassElement> divisor;  // empty only for omitted steps
    std::vector<std::pair<std::string, long>> children;
    std::string source;
    std::string note;
    // slot kept for a type whose last step is not available
    bool omitted = false;
};

struct DegenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class DegenCatalog {
   public:
    DegenCatalog() = default;
    // checks: every child reference is well formed, the graph is acyclic, and
    // every leaf is linear
    DegenCatalog(std::vector<DegenStep> steps, std::shared_ptr<const Catalog> types);

    static DegenCatalog from_json(const std::string& text, std::shared_ptr<const Catalog> types);
    std::string to_json() const;

    const std::vector<DegenStep>& steps() const { return steps_; }
    const Catalog& types() const { return *types_; }
    std::shared_ptr<const Catalog> types_ptr() const { return types_; }
    // exact fixed-degree match first, then the symbolic step
    const DegenStep* step_for(const std::string& name, std::optional<int> fixed_degree = {}) const;

   private:
    std::vector<DegenStep> steps_;
    std::shared_ptr<const Catalog> types_;
};

// Descriptor of an anonymous leaf ("nf:" / "stair:"), or of a catalog name.
SingularityDescriptor describe_ref(const std::string& ref, const Catalog& types);
bool is_anonymous_ref(const std::string& ref);

// Memoized solver. Safe to share between threads.
class Resolver {
   public:
    explicit Resolver(const DegenCatalog& catalog) : catalog_(catalog) {}
    ClassElement resolve(const StratumRef& s);
    // the class a child contributes to a step: lifted class for linear types
    ClassElement leaf_class(const std::string& ref) const;
    const DegenCatalog& catalog() const { return catalog_; }

   private:
    ClassElement resolve_impl(const StratumRef& s, std::vector<std::string>& stack);
    std::string key(const StratumRef& s) const;

    const DegenCatalog& catalog_;
    std::mutex mu_;
    std::map<std::string, ClassElement> memo_;
};

ClassElement resolve_class(const StratumRef& s, const DegenCatalog& catalog);

// sum of multiplicity * child class, evaluated at the step's fixed degree if any
ClassElement step_numerator(const DegenStep& step, Resolver& r);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::string parent;
    std::vector<CheckResult> checks;
    bool ok() const;
};

// Known class of a type (golden), if any.
using GoldenLookup = std::function<std::optional<ClassElement>(const std::string& type)>;

ValidationReport validate_step(const DegenStep& step, Resolver& r, const GoldenLookup& golden = {});

// Lifted class of x2^p + x1^(p+1) obtained by undoing the kill of x2^p: the
// ordinary (p+1)-fold point class, lifted by (L + X), divided by (d-p)X + F - pL.
ClassElement cusp_class_by_degeneration(int p);

// 2 * [linear child] / ((d - 2p) X + F - p L)
ClassElement newton_degenerate_divisor(int p);
std::vector<LatticePoint> newton_degenerate_child(int p, int q);
ClassElement newton_degenerate_class(int p, int q);

struct QuarticA7 {
    ClassElement multidegree;
    Int degree;
};
QuarticA7 quartic_a7(const DegenCatalog& catalog);

// (X, L, C1, C2) ring with C1, C2 of nilpotency 6
RingPtr conic_pair_ring();
ClassElement conic_tangency_class();
// number of maximally tangent conic pairs with C1 through n1 and C2 through n2
// general points (n1 + n2 = 7)
Int conic_pair_count(int n1, int n2);

}  // namespace strata
