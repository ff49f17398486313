#include "strata/degen.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "strata/poly.hpp"

namespace strata {

ClassElement divisor_class_default(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("killed monomial exponents must be non-negative");
    RingPtr r = standard_ring();
    return DegreeScalar::linear(1, -b - 2 * a) * ClassElement::gen(r, "X") + ClassElement::gen(r, "F") +
           DegreeScalar(a - b) * ClassElement::gen(r, "L");
}

namespace {

std::vector<int> parse_ints(const std::string& s, char sep) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        size_t pos = 0;
        int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

int ordinary_offset(const Staircase& s) { return build_chain(s).is_ordinary() ? 2 : 3; }

}  // namespace

bool is_anonymous_ref(const std::string& ref) { return ref.rfind("nf:", 0) == 0 || ref.rfind("stair:", 0) == 0; }

SingularityDescriptor describe_ref(const std::string& ref, const Catalog& types) {
    if (!is_anonymous_ref(ref)) {
        if (auto* d = types.find(ref)) return *d;
        std::string msg = "unknown singularity type " + ref;
        auto near = types.suggestions(ref);
        if (!near.empty()) {
            msg += " (closest:";
            for (auto& n : near) msg += " " + n;
            msg += ")";
        }
        throw DegenError(msg);
    }
    SingularityDescriptor d;
    d.name = ref;
    try {
        if (ref.rfind("nf:", 0) == 0) {
            std::stringstream ss(ref.substr(3));
            std::string pt;
            while (std::getline(ss, pt, ';')) {
                auto v = parse_ints(pt, ',');
                if (v.size() != 2) throw std::invalid_argument("monomial needs two exponents");
                d.normal_form.push_back({v[0], v[1]});
            }
            d.linear = is_linear(diagram_from_monomials(d.normal_form));
        } else {
            d.staircase_override = Staircase{parse_ints(ref.substr(6), ',')};
            d.linear = true;
        }
        Staircase s = effective_staircase(d);
        d.codim = static_cast<int>(staircase_conditions(s)) - ordinary_offset(s);
    } catch (const std::invalid_argument& e) {
        throw DegenError("malformed stratum reference '" + ref + "': " + e.what());
    }
    return d;
}

namespace {

std::string step_key(const std::string& canonical, std::optional<int> fixed) {
    return normalize_type_name(canonical) + (fixed ? "@" + std::to_string(*fixed) : "");
}

std::string canonical_name(const std::string& ref, const Catalog& types) {
    if (is_anonymous_ref(ref)) return ref;
    if (auto* d = types.find(ref)) return d->name;
    return ref;
}

}  // namespace

DegenCatalog::DegenCatalog(std::vector<DegenStep> steps, std::shared_ptr<const Catalog> types)
    : steps_(std::move(steps)), types_(std::move(types)) {
    if (!types_) throw std::invalid_argument("degeneration catalog needs a type catalog");
    std::map<std::string, const DegenStep*> by_parent;
    for (auto& s : steps_) {
        SingularityDescriptor pd = describe_ref(s.parent, *types_);
        s.parent = pd.name;
        auto k = step_key(s.parent, s.fixed_degree);
        if (by_parent.count(k)) throw DegenError("two degeneration steps for " + k);
        by_parent[k] = &s;
        if (s.omitted) continue;
        if (!s.divisor) throw DegenError("step for " + k + " has no divisor");
        auto f1 = extract_coefficient(*s.divisor, {{"F", 1}});
        if (f1.size() != 1 || sole_scalar(f1) != DegreeScalar(1))
            throw DegenError("divisor of the step for " + k + " lacks a unit F term");
        if (s.children.empty()) throw DegenError("step for " + k + " has no children");
        for (auto& [c, m] : s.children) {
            if (m <= 0) throw DegenError("non-positive multiplicity in the step for " + k);
            SingularityDescriptor cd = describe_ref(c, *types_);
            c = cd.name;
        }
    }
    // every nonlinear node must lead to linear leaves without cycles
    std::map<std::string, int> state;  // 1 visiting, 2 done
    std::function<void(const std::string&, std::optional<int>)> visit = [&](const std::string& ref,
                                                                            std::optional<int> fixed) {
        SingularityDescriptor d = describe_ref(ref, *types_);
        auto it = by_parent.find(step_key(d.name, fixed));
        if (it == by_parent.end() && fixed) it = by_parent.find(step_key(d.name, {}));
        if (it == by_parent.end()) {
            if (!d.linear) throw DegenError("nonlinear leaf " + d.name + " has no degeneration step");
            return;
        }
        const DegenStep* s = it->second;
        auto k = step_key(s->parent, s->fixed_degree);
        if (state[k] == 2) return;
        if (state[k] == 1) throw DegenError("cycle in the degeneration catalog through " + k);
        state[k] = 1;
        if (!s->omitted)
            for (auto& [c, m] : s->children) visit(c, s->fixed_degree ? s->fixed_degree : fixed);
        state[k] = 2;
    };
    for (auto& s : steps_) visit(s.parent, s.fixed_degree);
}

const DegenStep* DegenCatalog::step_for(const std::string& name, std::optional<int> fixed) const {
    std::string canon = types_ ? canonical_name(name, *types_) : name;
    auto match = [&](std::optional<int> f) -> const DegenStep* {
        for (auto& s : steps_)
            if (normalize_type_name(s.parent) == normalize_type_name(canon) && s.fixed_degree == f) return &s;
        return nullptr;
    };
    if (fixed)
        if (auto* s = match(fixed)) return s;
    return match(std::nullopt);
}

DegenCatalog DegenCatalog::from_json(const std::string& text, std::shared_ptr<const Catalog> types) {
    auto j = nlohmann::json::parse(text);
    std::vector<DegenStep> steps;
    for (auto& e : j) {
        DegenStep s;
        s.parent = e.at("parent").get<std::string>();
        if (e.contains("fixed_degree") && !e["fixed_degree"].is_null()) s.fixed_degree = e["fixed_degree"].get<int>();
        s.omitted = e.value("omitted", false);
        s.source = e.value("source", "");
        s.note = e.value("note", "");
        if (!s.omitted) {
            auto k = e.at("killed");
            s.killed = {k.at(0).get<int>(), k.at(1).get<int>()};
            auto& dv = e.at("divisor");
            ClassElement div = dv.is_string() ? parse_class(dv.get<std::string>(), standard_ring())
                                              : class_from_json(dv.dump());
            s.divisor = div.on_ring(standard_ring());
            for (auto& c : e.at("children")) s.children.emplace_back(c.at(0).get<std::string>(), c.at(1).get<long>());
        }
        steps.push_back(std::move(s));
    }
    return DegenCatalog(std::move(steps), std::move(types));
}

std::string DegenCatalog::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& s : steps_) {
        nlohmann::ordered_json e;
        e["parent"] = s.parent;
        if (s.fixed_degree) e["fixed_degree"] = *s.fixed_degree;
        if (s.omitted) {
            e["omitted"] = true;
        } else {
            e["killed"] = {s.killed.i, s.killed.j};
            e["divisor"] = nlohmann::ordered_json::parse(strata::to_json(*s.divisor));
            nlohmann::ordered_json ch = nlohmann::ordered_json::array();
            for (auto& [c, m] : s.children) ch.push_back({c, m});
            e["children"] = ch;
        }
        e["source"] = s.source;
        if (!s.note.empty()) e["note"] = s.note;
        arr.push_back(e);
    }
    return arr.dump(2);
}

std::string Resolver::key(const StratumRef& s) const {
    return step_key(canonical_name(s.name, catalog_.types()), s.fixed_degree);
}

ClassElement Resolver::leaf_class(const std::string& ref) const {
    SingularityDescriptor d = describe_ref(ref, catalog_.types());
    if (!d.linear) throw DegenError(d.name + " is not linear");
    return lifted_class(build_chain(effective_staircase(d))).on_ring(standard_ring());
}

ClassElement Resolver::resolve(const StratumRef& s) {
    std::vector<std::string> stack;
    return resolve_impl(s, stack);
}

ClassElement Resolver::resolve_impl(const StratumRef& s, std::vector<std::string>& stack) {
    const std::string k = key(s);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(k);
        if (it != memo_.end()) return it->second;
    }
    if (std::find(stack.begin(), stack.end(), k) != stack.end()) throw DegenError("cycle while resolving " + k);
    stack.push_back(k);

    SingularityDescriptor d = describe_ref(s.name, catalog_.types());
    const DegenStep* step = catalog_.step_for(d.name, s.fixed_degree);
    ClassElement result;
    if (step && s.fixed_degree && step->fixed_degree != s.fixed_degree) step = nullptr;
    if (d.linear && !step) {
        result = leaf_class(d.name);
        if (s.fixed_degree) result = result.eval_at(*s.fixed_degree);
    } else if (!step && s.fixed_degree) {
        result = resolve_impl({d.name, std::nullopt}, stack).eval_at(*s.fixed_degree);
    } else {
        if (!step) throw DegenError("no degeneration step for " + d.name);
        if (step->omitted)
            throw DegenError("unsupported: the final degeneration step for " + d.name + " is not available");
        ClassElement num = ClassElement::zero(standard_ring());
        for (auto& [c, m] : step->children) num += DegreeScalar(m) * resolve_impl({c, s.fixed_degree}, stack);
        ClassElement div = s.fixed_degree ? step->divisor->eval_at(*s.fixed_degree) : *step->divisor;
        auto [q, rem] = divide_with_remainder(num, div);
        if (!rem.is_zero())
            throw DegenError("step for " + k + " is not exactly divisible by its divisor; remainder " + rem.str());
        result = q;
    }
    stack.pop_back();
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(k, result);
    return result;
}

ClassElement resolve_class(const StratumRef& s, const DegenCatalog& catalog) {
    Resolver r(catalog);
    return r.resolve(s);
}

ClassElement step_numerator(const DegenStep& step, Resolver& r) {
    ClassElement num = ClassElement::zero(standard_ring());
    for (auto& [c, m] : step.children) num += DegreeScalar(m) * r.resolve({c, step.fixed_degree});
    return num;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport validate_step(const DegenStep& step, Resolver& r, const GoldenLookup& golden) {
    ValidationReport rep;
    rep.parent = step.parent + (step.fixed_degree ? " (d=" + std::to_string(*step.fixed_degree) + ")" : "");
    if (step.omitted) {
        rep.checks.push_back({"available", false, "step omitted"});
        return rep;
    }
    ClassElement num;
    try {
        num = step_numerator(step, r);
    } catch (const std::exception& e) {
        rep.checks.push_back({"children", false, e.what()});
        return rep;
    }
    ClassElement div = step.fixed_degree ? step.divisor->eval_at(*step.fixed_degree) : *step.divisor;
    auto [q, rem] = divide_with_remainder(num, div);
    rep.checks.push_back({"divisibility", rem.is_zero(), rem.is_zero() ? "" : "remainder " + rem.str()});
    if (golden) {
        std::string gname = step.parent + (step.fixed_degree ? "@" + std::to_string(*step.fixed_degree) : "");
        if (auto g = golden(gname)) {
            ClassElement lhs = *g * div;
            bool same = lhs == num;
            rep.checks.push_back(
                {"identity", same, same ? "" : "golden * divisor - children = " + (lhs - num).str()});
            if (rem.is_zero()) {
                bool match = q == *g;
                rep.checks.push_back(
                    {"golden", match, match ? "" : "solved " + degree_of_lifted(q).pretty() + " vs golden " +
                                                       degree_of_lifted(*g).pretty()});
            }
        }
    }
    return rep;
}

ClassElement cusp_class_by_degeneration(int p) {
    if (p < 1) throw std::invalid_argument("cusp series needs p >= 1");
    RingPtr r = standard_ring();
    ClassElement lx = ClassElement::gen(r, "L") + ClassElement::gen(r, "X");
    ClassElement num = lx * q_class(p, r).pow(static_cast<int>(binomial(p + 2, 2)));
    return exact_divide(num, divisor_class_default(0, p));
}

ClassElement newton_degenerate_divisor(int p) {
    RingPtr r = standard_ring();
    return DegreeScalar::linear(1, -2 * p) * ClassElement::gen(r, "X") + ClassElement::gen(r, "F") -
           DegreeScalar(p) * ClassElement::gen(r, "L");
}

std::vector<LatticePoint> newton_degenerate_child(int p, int q) {
    if (p < 3 || (q != p + 1 && q != p + 2) || std::gcd(p, q) != 1 || q >= 2 * p)
        throw std::invalid_argument("Newton-degenerate family needs p >= 3, q in {p+1, p+2}, gcd(p,q) = 1, q < 2p");
    if (q == p + 1) return {{1, 2 * p}, {p + 1, p}, {2 * (p + 1), 0}};
    return {{1, 2 * p}, {p / 2 + 1, 2 * p - p / 2}, {2 * (p + 2), 0}};
}

ClassElement newton_degenerate_class(int p, int q) {
    auto nf = newton_degenerate_child(p, q);
    SingularityDescriptor d;
    d.name = "newton-degenerate child";
    d.normal_form = nf;
    ClassElement child = lifted_class(build_chain(effective_staircase(d))).on_ring(standard_ring());
    auto [quot, rem] = divide_with_remainder(DegreeScalar(2) * child, newton_degenerate_divisor(p));
    if (!rem.is_zero()) throw DegenError("Newton-degenerate step is not divisible");
    return quot;
}

QuarticA7 quartic_a7(const DegenCatalog& catalog) {
    Resolver r(catalog);
    ClassElement c = r.resolve({"A_7", 4});
    DegreeScalar deg = degree_of_lifted(c);
    if (!deg.is_constant()) throw std::logic_error("fixed-degree class still depends on d");
    return {c, deg.coeff(0)};
}

RingPtr conic_pair_ring() { return make_ring({{"X", 3}, {"L", 3}, {"C1", 6}, {"C2", 6}}); }

ClassElement conic_tangency_class() {
    static const char* text =
        "(L+X)*(C1^4*C2^2+C1^3*C2^3+C1^2*C2^4+(L+2*X)*(C1^4*C2+C1*C2^4)"
        "+(3*L+2*X)*(C1^3*C2^2+C1^2*C2^3)+2*L*X*(C1^4+C2^4)+2*(4*L^2+3*X^2)*(C1^3*C2+C1*C2^3)"
        "+6*(2*L^2+X^2)*C1^2*C2^2+4*L*X^2*(C1^3+C2^3)+12*L*X^2*(C1^2*C2+C1*C2^2))";
    return parse_class(text, conic_pair_ring());
}

Int conic_pair_count(int n1, int n2) {
    if (n1 < 0 || n2 < 0 || n1 > 5 || n2 > 5 || n1 + n2 != 7)
        throw std::invalid_argument("point split must satisfy n1 + n2 = 7 with 0 <= n1, n2 <= 5");
    // the conditions contribute C1^n1 C2^n2; pair with the complementary monomial
    ClassElement c = extract_coefficient(conic_tangency_class(), {{"X", 2}, {"L", 2}, {"C1", 5 - n1}, {"C2", 5 - n2}});
    DegreeScalar s = sole_scalar(c);
    return s.coeff(0);
}

}  // namespace strata
