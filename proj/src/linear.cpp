#include "strata/linear.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace strata {

long binomial(long n, long k) {
    if (k < 0 || n < k) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

long entries(int order) { return binomial(order + 2, 2); }

}  // namespace

LiftChain build_chain(const Staircase& stair) {
    const auto& h = stair.heights;
    for (size_t m = 0; m < h.size(); ++m) {
        if (h[m] < 0) throw std::invalid_argument("staircase has a negative height");
        if (m > 0 && h[m] >= h[m - 1]) throw std::invalid_argument("staircase heights must strictly decrease");
    }
    LiftChain chain;
    if (h.empty()) throw std::invalid_argument("empty staircase: no vanishing conditions");

    std::set<std::pair<int, int>> under;
    int top = 0;
    for (int m = 0; m < static_cast<int>(h.size()); ++m)
        for (int i = 0; i <= h[m]; ++i) {
            under.insert({i, m});
            top = std::max(top, i + m);
        }
    // number of vanishing entries of f^(p) along the tangent flag
    auto vanishing = [&](int p) {
        int n = 0;
        for (int j = 0; j <= p; ++j) n += under.count({p - j, j});
        return n;
    };
    int p0 = -1;
    while (vanishing(p0 + 1) == p0 + 2) ++p0;

    std::vector<int> orders;
    for (int p = top; p > p0; --p)
        if (vanishing(p) > vanishing(p + 1)) orders.push_back(p);

    if (orders.empty()) {
        chain.ordinary_order = p0;
        ChainCondition c;
        c.kind = ChainCondition::Kind::Vanishing;
        c.lhs = {TensorSpec::Kind::Derivative, p0, -1, 0};
        c.n = static_cast<int>(entries(p0));
        chain.conditions.push_back(c);
        return chain;
    }

    chain.conditions.push_back({ChainCondition::Kind::Incidence, {}, 0, -1, 0});
    int absorbed = 0;  // copies of l already placed
    int last_p = 0;
    bool closed = false;
    for (size_t k = 0; k < orders.size(); ++k) {
        int p = orders[k];
        int m_new = vanishing(p) - absorbed;
        TensorSpec lhs;
        if (k == 0) {
            lhs = {TensorSpec::Kind::Derivative, p, -1, 0};
        } else {
            int a = static_cast<int>(chain.auxiliaries.size()) - 1;
            int c = last_p - p;
            lhs = {TensorSpec::Kind::Auxiliary, chain.auxiliaries[a].form_order - c, a, c};
        }
        ChainCondition cond{ChainCondition::Kind::Proportionality, lhs, m_new, -1,
                            static_cast<int>(entries(lhs.order) - 1)};
        absorbed = vanishing(p);
        last_p = p;
        if (vanishing(p) == p) {
            // the remaining tensor is a pure power of l
            chain.conditions.push_back(cond);
            closed = true;
            break;
        }
        int rest = lhs.order - m_new;
        int idx = static_cast<int>(chain.auxiliaries.size());
        chain.auxiliaries.push_back({"B" + std::to_string(idx + 1), rest, static_cast<int>(entries(rest))});
        cond.rhs_aux = idx;
        chain.conditions.push_back(cond);
    }
    if (!closed) {
        int a = static_cast<int>(chain.auxiliaries.size()) - 1;
        int c = last_p - p0;
        int o = chain.auxiliaries[a].form_order - c;
        ChainCondition v;
        v.kind = ChainCondition::Kind::Vanishing;
        v.lhs = {TensorSpec::Kind::Auxiliary, o, a, c};
        v.n = static_cast<int>(entries(o));
        chain.conditions.push_back(v);
    }
    return chain;
}

std::string LiftChain::describe() const {
    std::ostringstream os;
    auto tensor = [&](const TensorSpec& t) {
        if (t.kind == TensorSpec::Kind::Derivative) return "f^(" + std::to_string(t.order) + ")";
        std::string s = auxiliaries[t.aux].name + "^(" + std::to_string(auxiliaries[t.aux].form_order) + ")";
        if (t.contractions > 0) s += "(x^" + std::to_string(t.contractions) + ")";
        return s;
    };
    bool first = true;
    for (auto& c : conditions) {
        if (!first) os << "; ";
        first = false;
        switch (c.kind) {
            case ChainCondition::Kind::Incidence:
                os << "l(x)=0";
                break;
            case ChainCondition::Kind::Proportionality: {
                os << tensor(c.lhs) << " ~ SYM(l^" << c.l_copies;
                if (c.rhs_aux >= 0)
                    os << "," << auxiliaries[c.rhs_aux].name << "^(" << auxiliaries[c.rhs_aux].form_order << ")";
                os << ") N=" << c.n;
                break;
            }
            case ChainCondition::Kind::Vanishing:
                os << tensor(c.lhs) << "=0 [" << c.n << "]";
                break;
        }
    }
    return os.str();
}

RingPtr chain_ring(const LiftChain& chain) {
    std::vector<std::pair<std::string, int>> aux;
    for (auto& a : chain.auxiliaries) aux.emplace_back(a.name, a.nilp);
    return standard_ring(aux);
}

ClassElement chain_class(const LiftChain& chain, const RingPtr& ring) {
    auto X = ClassElement::gen(ring, "X");
    auto L = ClassElement::gen(ring, "L");
    auto F = ClassElement::gen(ring, "F");
    auto aux_gen = [&](int a) {
        const std::string& name = chain.auxiliaries.at(a).name;
        if (ring->index(name) < 0) throw std::invalid_argument("ring lacks generator " + name);
        return ClassElement::gen(ring, name);
    };
    auto tensor = [&](const TensorSpec& t) {
        if (t.kind == TensorSpec::Kind::Derivative) return DegreeScalar::linear(1, -t.order) * X + F;
        return aux_gen(t.aux) + DegreeScalar(t.contractions) * X;
    };
    ClassElement cls = ClassElement::one(ring);
    for (auto& c : chain.conditions) {
        switch (c.kind) {
            case ChainCondition::Kind::Incidence:
                cls *= L + X;
                break;
            case ChainCondition::Kind::Proportionality: {
                ClassElement rhs = DegreeScalar(c.l_copies) * L;
                if (c.rhs_aux >= 0) rhs += aux_gen(c.rhs_aux);
                cls *= diagonal_class(tensor(c.lhs), rhs, c.n);
                break;
            }
            case ChainCondition::Kind::Vanishing:
                cls *= tensor(c.lhs).pow(c.n);
                break;
        }
    }
    return cls;
}

ClassElement chain_class(const LiftChain& chain) { return chain_class(chain, chain_ring(chain)); }

ClassElement project_auxiliary(const ClassElement& c) {
    std::vector<std::pair<std::string, int>> mono;
    for (auto& g : c.ring()->gens())
        if (g.name != "X" && g.name != "L" && g.name != "F") mono.emplace_back(g.name, g.nilp - 1);
    ClassElement r = mono.empty() ? c : extract_coefficient(c, mono);
    return r.on_ring(standard_ring());
}

ClassElement q_class(int p, const RingPtr& ring) {
    RingPtr r = ring ? ring : standard_ring();
    return DegreeScalar::linear(1, -p) * ClassElement::gen(r, "X") + ClassElement::gen(r, "F");
}

ClassElement lifted_class(const LiftChain& chain) {
    ClassElement c = project_auxiliary(chain_class(chain));
    if (chain.is_ordinary()) {
        RingPtr r = c.ring();
        c = (ClassElement::gen(r, "L") + ClassElement::gen(r, "X")) * c;
    }
    return c;
}

Staircase effective_staircase(const SingularityDescriptor& desc) {
    if (desc.staircase_override) return *desc.staircase_override;
    return staircase(diagram_from_monomials(desc.normal_form));
}

ClassElement multidegree(const SingularityDescriptor& desc) {
    if (!desc.linear) throw std::invalid_argument(desc.name + " is not linear; its class comes from degenerations");
    return project_auxiliary(chain_class(build_chain(effective_staircase(desc))));
}

namespace {

DegreeScalar single_power(const ClassElement& e, const std::string& what) {
    if (e.is_zero()) return {};
    if (e.size() != 1) throw std::logic_error(what + " coefficient is not a single F-power: " + e.str());
    return e.terms()[0].second;
}

}  // namespace

DegreeScalar degree_of_lifted(const ClassElement& cls) {
    return single_power(extract_coefficient(cls, {{"X", 2}, {"L", 2}}), "X^2 L^2");
}

DegreeScalar degree_of_ordinary(const ClassElement& cls) {
    return single_power(extract_coefficient(cls, {{"X", 2}, {"L", 0}}), "X^2");
}

DegreeScalar degree(const SingularityDescriptor& desc) {
    LiftChain chain = build_chain(effective_staircase(desc));
    if (!desc.linear) throw std::invalid_argument(desc.name + " is not linear; its class comes from degenerations");
    ClassElement c = project_auxiliary(chain_class(chain));
    return chain.is_ordinary() ? degree_of_ordinary(c) : degree_of_lifted(c);
}

DegreeScalar ordinary_point_degree(int p) {
    if (p < 1) throw std::invalid_argument("ordinary point order must be at least 1");
    DegreeScalar q = DegreeScalar::linear(1, -p);
    return DegreeScalar(binomial(binomial(p + 2, 2), 2)) * q * q;
}

}  // namespace strata
