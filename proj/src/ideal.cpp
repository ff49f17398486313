#include "strata/ideal.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace strata {

// ---------------------------------------------------------------- jets

Poly JetPoly::coeff(int i, int j) const {
    auto it = terms.find({i, j});
    return it == terms.end() ? Poly() : it->second;
}

void JetPoly::add(int i, int j, const Poly& c) {
    if (i + j > order || c.is_zero()) return;
    auto [it, fresh] = terms.emplace(LatticePoint{i, j}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

JetPoly operator+(const JetPoly& a, const JetPoly& b) {
    JetPoly r{std::min(a.order, b.order), {}};
    for (auto& [p, c] : a.terms) r.add(p.i, p.j, c);
    for (auto& [p, c] : b.terms) r.add(p.i, p.j, c);
    return r;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
    JetPoly r{std::min(a.order, b.order), {}};
    for (auto& [p, c] : a.terms)
        for (auto& [q, e] : b.terms)
            if (p.i + q.i + p.j + q.j <= r.order) r.add(p.i + q.i, p.j + q.j, c * e);
    return r;
}

bool JetPoly::operator==(const JetPoly& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (auto& [p, c] : terms)
        if (o.coeff(p.i, p.j) != c) return false;
    return true;
}

std::string jet_coeff_name(int i, int j) {
    if (i < 10 && j < 10) return "a" + std::to_string(i) + std::to_string(j);
    return "a_{" + std::to_string(i) + "," + std::to_string(j) + "}";
}

JetPoly generic_curve_jet(int order, std::optional<int> coeff_degree_cap) {
    if (order < 2) throw std::invalid_argument("jet order must be at least 2");
    JetPoly f{order, {}};
    int top = coeff_degree_cap ? std::min(order, *coeff_degree_cap) : order;
    for (int k = 2; k <= top; ++k)
        for (int j = 0; j <= k; ++j) f.add(k - j, j, Poly::var(jet_coeff_name(k - j, j)));
    return f;
}

JetPoly substitute_jet(const JetPoly& f, const JetPoly& phi1, const JetPoly& phi2, int order) {
    JetPoly x1{order, {}}, x2{order, {}};
    x1.add(1, 0, Poly(1));
    x2.add(0, 1, Poly(1));
    x1 = x1 + JetPoly{order, phi1.terms};
    x2 = x2 + JetPoly{order, phi2.terms};
    int top = 0;
    for (auto& [p, c] : f.terms) top = std::max(top, p.i + p.j);
    std::vector<JetPoly> p1{JetPoly{order, {{{0, 0}, Poly(1)}}}}, p2 = p1;
    for (int k = 1; k <= top; ++k) {
        p1.push_back(p1.back() * x1);
        p2.push_back(p2.back() * x2);
    }
    JetPoly r{order, {}};
    for (auto& [p, c] : f.terms) {
        if (p.i + p.j > order) continue;
        for (auto& [q, e] : (p1[p.i] * p2[p.j]).terms) r.add(q.i, q.j, c * e);
    }
    return r;
}

std::vector<std::string> transform_params(int param_degree) {
    std::vector<std::string> out;
    for (int s : {1, 2})
        for (int k = 2; k <= param_degree; ++k)
            for (int j = 0; j <= k; ++j)
                out.push_back("A" + std::to_string(s) + "_" + std::to_string(k - j) + std::to_string(j));
    return out;
}

JetPoly apply_transform(const JetPoly& f, int order, int param_degree) {
    JetPoly phi1{order, {}}, phi2{order, {}};
    for (int k = 2; k <= param_degree; ++k)
        for (int j = 0; j <= k; ++j) {
            std::string ij = std::to_string(k - j) + std::to_string(j);
            phi1.add(k - j, j, Poly::var("A1_" + ij));
            phi2.add(k - j, j, Poly::var("A2_" + ij));
        }
    return substitute_jet(f, phi1, phi2, order);
}

std::vector<Poly> preliminary_form_equations(const JetPoly& f, const NewtonDiagram& diag) {
    std::vector<Poly> eqs;
    for (auto& p : under_points(diag)) {
        if (p.i + p.j < 2) continue;
        if (p.i + p.j > f.order)
            throw std::invalid_argument("jet order " + std::to_string(f.order) +
                                        " is below the diagram; need at least " + std::to_string(p.i + p.j));
        Poly c = f.coeff(p.i, p.j);
        if (!c.is_zero()) eqs.push_back(c);
    }
    return eqs;
}

// ---------------------------------------------------------------- Groebner kernel

namespace {

using Mono = std::vector<std::uint8_t>;
struct Term {
    Mono m;
    Rat c;
};
using GPoly = std::vector<Term>;  // strictly decreasing monomials

struct MonoOrder {
    int n = 0;
    int split = 0;  // [0, split) is the eliminated block

    int cmp(const Mono& a, const Mono& b) const {
        int r = cmp_block(a, b, 0, split);
        return r ? r : cmp_block(a, b, split, n);
    }
    static int cmp_block(const Mono& a, const Mono& b, int lo, int hi) {
        int da = 0, db = 0;
        for (int k = lo; k < hi; ++k) da += a[k], db += b[k];
        if (da != db) return da > db ? 1 : -1;
        for (int k = hi - 1; k >= lo; --k)
            if (a[k] != b[k]) return a[k] < b[k] ? 1 : -1;
        return 0;
    }
};

int total(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }
bool divides(const Mono& a, const Mono& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}
Mono lcm(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
    return r;
}
bool coprime(const Mono& a, const Mono& b) {
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] && b[k]) return false;
    return true;
}
Mono quotient(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = static_cast<std::uint8_t>(a[k] - b[k]);
    return r;
}
Mono times(const Mono& a, const Mono& b) {
    Mono r(a.size());
    for (size_t k = 0; k < a.size(); ++k) {
        int e = a[k] + b[k];
        if (e > 255) throw EliminationError("exponent overflow");
        r[k] = static_cast<std::uint8_t>(e);
    }
    return r;
}

// p - c * m * g
GPoly sub_mul(const GPoly& p, size_t from, const Rat& c, const Mono& m, const GPoly& g, const MonoOrder& ord) {
    GPoly r;
    r.reserve(p.size() - from + g.size());
    size_t i = from, j = 0;
    while (i < p.size() || j < g.size()) {
        if (j == g.size()) {
            r.push_back(p[i++]);
            continue;
        }
        Mono mg = times(m, g[j].m);
        int s = i == p.size() ? -1 : ord.cmp(p[i].m, mg);
        if (s > 0) {
            r.push_back(p[i++]);
        } else if (s < 0) {
            r.push_back({std::move(mg), -c * g[j].c});
            ++j;
        } else {
            Rat v = p[i].c - c * g[j].c;
            if (v != 0) r.push_back({std::move(mg), v});
            ++i, ++j;
        }
    }
    return r;
}

GPoly mono_mul(const GPoly& p, const Mono& m) {
    GPoly r;
    r.reserve(p.size());
    for (auto& t : p) r.push_back({times(t.m, m), t.c});
    return r;
}

void make_monic(GPoly& p) {
    if (p.empty()) return;
    Rat lc = p[0].c;
    for (auto& t : p) t.c /= lc;
}

GPoly normal_form(GPoly p, const std::vector<const GPoly*>& basis, const MonoOrder& ord) {
    GPoly r;
    size_t pos = 0;
    while (pos < p.size()) {
        const GPoly* div = nullptr;
        for (auto* g : basis)
            if (divides((*g)[0].m, p[pos].m)) {
                div = g;
                break;
            }
        if (!div) {
            r.push_back(p[pos++]);
            continue;
        }
        Rat c = p[pos].c / (*div)[0].c;
        Mono m = quotient(p[pos].m, (*div)[0].m);
        p = sub_mul(p, pos, c, m, *div, ord);
        pos = 0;
    }
    return r;
}

struct Pair {
    size_t i, j;
    Mono lcm;
    int deg;
};

class Buchberger {
   public:
    Buchberger(MonoOrder ord, int guard) : ord_(ord), guard_(guard) {}

    void add_input(GPoly p) {
        GPoly h = normal_form(std::move(p), active(), ord_);
        if (!h.empty()) insert(std::move(h));
    }

    void run() {
        while (!pairs_.empty()) {
            auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
                if (a.deg != b.deg) return a.deg < b.deg;
                int c = ord_.cmp(a.lcm, b.lcm);
                if (c) return c < 0;
                return std::tie(a.i, a.j) < std::tie(b.i, b.j);
            });
            Pair pr = *best;
            pairs_.erase(best);
            if (pr.deg > guard_) {
                std::ostringstream msg;
                msg << "degree guard " << guard_ << " exceeded: S-pair of degree " << pr.deg << " with "
                    << active().size() << " basis elements and " << pairs_.size() + 1 << " pairs pending";
                throw EliminationError(msg.str());
            }
            const GPoly& f = polys_[pr.i];
            const GPoly& g = polys_[pr.j];
            GPoly s = mono_mul(f, quotient(pr.lcm, f[0].m));
            s = sub_mul(s, 0, f[0].c / g[0].c, quotient(pr.lcm, g[0].m), g, ord_);
            GPoly h = normal_form(std::move(s), active(), ord_);
            if (!h.empty()) insert(std::move(h));
        }
    }

    // reduced basis, sorted by increasing leading monomial
    std::vector<GPoly> reduced() const {
        std::vector<const GPoly*> act = active();
        std::vector<GPoly> out;
        for (size_t k = 0; k < act.size(); ++k) {
            std::vector<const GPoly*> others;
            for (size_t l = 0; l < act.size(); ++l)
                if (l != k) others.push_back(act[l]);
            GPoly lead{(*act[k])[0]};
            GPoly tail(act[k]->begin() + 1, act[k]->end());
            GPoly r = normal_form(tail, others, ord_);
            lead.insert(lead.end(), r.begin(), r.end());
            make_monic(lead);
            out.push_back(std::move(lead));
        }
        std::sort(out.begin(), out.end(), [&](const GPoly& a, const GPoly& b) { return ord_.cmp(a[0].m, b[0].m) < 0; });
        return out;
    }

   private:
    std::vector<const GPoly*> active() const {
        std::vector<const GPoly*> out;
        for (size_t k = 0; k < polys_.size(); ++k)
            if (active_[k]) out.push_back(&polys_[k]);
        return out;
    }

    void insert(GPoly h) {
        make_monic(h);
        size_t hi = polys_.size();
        polys_.push_back(std::move(h));
        active_.push_back(false);
        const Mono& lh = polys_[hi][0].m;

        std::vector<size_t> cand;
        for (size_t k = 0; k < hi; ++k)
            if (active_[k]) cand.push_back(k);
        std::vector<Mono> lc(cand.size());
        for (size_t a = 0; a < cand.size(); ++a) lc[a] = lcm(lh, polys_[cand[a]][0].m);
        std::vector<size_t> kept;  // indices into cand
        for (size_t a = 0; a < cand.size(); ++a) {
            bool cop = coprime(lh, polys_[cand[a]][0].m);
            bool keep = cop;
            if (!keep) {
                keep = true;
                for (size_t b = a + 1; b < cand.size() && keep; ++b)
                    if (divides(lc[b], lc[a])) keep = false;
                for (size_t b : kept)
                    if (keep && divides(lc[b], lc[a])) keep = false;
            }
            if (keep) kept.push_back(a);
        }
        std::vector<Pair> next;
        for (auto& p : pairs_) {
            bool drop = divides(lh, p.lcm) && lcm(polys_[p.i][0].m, lh) != p.lcm &&
                        lcm(polys_[p.j][0].m, lh) != p.lcm;
            if (!drop) next.push_back(std::move(p));
        }
        for (size_t a : kept)
            if (!coprime(lh, polys_[cand[a]][0].m)) next.push_back({cand[a], hi, lc[a], total(lc[a])});
        pairs_ = std::move(next);
        for (size_t k = 0; k < hi; ++k)
            if (active_[k] && divides(lh, polys_[k][0].m)) active_[k] = false;
        active_[hi] = true;
    }

    MonoOrder ord_;
    int guard_;
    std::vector<GPoly> polys_;
    std::vector<bool> active_;
    std::vector<Pair> pairs_;
};

GPoly to_gpoly(const Poly& p, const std::vector<std::string>& order, const MonoOrder& ord) {
    std::vector<int> pos(p.vars().size());
    for (size_t k = 0; k < p.vars().size(); ++k) {
        auto it = std::find(order.begin(), order.end(), p.vars()[k]);
        pos[k] = it == order.end() ? -1 : static_cast<int>(it - order.begin());
    }
    GPoly g;
    for (auto& [e, c] : p.terms()) {
        Mono m(order.size(), 0);
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (pos[k] < 0) throw std::logic_error("variable " + p.vars()[k] + " missing from the order");
            if (e[k] > 255) throw EliminationError("exponent overflow");
            m[pos[k]] = static_cast<std::uint8_t>(e[k]);
        }
        g.push_back({std::move(m), c});
    }
    std::sort(g.begin(), g.end(), [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
    return g;
}

// integral, content-free, positive leading coefficient
Poly to_poly(GPoly g, const std::vector<std::string>& order) {
    if (!g.empty()) {
        mpz_class den = 1, num = 0;
        for (auto& t : g) {
            den = lcm(den, mpz_class(t.c.get_den()));
            num = gcd(num, mpz_class(t.c.get_num()));
        }
        Rat scale = Rat(den) / Rat(num);
        if (g[0].c < 0) scale = -scale;
        for (auto& t : g) t.c *= scale;
    }
    Poly p;
    for (auto& t : g) {
        Poly term(t.c);
        for (size_t k = 0; k < order.size(); ++k)
            if (t.m[k]) term *= Poly::var(order[k], t.m[k]);
        p += term;
    }
    return p;
}

std::vector<std::string> full_order(const std::vector<Poly>& gens, std::vector<std::string> order) {
    std::set<std::string> extra;
    for (auto& g : gens)
        for (auto& v : g.used_vars())
            if (std::find(order.begin(), order.end(), v) == order.end()) extra.insert(v);
    order.insert(order.end(), extra.begin(), extra.end());
    return order;
}

std::vector<Poly> nonzero_only(const std::vector<Poly>& gens) {
    std::vector<Poly> out;
    for (auto& g : gens)
        if (!g.is_zero()) out.push_back(g);
    return out;
}

}  // namespace

std::string RatIdeal::json() const {
    nlohmann::ordered_json j;
    j["vars"] = vars;
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (auto& g : generators) gens.push_back(g.str());
    j["generators"] = gens;
    return j.dump();
}

RatIdeal groebner(const std::vector<Poly>& gens, const std::vector<std::string>& order_in, int degree_guard) {
    std::vector<Poly> clean = nonzero_only(gens);
    std::vector<std::string> order = full_order(clean, order_in);
    MonoOrder ord{static_cast<int>(order.size()), 0};
    Buchberger bb(ord, degree_guard);
    for (auto& g : clean)
        if (!g.is_zero()) bb.add_input(to_gpoly(g, order, ord));
    bb.run();
    RatIdeal out{order, {}};
    for (auto& g : bb.reduced()) out.generators.push_back(to_poly(g, order));
    return out;
}

Poly reduce(const Poly& p, const RatIdeal& gb) {
    std::vector<std::string> order = full_order({p}, gb.vars);
    MonoOrder ord{static_cast<int>(order.size()), 0};
    std::vector<GPoly> basis;
    for (auto& g : gb.generators) basis.push_back(to_gpoly(g, order, ord));
    std::vector<const GPoly*> ptr;
    for (auto& b : basis) ptr.push_back(&b);
    GPoly r = normal_form(to_gpoly(p, order, ord), ptr, ord);
    Poly out;
    for (auto& t : r) {
        Poly term(t.c);
        for (size_t k = 0; k < order.size(); ++k)
            if (t.m[k]) term *= Poly::var(order[k], t.m[k]);
        out += term;
    }
    return out;
}

bool contains(const RatIdeal& gb, const Poly& p) { return reduce(p, gb).is_zero(); }

RatIdeal eliminate(const std::vector<Poly>& eqs_in, const std::set<std::string>& drop, int degree_guard) {
    std::vector<Poly> eqs = nonzero_only(eqs_in);
    // generators that are a single variable up to a unit fix that variable at zero
    std::set<std::string> zeroed;
    for (bool again = true; again;) {
        again = false;
        for (auto& e : eqs) {
            if (e.terms().size() != 1 || e.total_degree() != 1) continue;
            std::string v = e.used_vars().at(0);
            zeroed.insert(v);
            for (auto& f : eqs) {
                f = f.substitute(v, Poly());
            }
            again = true;
            break;
        }
    }
    std::vector<Poly> rest;
    for (auto& e : eqs)
        if (!e.is_zero()) rest.push_back(e);

    std::set<std::string> all;
    for (auto& e : eqs_in)
        for (auto& v : e.used_vars()) all.insert(v);
    std::vector<std::string> order, kept;
    for (auto& v : all)
        if (drop.count(v)) order.push_back(v);
    int split = static_cast<int>(order.size());
    for (auto& v : all)
        if (!drop.count(v)) kept.push_back(v);
    order.insert(order.end(), kept.begin(), kept.end());

    MonoOrder ord{static_cast<int>(order.size()), split};
    Buchberger bb(ord, degree_guard);
    for (auto& e : rest) bb.add_input(to_gpoly(e, order, ord));
    bb.run();

    RatIdeal out{kept, {}};
    for (auto& v : kept)
        if (zeroed.count(v)) out.generators.push_back(Poly::var(v));
    for (auto& g : bb.reduced()) {
        bool free = std::all_of(g[0].m.begin(), g[0].m.begin() + split, [](std::uint8_t e) { return e == 0; });
        if (free) out.generators.push_back(to_poly(g, order));
    }
    return out;
}

RatIdeal saturate(const RatIdeal& ideal, const Poly& u, int degree_guard) {
    std::vector<Poly> gens = ideal.generators;
    gens.push_back(Poly(1) - Poly::var("sat_t") * u);
    RatIdeal e = eliminate(gens, {"sat_t"}, degree_guard);
    // keep the variable list of the input, whatever the saturation removed
    return groebner(e.generators, ideal.vars, degree_guard);
}

bool ComponentReport::ok() const { return multiplicity == expected; }

InspectionReport substitute_and_inspect(const RatIdeal& ideal, const std::string& kill,
                                        const std::vector<ComponentSpec>& components, int max_exponent,
                                        int degree_guard) {
    InspectionReport rep;
    bool used = std::any_of(ideal.generators.begin(), ideal.generators.end(),
                            [&](const Poly& g) { return g.uses(kill); });
    if (!used) {
        rep.unchanged = true;
        rep.substituted = ideal;
        return rep;
    }
    std::vector<Poly> subs;
    for (auto& g : ideal.generators) {
        Poly s = g.substitute(kill, Poly());
        if (!s.is_zero()) subs.push_back(s);
    }
    std::vector<std::string> vars;
    for (auto& v : ideal.vars)
        if (v != kill) vars.push_back(v);
    rep.substituted = groebner(subs, vars, degree_guard);
    for (auto& comp : components) {
        RatIdeal local = rep.substituted;
        if (!comp.localize.empty()) {
            // f lies in the saturation by u iff it lies in (I, 1 - t u)
            std::vector<Poly> gens = subs;
            gens.push_back(Poly(1) - Poly::var("sat_t") * parse_poly(comp.localize));
            std::vector<std::string> order = vars;
            order.push_back("sat_t");
            local = groebner(gens, order, degree_guard);
        }
        ComponentReport cr;
        cr.name = comp.name;
        cr.expected = comp.expected_multiplicity;
        auto exponent = [&](const std::string& form) {
            Poly f = parse_poly(form);
            Poly pw = f;
            for (int e = 1; e <= max_exponent; ++e, pw = pw * f)
                if (contains(local, pw)) return e;
            return -1;
        };
        for (auto& f : comp.forms) cr.form_exponents.emplace_back(f, exponent(f));
        cr.multiplicity = exponent(comp.distinguished);
        rep.components.push_back(std::move(cr));
    }
    return rep;
}

RatIdeal stratum_ideal(const SingularityDescriptor& desc, const StratumIdealOptions& opt) {
    if (desc.normal_form.empty()) throw std::invalid_argument(desc.name + " has no normal form");
    NewtonDiagram diag = diagram_from_monomials(desc.normal_form);
    int det = determinacy(desc);
    int need = 2;
    for (auto& p : under_points(diag)) need = std::max(need, p.i + p.j);
    int order = opt.jet_order.value_or(det + 1);
    if (order < need)
        throw std::invalid_argument("jet order " + std::to_string(order) + " is below the diagram of " + desc.name +
                                    "; need at least " + std::to_string(need));
    // coefficients of total degree k only see parameters of degree < k
    int param_degree = std::min(det - 1, need - 1);
    JetPoly f = generic_curve_jet(order, opt.curve_degree);
    JetPoly g = apply_transform(f, need, param_degree);
    auto params = transform_params(param_degree);
    return eliminate(preliminary_form_equations(JetPoly{need, g.terms}, diag),
                     std::set<std::string>(params.begin(), params.end()), opt.degree_guard);
}

}  // namespace strata
