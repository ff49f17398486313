#include "strata/ring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace strata {

namespace {

constexpr int kBits = 8;
constexpr int kMaxExp = 255;

int shift_of(int gen) { return kBits * (RingSpec::kMaxGens - 1 - gen); }

int exp_at(Key k, int gen) { return static_cast<int>((k >> shift_of(gen)) & 0xff); }

Key with_exp(Key k, int gen, int e) {
    Key mask = Key(0xff) << shift_of(gen);
    return (k & ~mask) | (Key(e) << shift_of(gen));
}

}  // namespace

RingSpec::RingSpec(std::vector<Generator> gens, std::optional<int> degree_cap)
    : gens_(std::move(gens)), cap_(degree_cap) {
    if (static_cast<int>(gens_.size()) > kMaxGens)
        throw std::invalid_argument("at most " + std::to_string(kMaxGens) + " generators");
    std::set<std::string> seen;
    for (auto& g : gens_) {
        if (g.name.empty()) throw std::invalid_argument("empty generator name");
        if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator name: " + g.name);
        if (g.nilp > kMaxExp + 1) throw std::invalid_argument("nilpotency too large for " + g.name);
        if (g.nilp < 0) g.nilp = 0;
    }
    if (cap_ && *cap_ < 0) throw std::invalid_argument("negative degree cap");
}

int RingSpec::index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (gens_[i].name == name) return i;
    return -1;
}

bool RingSpec::operator==(const RingSpec& o) const {
    if (gens_.size() != o.gens_.size() || cap_ != o.cap_) return false;
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].nilp != o.gens_[i].nilp) return false;
    return true;
}

RingPtr make_ring(const std::vector<std::pair<std::string, int>>& gens, std::optional<int> degree_cap) {
    std::vector<Generator> g;
    for (auto& [name, nilp] : gens) {
        if (nilp == 0) throw std::invalid_argument("zero nilpotency for generator " + name);
        g.push_back({name, nilp < 0 ? 0 : nilp});
    }
    return std::make_shared<const RingSpec>(std::move(g), degree_cap);
}

RingPtr standard_ring(const std::vector<std::pair<std::string, int>>& aux) {
    std::vector<std::pair<std::string, int>> g = {{"X", 3}, {"L", 3}, {"F", -1}};
    g.insert(g.end(), aux.begin(), aux.end());
    return make_ring(g);
}

// ---- ClassElement ----------------------------------------------------------

ClassElement ClassElement::one(RingPtr r) { return scalar(std::move(r), 1); }

ClassElement ClassElement::scalar(RingPtr r, const DegreeScalar& s) {
    ClassElement e(std::move(r));
    if (!s.is_zero()) e.terms_.emplace_back(Key(0), s);
    return e;
}

ClassElement ClassElement::gen(RingPtr r, const std::string& name, const DegreeScalar& coeff) {
    int i = r->index(name);
    if (i < 0) throw std::invalid_argument("unknown generator " + name);
    std::vector<int> e(r->size(), 0);
    e[i] = 1;
    return monomial(std::move(r), e, coeff);
}

ClassElement ClassElement::monomial(RingPtr r, const std::vector<int>& exps, const DegreeScalar& coeff) {
    ClassElement e(std::move(r));
    if (static_cast<int>(exps.size()) != e.ring_->size())
        throw std::invalid_argument("exponent vector length does not match ring");
    for (int i = 0; i < e.ring_->size(); ++i) {
        if (exps[i] < 0 || exps[i] > kMaxExp) throw std::invalid_argument("exponent out of range");
        int n = e.ring_->nilp(i);
        if (n > 0 && exps[i] >= n) return e;
    }
    if (!coeff.is_zero()) e.terms_.emplace_back(e.key(exps), coeff);
    return e;
}

ClassElement ClassElement::from_terms(RingPtr r, Terms t) {
    ClassElement e(std::move(r));
    e.terms_ = std::move(t);
    return e;
}

std::vector<int> ClassElement::exps(Key k) const {
    std::vector<int> v(ring_->size());
    for (int i = 0; i < ring_->size(); ++i) v[i] = exp_at(k, i);
    return v;
}

Key ClassElement::key(const std::vector<int>& exps) const {
    Key k = 0;
    for (int i = 0; i < static_cast<int>(exps.size()); ++i) k = with_exp(k, i, exps[i]);
    return k;
}

DegreeScalar ClassElement::coeff(const std::vector<int>& e) const {
    Key k = key(e);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const auto& t, Key v) { return t.first < v; });
    if (it != terms_.end() && it->first == k) return it->second;
    return {};
}

int ClassElement::max_exp(int gen) const {
    int m = 0;
    for (auto& t : terms_) m = std::max(m, exp_at(t.first, gen));
    return m;
}

void ClassElement::check_same(const ClassElement& o) const {
    if (!ring_ || !o.ring_) throw std::invalid_argument("class element without a ring");
    if (ring_ != o.ring_ && *ring_ != *o.ring_) throw std::invalid_argument("ring mismatch");
}

ClassElement operator+(const ClassElement& a, const ClassElement& b) {
    a.check_same(b);
    ClassElement r(a.ring_);
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
            r.terms_.push_back(*i++);
        } else if (i == a.terms_.end() || j->first < i->first) {
            r.terms_.push_back(*j++);
        } else {
            DegreeScalar s = i->second + j->second;
            if (!s.is_zero()) r.terms_.emplace_back(i->first, std::move(s));
            ++i, ++j;
        }
    }
    return r;
}

ClassElement ClassElement::operator-() const {
    ClassElement r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

ClassElement operator-(const ClassElement& a, const ClassElement& b) { return a + (-b); }

ClassElement operator*(const DegreeScalar& s, const ClassElement& a) {
    ClassElement r(a.ring_);
    if (s.is_zero()) return r;
    for (auto& [k, c] : a.terms_) {
        DegreeScalar p = s * c;
        if (!p.is_zero()) r.terms_.emplace_back(k, std::move(p));
    }
    return r;
}

ClassElement operator*(const ClassElement& a, const ClassElement& b) {
    a.check_same(b);
    const RingSpec& R = *a.ring_;
    const int n = R.size();
    int limit[RingSpec::kMaxGens];
    for (int g = 0; g < n; ++g) limit[g] = R.nilp(g) > 0 ? R.nilp(g) : kMaxExp + 1;
    std::optional<int> cap = R.degree_cap();

    std::unordered_map<Key, DegreeScalar> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (auto& [ka, ca] : a.terms_) {
        for (auto& [kb, cb] : b.terms_) {
            Key k = 0;
            int unbounded = 0;
            bool dead = false;
            for (int g = 0; g < n && !dead; ++g) {
                int e = exp_at(ka, g) + exp_at(kb, g);
                if (e >= limit[g]) {
                    if (R.nilp(g) == 0) throw std::overflow_error("exponent overflow in generator " + R.gens()[g].name);
                    dead = true;
                }
                if (R.nilp(g) == 0) unbounded += e;
                k = with_exp(k, g, e);
            }
            if (dead || (cap && unbounded > *cap)) continue;
            acc[k] += ca * cb;
        }
    }
    ClassElement r(a.ring_);
    r.terms_.reserve(acc.size());
    for (auto& [k, c] : acc)
        if (!c.is_zero()) r.terms_.emplace_back(k, std::move(c));
    std::sort(r.terms_.begin(), r.terms_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return r;
}

bool operator==(const ClassElement& a, const ClassElement& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
}

ClassElement ClassElement::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power");
    ClassElement r = one(ring_), base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

ClassElement ClassElement::eval_at(long d_value) const {
    ClassElement r(ring_);
    for (auto& [k, c] : terms_) {
        Int v = c.eval(Int(d_value));
        if (v != 0) r.terms_.emplace_back(k, DegreeScalar(v));
    }
    return r;
}

ClassElement ClassElement::on_ring(RingPtr target) const {
    std::vector<int> map(ring_->size());
    for (int i = 0; i < ring_->size(); ++i) map[i] = target->index(ring_->gens()[i].name);
    ClassElement r(target);
    for (auto& [k, c] : terms_) {
        std::vector<int> src = exps(k), dst(target->size(), 0);
        for (int i = 0; i < ring_->size(); ++i) {
            if (src[i] == 0) continue;
            if (map[i] < 0) throw std::invalid_argument("generator " + ring_->gens()[i].name + " absent from target ring");
            dst[map[i]] = src[i];
        }
        r += monomial(target, dst, c);
    }
    return r;
}

std::string ClassElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    // highest monomials first reads more naturally
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [k, c] = *it;
        std::string mono;
        for (int g = 0; g < ring_->size(); ++g) {
            int e = exp_at(k, g);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->gens()[g].name;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        std::string cs = c.expanded();
        bool compound = c.coeffs().size() > 1 && !(c.coeffs().size() == 2 && c.coeff(0) == 0);
        std::string term;
        if (mono.empty()) {
            term = compound ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            term = mono;
        } else if (cs == "-1") {
            term = "-" + mono;
        } else {
            term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
        }
        if (!s.empty() && term[0] != '-') s += "+";
        s += term;
    }
    return s;
}

// ---- free functions ---------------------------------------------------------

ClassElement add(const ClassElement& a, const ClassElement& b) { return a + b; }
ClassElement mul(const ClassElement& a, const ClassElement& b) { return a * b; }

ClassElement diagonal_class(const ClassElement& a, const ClassElement& b, int n) {
    if (n < 0) throw std::invalid_argument("diagonal class needs N >= 0");
    // Horner form: sum_i A^i B^{N-i} = B^N + A (B^{N-1} + A(...))
    std::vector<ClassElement> bp{ClassElement::one(a.ring())};
    for (int i = 1; i <= n; ++i) bp.push_back(bp.back() * b);
    ClassElement r = ClassElement::one(a.ring());
    for (int i = n - 1; i >= 0; --i) r = bp[n - i] + a * r;
    return r;
}

ClassElement extract_coefficient(const ClassElement& e, const std::vector<std::pair<std::string, int>>& mono) {
    const RingSpec& R = *e.ring();
    std::vector<int> want(R.size(), -1);
    for (auto& [name, ex] : mono) {
        int i = R.index(name);
        if (i < 0) throw std::invalid_argument("unknown generator " + name);
        if (ex < 0 || (R.nilp(i) > 0 && ex >= R.nilp(i)))
            throw std::invalid_argument("exponent of " + name + " at or above its nilpotency");
        want[i] = ex;
    }
    std::vector<std::pair<std::string, int>> rest;
    std::vector<int> keep;
    for (int i = 0; i < R.size(); ++i)
        if (want[i] < 0) {
            rest.emplace_back(R.gens()[i].name, R.nilp(i) > 0 ? R.nilp(i) : -1);
            keep.push_back(i);
        }
    RingPtr sub = make_ring(rest, R.degree_cap());
    ClassElement r(sub);
    ClassElement::Terms t;
    for (auto& [k, c] : e.terms()) {
        bool match = true;
        for (int i = 0; i < R.size() && match; ++i)
            if (want[i] >= 0 && exp_at(k, i) != want[i]) match = false;
        if (!match) continue;
        Key nk = 0;
        for (size_t j = 0; j < keep.size(); ++j) nk = with_exp(nk, static_cast<int>(j), exp_at(k, keep[j]));
        t.emplace_back(nk, c);
    }
    // dropping coordinates keeps lex order
    return ClassElement::from_terms(sub, std::move(t));
}

DegreeScalar sole_scalar(const ClassElement& e) {
    if (e.is_zero()) return {};
    if (e.size() != 1 || e.terms()[0].first != 0)
        throw std::invalid_argument("expected a scalar class, got " + e.str());
    return e.terms()[0].second;
}

std::pair<ClassElement, ClassElement> divide_with_remainder(const ClassElement& numerator,
                                                           const ClassElement& divisor) {
    const RingPtr& R = numerator.ring();
    if (!divisor.ring() || *divisor.ring() != *R) throw std::invalid_argument("ring mismatch");
    int f = R->index("F");
    if (f < 0) throw DivisionError("ring has no generator F");

    Key fkey = with_exp(0, f, 1);
    DegreeScalar lead;
    ClassElement::Terms rt;
    for (auto& [k, c] : divisor.terms()) {
        if (k == fkey) {
            lead = c;
            continue;
        }
        if (exp_at(k, f) != 0) throw DivisionError("divisor has F-dependent terms besides F itself: " + divisor.str());
        rt.emplace_back(k, c);
    }
    if (lead.is_zero() || !lead.is_constant() || abs(lead.coeff(0)) != 1)
        throw DivisionError("divisor lacks a unit F term: " + divisor.str());
    ClassElement rest = ClassElement::from_terms(R, std::move(rt));
    // normalize to F + rest
    if (lead.coeff(0) < 0) rest = -rest;

    int top = numerator.max_exp(f);
    std::vector<ClassElement::Terms> slices(top + 1);
    for (auto& [k, c] : numerator.terms()) slices[exp_at(k, f)].emplace_back(with_exp(k, f, 0), c);
    std::vector<ClassElement> nk;
    for (auto& s : slices) nk.push_back(ClassElement::from_terms(R, std::move(s)));  // key order survives

    // q = sum q_k F^k with q_{k-1} = N_k - rest q_k, from the top down
    ClassElement::Terms out;
    ClassElement carry(R);
    for (int k = top; k >= 1; --k) {
        carry = nk[k] - rest * carry;
        for (auto& [key, c] : carry.terms()) out.emplace_back(with_exp(key, f, k - 1), c);
    }
    ClassElement remainder = nk[0] - rest * carry;
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    ClassElement q = ClassElement::from_terms(R, std::move(out));
    if (lead.coeff(0) < 0) q = -q;
    return {q, remainder};
}

ClassElement exact_divide(const ClassElement& numerator, const ClassElement& divisor) {
    auto [q, r] = divide_with_remainder(numerator, divisor);
    if (!r.is_zero()) throw DivisionError("nonzero remainder " + r.str());
    return q;
}

DegreeScalar evaluate_at_degree(const DegreeScalar& s, long d_value) { return DegreeScalar(s.eval(Int(d_value))); }

// ---- JSON -------------------------------------------------------------------

namespace {

nlohmann::ordered_json int_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

Int json_int(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("coefficient must be an integer or a decimal string");
}

}  // namespace

std::string to_json(const ClassElement& e) {
    nlohmann::ordered_json j;
    j["ring"] = nlohmann::ordered_json::array();
    for (auto& g : e.ring()->gens()) {
        nlohmann::ordered_json gj;
        gj["gen"] = g.name;
        if (g.nilp > 0)
            gj["nilp"] = g.nilp;
        else
            gj["nilp"] = nullptr;
        j["ring"].push_back(gj);
    }
    j["terms"] = nlohmann::ordered_json::array();
    for (auto& [k, c] : e.terms()) {
        nlohmann::ordered_json t;
        t["exp"] = e.exps(k);
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        for (auto& x : c.coeffs()) cs.push_back(int_json(x));
        t["coeff"] = cs;
        j["terms"].push_back(t);
    }
    return j.dump();
}

ClassElement class_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<std::pair<std::string, int>> gens;
    for (auto& g : j.at("ring")) {
        int n = g.contains("nilp") && !g["nilp"].is_null() ? g["nilp"].get<int>() : -1;
        gens.emplace_back(g.at("gen").get<std::string>(), n);
    }
    RingPtr r = make_ring(gens);
    ClassElement e(r);
    for (auto& t : j.at("terms")) {
        std::vector<int> ex = t.at("exp").get<std::vector<int>>();
        std::vector<Int> cs;
        for (auto& c : t.at("coeff")) cs.push_back(json_int(c));
        e += ClassElement::monomial(r, ex, DegreeScalar(cs));
    }
    return e;
}

}  // namespace strata
