#include "strata/poly.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>

namespace strata {

Poly::Poly(const Rat& c) {
    if (c != 0) terms_[{}] = c;
}

Poly Poly::var(const std::string& name, int power) {
    Poly p;
    p.vars_ = {name};
    p.terms_[{power}] = 1;
    return p;
}

int Poly::index_of(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

int Poly::ensure_var(const std::string& v) {
    int i = index_of(v);
    if (i >= 0) return i;
    vars_.push_back(v);
    std::map<Exps, Rat> t;
    for (auto& [e, c] : terms_) {
        Exps ne = e;
        ne.push_back(0);
        t.emplace(std::move(ne), c);
    }
    terms_ = std::move(t);
    return static_cast<int>(vars_.size()) - 1;
}

void Poly::align(Poly& o) {
    for (auto& v : o.vars_) ensure_var(v);
    if (o.vars_ == vars_) return;
    std::vector<int> pos(o.vars_.size());
    for (size_t k = 0; k < o.vars_.size(); ++k) pos[k] = index_of(o.vars_[k]);
    std::map<Exps, Rat> t;
    for (auto& [e, c] : o.terms_) {
        Exps ne(vars_.size(), 0);
        for (size_t k = 0; k < e.size(); ++k) ne[pos[k]] = e[k];
        t.emplace(std::move(ne), c);
    }
    o.terms_ = std::move(t);
    o.vars_ = vars_;
}

Poly Poly::with_vars(const std::vector<std::string>& order) const {
    Poly p;
    p.vars_ = order;
    Poly self = *this;
    p.align(self);
    return self;
}

void Poly::add_term(const Exps& e, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }

Rat Poly::constant() const {
    for (auto& [e, c] : terms_)
        if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) return c;
    return 0;
}

int Poly::degree_in(const std::string& v) const {
    int i = index_of(v), m = 0;
    if (i < 0) return 0;
    for (auto& [e, c] : terms_) m = std::max(m, e[i]);
    return m;
}

int Poly::total_degree() const {
    int m = 0;
    for (auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        m = std::max(m, s);
    }
    return m;
}

std::vector<std::string> Poly::used_vars() const {
    std::vector<std::string> out;
    for (size_t k = 0; k < vars_.size(); ++k)
        for (auto& [e, c] : terms_)
            if (e[k] > 0) {
                out.push_back(vars_[k]);
                break;
            }
    return out;
}

Poly& Poly::operator+=(const Poly& o) {
    Poly b = o;
    align(b);
    for (auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    Poly b = o;
    align(b);
    std::map<Exps, Rat> acc;
    Exps e(vars_.size());
    for (auto& [ea, ca] : terms_)
        for (auto& [eb, cb] : b.terms_) {
            for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            auto [it, fresh] = acc.emplace(e, ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    terms_.clear();
    for (auto& [k, c] : acc)
        if (c != 0) terms_.emplace(k, c);
    return *this;
}

bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

Poly Poly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power of a polynomial");
    Poly r(1), base = *this;
    while (n > 0) {
        if (n & 1) r *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return r;
}

Poly Poly::substitute(const std::string& v, const Poly& value) const {
    int i = index_of(v);
    if (i < 0) return *this;
    int top = degree_in(v);
    std::vector<Poly> powers{Poly(1)};
    for (int k = 1; k <= top; ++k) powers.push_back(powers.back() * value);
    Poly r;
    r.vars_ = vars_;
    // group by the power of v so each power is multiplied once
    std::vector<Poly> by_power(top + 1);
    for (auto& bp : by_power) bp.vars_ = vars_;
    for (auto& [e, c] : terms_) {
        Exps ne = e;
        ne[i] = 0;
        by_power[e[i]].terms_.emplace(std::move(ne), c);
    }
    for (int k = 0; k <= top; ++k)
        if (!by_power[k].is_zero()) r += by_power[k] * powers[k];
    return r;
}

Poly Poly::coeff(const std::string& v, int k) const {
    int i = index_of(v);
    Poly r;
    r.vars_ = vars_;
    for (auto& [e, c] : terms_) {
        int ev = i < 0 ? 0 : e[i];
        if (ev != k) continue;
        Exps ne = e;
        if (i >= 0) ne[i] = 0;
        r.terms_.emplace(std::move(ne), c);
    }
    return r;
}

Poly Poly::truncate(const std::vector<std::string>& in, int order) const {
    std::vector<int> idx;
    for (auto& v : in)
        if (int i = index_of(v); i >= 0) idx.push_back(i);
    Poly r;
    r.vars_ = vars_;
    for (auto& [e, c] : terms_) {
        int s = 0;
        for (int i : idx) s += e[i];
        if (s <= order) r.terms_.emplace(e, c);
    }
    return r;
}

namespace {

bool grlex_greater(const Poly::Exps& a, const Poly::Exps& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa > sb;
    return a > b;
}

}  // namespace

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    mpz_class num = 0, den = 1;
    const Exps* lead = nullptr;
    for (auto& [e, c] : terms_) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        if (!lead || grlex_greater(e, *lead)) lead = &e;
    }
    Rat scale(den, num);
    scale.canonicalize();
    if (terms_.at(*lead) < 0) scale = -scale;
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c *= scale;
    return r;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Exps, Rat>*> order;
    for (auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return grlex_greater(a->first, b->first); });
    std::string s;
    for (auto* t : order) {
        const auto& [e, c] = *t;
        std::string mono;
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        Rat a = abs(c);
        std::string term;
        if (mono.empty())
            term = a.get_str();
        else if (a == 1)
            term = mono;
        else
            term = a.get_str() + "*" + mono;
        if (c < 0)
            s += "-";
        else if (!s.empty())
            s += "+";
        s += term;
    }
    return s;
}

// ---- parser -----------------------------------------------------------------

namespace {

template <class T>
struct Builder {
    std::function<T(const Rat&)> number;
    std::function<T(const std::string&)> variable;
    std::function<T(const T&, const Rat&)> scale;  // multiply by a rational constant
    std::function<std::optional<Rat>(const T&)> as_constant;
};

template <class T>
class Parser {
   public:
    Parser(const std::string& s, const Builder<T>& b) : s_(s), b_(b) {}

    T parse() {
        T v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

   private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool starts_factor() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || std::isalnum(static_cast<unsigned char>(c));
    }

    T expr() {
        bool neg = false;
        if (peek('+') || peek('-')) neg = s_[pos_++] == '-';
        T acc = term();
        if (neg) acc = b_.scale(acc, Rat(-1));
        while (peek('+') || peek('-')) {
            bool minus = s_[pos_++] == '-';
            T t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    T term() {
        T acc = power();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = acc * power();
            } else if (peek('/')) {
                ++pos_;
                T den = power();
                auto c = b_.as_constant(den);
                if (!c || *c == 0) fail("division by a non-constant or zero");
                acc = b_.scale(acc, 1 / *c);
            } else if (starts_factor()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    T power() {
        T base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected an exponent");
            int n = std::stoi(s_.substr(start, pos_ - start));
            T r = b_.number(1);
            for (int k = 0; k < n; ++k) r = r * base;
            return r;
        }
        return base;
    }

    T atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            T v = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return b_.number(Rat(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                if (s_[pos_] == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '{') {
                    size_t close = s_.find('}', pos_);
                    if (close == std::string::npos) fail("unterminated subscript");
                    pos_ = close + 1;
                    break;
                }
                ++pos_;
            }
            return b_.variable(s_.substr(start, pos_ - start));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    const Builder<T>& b_;
    size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& text) {
    Builder<Poly> b{
        [](const Rat& r) { return Poly(r); },
        [](const std::string& v) { return Poly::var(v); },
        [](const Poly& p, const Rat& r) { return p * Poly(r); },
        [](const Poly& p) -> std::optional<Rat> {
            if (!p.is_constant()) return std::nullopt;
            return p.constant();
        },
    };
    return Parser<Poly>(text, b).parse();
}

ClassElement parse_class(const std::string& text, const RingPtr& ring) {
    Builder<ClassElement> b{
        [&](const Rat& r) {
            if (r.get_den() != 1) throw ParseError("class coefficients must be integers");
            return ClassElement::scalar(ring, DegreeScalar(Int(r.get_num())));
        },
        [&](const std::string& v) {
            if (v == "d") return ClassElement::scalar(ring, DegreeScalar::d());
            if (ring->index(v) < 0) throw ParseError("unknown generator '" + v + "'");
            return ClassElement::gen(ring, v);
        },
        [](const ClassElement& e, const Rat& r) {
            ClassElement::Terms t;
            for (auto& [k, c] : e.terms()) {
                DegreeScalar s = c * Int(r.get_num());
                try {
                    s = s.div_exact(Int(r.get_den()));
                } catch (const std::domain_error&) {
                    throw ParseError("non-integral coefficient in class expression");
                }
                if (!s.is_zero()) t.emplace_back(k, s);
            }
            return ClassElement::from_terms(e.ring(), std::move(t));
        },
        [](const ClassElement& e) -> std::optional<Rat> {
            if (e.is_zero()) return Rat(0);
            if (e.size() != 1 || e.terms()[0].first != 0 || !e.terms()[0].second.is_constant()) return std::nullopt;
            return Rat(e.terms()[0].second.coeff(0));
        },
    };
    return Parser<ClassElement>(text, b).parse();
}

ClassElement class_from_poly(const Poly& p, const RingPtr& ring) {
    ClassElement r(ring);
    const auto& vars = p.vars();
    for (auto& [e, c] : p.terms()) {
        if (c.get_den() != 1) throw std::invalid_argument("non-integral coefficient " + c.get_str());
        std::vector<int> ex(ring->size(), 0);
        int dpow = 0;
        for (size_t k = 0; k < vars.size(); ++k) {
            if (e[k] == 0) continue;
            if (vars[k] == "d") {
                dpow = e[k];
                continue;
            }
            int g = ring->index(vars[k]);
            if (g < 0) throw std::invalid_argument("variable " + vars[k] + " is not a ring generator");
            ex[g] = e[k];
        }
        std::vector<Int> coeffs(dpow + 1, Int(0));
        coeffs[dpow] = c.get_num();
        r += ClassElement::monomial(ring, ex, DegreeScalar(coeffs));
    }
    return r;
}

Poly poly_from_class(const ClassElement& e) {
    Poly r;
    for (auto& [k, c] : e.terms()) {
        Poly mono(1);
        auto ex = e.exps(k);
        for (int g = 0; g < e.ring()->size(); ++g)
            if (ex[g] > 0) mono *= Poly::var(e.ring()->gens()[g].name, ex[g]);
        Poly sc;
        for (int j = 0; j <= c.degree(); ++j)
            if (c.coeff(j) != 0) sc += Poly(Rat(c.coeff(j))) * (j ? Poly::var("d", j) : Poly(1));
        r += sc * mono;
    }
    return r;
}

}  // namespace strata
