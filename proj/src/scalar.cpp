#include "strata/scalar.hpp"

#include <stdexcept>

namespace strata {

DegreeScalar::DegreeScalar(long c) {
    if (c != 0) c_.emplace_back(c);
}

DegreeScalar::DegreeScalar(const Int& c) {
    if (c != 0) c_.push_back(c);
}

DegreeScalar::DegreeScalar(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

DegreeScalar DegreeScalar::d() { return DegreeScalar(std::vector<Int>{0, 1}); }

DegreeScalar DegreeScalar::linear(long a, long b) { return DegreeScalar(std::vector<Int>{b, a}); }

void DegreeScalar::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int DegreeScalar::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

Int DegreeScalar::eval(const Int& dv) const {
    Int r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * dv + *it;
    return r;
}

Int DegreeScalar::content() const {
    Int g = 0;
    for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (!c_.empty() && c_.back() < 0) g = -g;
    return g;
}

DegreeScalar& DegreeScalar::operator+=(const DegreeScalar& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

DegreeScalar& DegreeScalar::operator-=(const DegreeScalar& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

DegreeScalar operator*(const DegreeScalar& a, const DegreeScalar& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    DegreeScalar r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    r.trim();
    return r;
}

DegreeScalar& DegreeScalar::operator*=(const DegreeScalar& o) { return *this = *this * o; }

DegreeScalar& DegreeScalar::operator*=(const Int& k) {
    if (k == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= k;
    return *this;
}

DegreeScalar DegreeScalar::operator-() const {
    DegreeScalar r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

DegreeScalar DegreeScalar::div_exact(const Int& k) const {
    if (k == 0) throw std::domain_error("division of a degree scalar by zero");
    DegreeScalar r = *this;
    for (auto& x : r.c_) {
        if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t()))
            throw std::domain_error("degree scalar not divisible by " + k.get_str());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    }
    return r;
}

namespace {

std::string term_str(const Int& c, int k, bool first) {
    std::string s;
    Int a = abs(c);
    if (c < 0)
        s += "-";
    else if (!first)
        s += "+";
    if (k == 0 || a != 1) s += a.get_str();
    if (k >= 1) s += "d";
    if (k >= 2) s += "^" + std::to_string(k);
    return s;
}

std::string expanded_of(const std::vector<Int>& c) {
    if (c.empty()) return "0";
    std::string s;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        if (c[k] == 0) continue;
        s += term_str(c[k], k, s.empty());
    }
    return s;
}

// (den*d - num) as a primitive linear factor
std::vector<Int> linear_factor(Int num, Int den) {
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num /= g;
    den /= g;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    return {-num, den};
}

}  // namespace

std::string DegreeScalar::expanded() const { return expanded_of(c_); }

std::string DegreeScalar::pretty() const {
    if (c_.empty()) return "0";
    Int ct = content();
    DegreeScalar p = div_exact(ct);
    std::string prefix;
    if (ct == -1)
        prefix = "-";
    else if (ct != 1)
        prefix = ct.get_str();

    if (p.degree() == 0) return ct.get_str();
    if (p.degree() == 1) {
        if (prefix.empty()) return p.expanded();
        return prefix + "(" + p.expanded() + ")";
    }
    if (p.degree() == 2) {
        const Int &a = p.c_[2], &b = p.c_[1], &c = p.c_[0];
        Int disc = b * b - 4 * a * c;
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            Int s = sqrt(disc);
            auto f1 = linear_factor(-b + s, 2 * a);
            auto f2 = linear_factor(-b - s, 2 * a);
            std::string s1 = expanded_of(f1), s2 = expanded_of(f2);
            std::string body = (f1 == f2) ? "(" + s1 + ")^2" : "(" + s1 + ")(" + s2 + ")";
            if (s1 == "d") body = (f1 == f2) ? "d^2" : "d(" + s2 + ")";
            DegreeScalar prod = DegreeScalar(f1) * DegreeScalar(f2);
            // both factors have positive leading coefficients, as does p
            if (prod != p) return prefix.empty() ? p.expanded() : prefix + "(" + p.expanded() + ")";
            return prefix + body;
        }
    }
    if (prefix.empty()) return p.expanded();
    return prefix + "(" + p.expanded() + ")";
}

}  // namespace strata
