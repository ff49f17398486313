#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace strata {

using Int = mpz_class;

// Polynomial in the formal curve degree d with integer coefficients.
// coeffs()[k] multiplies d^k; no trailing zeros, so zero is the empty vector.
class DegreeScalar {
   public:
    DegreeScalar() = default;
    DegreeScalar(long c);
    DegreeScalar(const Int& c);
    explicit DegreeScalar(std::vector<Int> coeffs);

    static DegreeScalar d();
    // a*d + b
    static DegreeScalar linear(long a, long b);

    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int k) const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    Int eval(const Int& dv) const;
    Int content() const;  // gcd of coefficients, sign of the leading one
    Int leading() const { return c_.empty() ? Int(0) : c_.back(); }

    DegreeScalar& operator+=(const DegreeScalar& o);
    DegreeScalar& operator-=(const DegreeScalar& o);
    DegreeScalar& operator*=(const DegreeScalar& o);
    DegreeScalar& operator*=(const Int& k);
    DegreeScalar operator-() const;
    // exact division by an integer; throws if not exact
    DegreeScalar div_exact(const Int& k) const;

    friend DegreeScalar operator+(DegreeScalar a, const DegreeScalar& b) { return a += b; }
    friend DegreeScalar operator-(DegreeScalar a, const DegreeScalar& b) { return a -= b; }
    friend DegreeScalar operator*(const DegreeScalar& a, const DegreeScalar& b);
    friend DegreeScalar operator*(DegreeScalar a, const Int& k) { return a *= k; }
    friend bool operator==(const DegreeScalar& a, const DegreeScalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const DegreeScalar& a, const DegreeScalar& b) { return !(a == b); }

    // "35d^2-190d+239"
    std::string expanded() const;
    // content pulled out and rational linear factors split off: "60(d-3)(3d-5)"
    std::string pretty() const;

   private:
    void trim();
    std::vector<Int> c_;
};

}  // namespace strata
