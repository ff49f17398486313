#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "strata/ring.hpp"

namespace strata {

using Rat = mpq_class;

// Sparse multivariate polynomial with rational coefficients over named variables.
// Every exponent vector has one entry per variable in vars().
class Poly {
   public:
    using Exps = std::vector<int>;

    Poly() = default;
    Poly(const Rat& c);
    Poly(long c) : Poly(Rat(c)) {}
    static Poly var(const std::string& name, int power = 1);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exps, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant() const;
    int degree_in(const std::string& v) const;
    int total_degree() const;
    bool uses(const std::string& v) const { return degree_in(v) > 0; }
    std::vector<std::string> used_vars() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    Poly pow(int n) const;

    Poly substitute(const std::string& v, const Poly& value) const;
    // coefficient of v^k, as a polynomial in the remaining variables
    Poly coeff(const std::string& v, int k) const;
    // keep terms whose total degree in the given variables is <= order
    Poly truncate(const std::vector<std::string>& in, int order) const;
    // content-free with positive leading coefficient (graded lex on the variable list)
    Poly primitive() const;

    // explicit '*' and '^'; variables in list order; highest terms first
    std::string str() const;

    // the list given becomes the variable order, extra variables are appended
    Poly with_vars(const std::vector<std::string>& order) const;

   private:
    void add_term(const Exps& e, const Rat& c);
    int index_of(const std::string& v) const;
    int ensure_var(const std::string& v);
    void align(Poly& o);

    std::vector<std::string> vars_;
    std::map<Exps, Rat> terms_;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grammar: sums of products of factors; a factor is a number (integer or a/b),
// an identifier ([A-Za-z][A-Za-z0-9_]*, a braced subscript such as a_{2,1} is kept
// verbatim), or a parenthesized expression, optionally raised to ^n.
// Juxtaposition multiplies: "2(L+X)", "3d^2", "Q^5L".
Poly parse_poly(const std::string& text);

// Map a polynomial over {d} and ring generators into the ring; coefficients must be integral.
ClassElement class_from_poly(const Poly& p, const RingPtr& ring);
Poly poly_from_class(const ClassElement& e);
ClassElement parse_class(const std::string& text, const RingPtr& ring);

}  // namespace strata
