#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/scalar.hpp"

namespace strata {

struct Generator {
    std::string name;
    int nilp = 0;  // 0 means unbounded
};

class RingSpec {
   public:
    static constexpr int kMaxGens = 8;

    RingSpec(std::vector<Generator> gens, std::optional<int> degree_cap = std::nullopt);

    const std::vector<Generator>& gens() const { return gens_; }
    int size() const { return static_cast<int>(gens_.size()); }
    int index(const std::string& name) const;  // -1 if absent
    int nilp(int i) const { return gens_[i].nilp; }
    std::optional<int> degree_cap() const { return cap_; }

    bool operator==(const RingSpec& o) const;
    bool operator!=(const RingSpec& o) const { return !(*this == o); }

   private:
    std::vector<Generator> gens_;
    std::optional<int> cap_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

// negative nilp for an unbounded generator
RingPtr make_ring(const std::vector<std::pair<std::string, int>>& gens,
                  std::optional<int> degree_cap = std::nullopt);
// X, L, F plus auxiliaries in the given order
RingPtr standard_ring(const std::vector<std::pair<std::string, int>>& aux = {});

// Exponent vectors are packed one byte per generator, generator 0 in the most
// significant byte, so integer order on keys is lexicographic order on exponents.
using Key = std::uint64_t;

class ClassElement {
   public:
    using Terms = std::vector<std::pair<Key, DegreeScalar>>;

    ClassElement() = default;
    explicit ClassElement(RingPtr r) : ring_(std::move(r)) {}

    static ClassElement zero(RingPtr r) { return ClassElement(std::move(r)); }
    static ClassElement one(RingPtr r);
    static ClassElement scalar(RingPtr r, const DegreeScalar& s);
    static ClassElement gen(RingPtr r, const std::string& name, const DegreeScalar& coeff = 1);
    static ClassElement monomial(RingPtr r, const std::vector<int>& exps, const DegreeScalar& coeff);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    std::vector<int> exps(Key k) const;
    Key key(const std::vector<int>& exps) const;
    DegreeScalar coeff(const std::vector<int>& exps) const;
    int max_exp(int gen) const;

    friend ClassElement operator+(const ClassElement& a, const ClassElement& b);
    friend ClassElement operator-(const ClassElement& a, const ClassElement& b);
    friend ClassElement operator*(const ClassElement& a, const ClassElement& b);
    friend ClassElement operator*(const DegreeScalar& s, const ClassElement& a);
    ClassElement operator-() const;
    ClassElement& operator+=(const ClassElement& o) { return *this = *this + o; }
    ClassElement& operator*=(const ClassElement& o) { return *this = *this * o; }
    friend bool operator==(const ClassElement& a, const ClassElement& b);
    friend bool operator!=(const ClassElement& a, const ClassElement& b) { return !(a == b); }

    ClassElement pow(int n) const;
    ClassElement eval_at(long d_value) const;  // substitute an integer for d
    ClassElement on_ring(RingPtr target) const;  // re-embed by generator name

    // sum of terms, highest monomial first: "(d-1)*X*F^2+3*L*F^2"
    std::string str() const;

    // build from sorted, zero-free terms
    static ClassElement from_terms(RingPtr r, Terms t);

   private:
    void check_same(const ClassElement& o) const;
    RingPtr ring_;
    Terms terms_;
};

ClassElement add(const ClassElement& a, const ClassElement& b);
ClassElement mul(const ClassElement& a, const ClassElement& b);

// sum_{i=0}^{N} A^i B^{N-i}
ClassElement diagonal_class(const ClassElement& a, const ClassElement& b, int n);

// Coefficient of the monomial given by (generator, exponent) pairs, as an element
// of the ring on the remaining generators.
ClassElement extract_coefficient(const ClassElement& e,
                                 const std::vector<std::pair<std::string, int>>& mono);

// Single DegreeScalar of an element that has at most one term; throws otherwise.
DegreeScalar sole_scalar(const ClassElement& e);

struct DivisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// q with q * divisor == numerator; the divisor must be +-F + (terms free of F).
ClassElement exact_divide(const ClassElement& numerator, const ClassElement& divisor);
// Top-down quotient and the F-free remainder left at the bottom; linear in the numerator.
std::pair<ClassElement, ClassElement> divide_with_remainder(const ClassElement& numerator,
                                                            const ClassElement& divisor);

DegreeScalar evaluate_at_degree(const DegreeScalar& s, long d_value);

// JSON text of a class: {"ring":[...],"terms":[{"exp":[...],"coeff":[...]}]}
std::string to_json(const ClassElement& e);
ClassElement class_from_json(const std::string& text);

}  // namespace strata
