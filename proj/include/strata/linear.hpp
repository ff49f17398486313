#pragma once

#include <string>
#include <vector>

#include "strata/diagram.hpp"
#include "strata/ring.hpp"

namespace strata {

// Either the order-p derivative f^(p), or auxiliary form B_j contracted c times with x.
struct TensorSpec {
    enum class Kind { Derivative, Auxiliary };
    Kind kind = Kind::Derivative;
    int order = 0;  // p for f^(p); order of the form after contraction for B_j
    int aux = -1;   // index into LiftChain::auxiliaries
    int contractions = 0;
};

struct ChainCondition {
    enum class Kind { Incidence, Proportionality, Vanishing };
    Kind kind = Kind::Incidence;
    TensorSpec lhs;
    int l_copies = 0;  // rhs = SYM(l^l_copies, B_rhs_aux)
    int rhs_aux = -1;  // -1: rhs is l^l_copies alone
    int n = 0;         // diagonal length C(k+2,2)-1, or number of vanishing entries
};

struct Auxiliary {
    std::string name;
    int form_order = 0;
    int nilp = 0;  // C(form_order+2, 2)
};

struct LiftChain {
    std::vector<ChainCondition> conditions;
    std::vector<Auxiliary> auxiliaries;
    // set when no tangent direction is singled out: f^(p) = 0 at x
    int ordinary_order = -1;

    bool is_ordinary() const { return ordinary_order >= 0; }
    std::string describe() const;
};

long binomial(long n, long k);

LiftChain build_chain(const Staircase& stair);
RingPtr chain_ring(const LiftChain& chain);
ClassElement chain_class(const LiftChain& chain, const RingPtr& ring);
ClassElement chain_class(const LiftChain& chain);

// coefficient of prod B_i^(nilp_i - 1); result lives in the standard (X, L, F) ring
ClassElement project_auxiliary(const ClassElement& c);

// (d - p) X + F in the standard ring
ClassElement q_class(int p, const RingPtr& ring = nullptr);

// class of the lifted stratum in (X, L, F); ordinary points get the (L+X) factor
// of an incident tangent line so that they can enter degeneration identities
ClassElement lifted_class(const LiftChain& chain);

// throws for non-linear descriptors
ClassElement multidegree(const SingularityDescriptor& desc);
DegreeScalar degree(const SingularityDescriptor& desc);
Staircase effective_staircase(const SingularityDescriptor& desc);

// X^2 L^2 coefficient of a lifted class, as a polynomial in d
DegreeScalar degree_of_lifted(const ClassElement& cls);
// X^2 coefficient of an ordinary-point class
DegreeScalar degree_of_ordinary(const ClassElement& cls);

DegreeScalar ordinary_point_degree(int p);

}  // namespace strata
