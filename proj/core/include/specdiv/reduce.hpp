#pragma once

#include "specdiv/lattice.hpp"

#include <cstdint>
#include <vector>

namespace specdiv {

struct LllResult {
    IntegralLattice lattice;  // reduced Gram: transform^T * G * transform
    IMat transform;           // unimodular
};

/// LLL reduction on the Gram matrix with exact rational Gram-Schmidt data;
/// Lovasz condition verified exactly with parameter delta in (1/4, 1).
LllResult lll_reduce(const IntegralLattice& l, const Rat& delta = Rat(99, 100));

/// Exact successive minima. Squared minima are Q-values (integers on even
/// lattices), witnesses chosen greedily by increasing Q with lexicographic
/// tie-break, so the profile is deterministic.
struct MinimaProfile {
    std::vector<Rat> minima_sq;            // mu_i^2, nondecreasing
    std::vector<Rat> products_sq;          // a_i^2 = prod_{k<=i} mu_k^2
    std::vector<LatticeVector> witnesses;  // linearly independent, Q = mu_i^2
    double minimum(int i) const;           // mu_i
    double product(int i) const;           // a_i, with a_0 = 1
};

MinimaProfile successive_minima(const IntegralLattice& l,
                                std::uint64_t node_budget = 1ull << 33);

/// Just mu_1^2 = min{Q(x) : x != 0}.
Rat minimum_q(const IntegralLattice& l, std::uint64_t node_budget = 1ull << 33);

/// Desk-scale check of the geometry-of-numbers counting bound
/// sum_{0<m<=X} r(L,m)  <<  sum_j X^{j/2} / a_j(L).
struct EkBoundReport {
    Int lhs;
    std::vector<double> rhs_terms;  // X^{j/2}/a_j for j = 0..rank
    double ratio = 0;
};

EkBoundReport ek_count_bound_check(const IntegralLattice& l, const Int& x,
                                   std::uint64_t node_budget = 1ull << 33);

}  // namespace specdiv
