#pragma once

#include "specdiv/lattice.hpp"
#include "specdiv/reduce.hpp"

#include <cstdint>
#include <vector>

namespace specdiv {

/// Decreasing tower base = L_0 ⊇ L_1 ⊇ ... with p L_n ⊆ L_{n+1} and
/// strictly increasing index, stored as basis matrices in base coordinates.
struct LatticeChain {
    IntegralLattice base;
    Int p;
    std::vector<IMat> levels;  // basis of L_n at levels[n-1], columns

    int depth() const { return static_cast<int>(levels.size()); }
    IMat level_basis(int n) const;  // n = 0 is the identity
    IntegralLattice level_lattice(int n) const;
    Int level_index(int n) const;  // [base : L_n] = |det basis|
};

/// L_n = {x : phi(x) = 0 mod p^n} for a covector phi not vanishing mod p.
LatticeChain chain_from_functional(const IntegralLattice& d, const Int& p,
                                   const std::vector<Int>& phi, int depth);

/// L_n = p^{ceil(n/c)} D.
LatticeChain chain_scaled(const IntegralLattice& d, const Int& p, int c, int depth);

enum class ChainViolationKind { containment, p_step, strict_decrease };

struct ChainViolation {
    ChainViolationKind kind;
    int level;  // the n of L_n that breaks the axiom
};

const char* to_string(ChainViolationKind kind);

/// Exact verification of the three chain axioms; violations are data.
std::vector<ChainViolation> verify_chain(const LatticeChain& chain);

struct MinimaGrowthReport {
    std::vector<MinimaProfile> profiles;  // levels 1..depth
    double fitted_exponent = 0;           // log mu_1(L_n) against log n
    double reference_exponent = 0;        // 1/b
    bool diverging = false;
    bool super_polynomial = false;  // exponential model fits decisively better
};

MinimaGrowthReport minima_growth_report(const LatticeChain& chain, int b,
                                        std::uint64_t node_budget = 1ull << 33);

struct SumExperimentReport {
    std::vector<Int> x_grid;
    std::vector<Int> sums;  // sum over m in S_{D,X} and all levels of r(L_n, m)
    double fitted_exponent = 0;
    double budget_exponent = 0;  // (b+1)/2
};

/// For each X: S_{D,X} = {m in [X, 2X) : m/D a positive perfect square};
/// levels are summed (base included as level 0) until mu_1^2(L_n) > 2X.
SumExperimentReport summed_intersection_experiment(const LatticeChain& chain, int b,
                                                   const Int& d_class,
                                                   const std::vector<Int>& x_grid,
                                                   std::uint64_t node_budget = 1ull << 33);

}  // namespace specdiv
