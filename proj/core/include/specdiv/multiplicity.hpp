#pragma once

#include "specdiv/enumerate.hpp"
#include "specdiv/special.hpp"
#include "specdiv/theta.hpp"

#include <cstdint>
#include <vector>

namespace specdiv {

enum class MultiplicityKind { type_ii, type_iii };

/// Boundary multiplicity of the type II divisor attached to D = J^perp/J:
/// mu(m) = (2/(b-2)) * m * c(D, 0, m), exact.
Rat type_ii_multiplicity(const IntegralLattice& d, int b, const Int& m,
                         std::uint64_t node_budget = kDefaultNodeBudget);

struct MultiplicityEntry {
    Int m;
    double value = 0;
    double tail_bound = 0;
};

struct MultiplicitySeries {
    MultiplicityKind kind = MultiplicityKind::type_ii;
    int b = 0;
    std::vector<MultiplicityEntry> entries;
    std::vector<std::pair<double, double>> series() const;
};

/// mu(m) for m = 1..m_max from a single theta table.
MultiplicitySeries type_ii_series(const IntegralLattice& d, int b, const Int& m_max,
                                  std::uint64_t node_budget = kDefaultNodeBudget);

struct PhiResult {
    double value = 0;
    double tail_bound = 0;
    bool empty_slice = false;  // nothing inside the truncation
    Int point_count;           // lattice points summed
};

/// Truncated hyperboloid sum
///   Phi^K_m(v) = [2 Gamma((b-1)/2) (4 pi m)^{b/2} / (1 + b/2)]
///                * sum_{Q(lambda)=m, Q_perp<=T} F((b-1)/2,1,1+b/2; m/Q_perp)
///                  / (4 pi Q_perp)^{(b-1)/2},
/// with v = omega/sqrt(N). The tail constant is calibrated from the dyadic
/// sub-truncations T_j = m 2^j the enumeration already provides, and
/// tail_bound = C_emp / sqrt(T).
PhiResult phi_k_m(const IntegralLattice& k, const LatticeVector& omega, int b, const Int& m,
                  const Rat& truncation, std::uint64_t node_budget = kDefaultNodeBudget);

/// mu_{Xi,omega}(m) = sqrt(N)/(8 sqrt(2) pi) * Phi^K_m(omega/sqrt(N)).
PhiResult type_iii_multiplicity(const IntegralLattice& k, const LatticeVector& omega, int b,
                                const Int& m, const Rat& truncation,
                                std::uint64_t node_budget = kDefaultNodeBudget);

/// Series m = 1..m_max at truncation T = t_factor * m per point.
MultiplicitySeries type_iii_series(const IntegralLattice& k, const LatticeVector& omega, int b,
                                   const Int& m_max, long t_factor = 64,
                                   std::uint64_t node_budget = kDefaultNodeBudget);

struct ExponentReport {
    GrowthFit fit;
    double target = 0;  // b/2 - 1 for type II, (b-1)/2 for type III
};

ExponentReport exponent_report(const MultiplicitySeries& series, const Int& m_max);

}  // namespace specdiv
