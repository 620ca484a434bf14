#pragma once

#include "specdiv/lattice.hpp"

#include <cstdint>
#include <vector>

namespace specdiv {

inline constexpr std::uint64_t kDefaultNodeBudget = 1ull << 33;

struct NormSlice {
    IntegralLattice lattice;
    Rat target_norm;
    std::vector<LatticeVector> vectors;  // duplicate-free, lexicographically sorted
};

/// All lattice vectors with Q(x) = m in a positive definite lattice,
/// both signs included.
NormSlice short_vectors(const IntegralLattice& l, const Int& m,
                        std::uint64_t node_budget = kDefaultNodeBudget);

/// |{lambda in beta + L : Q(lambda) = m}| for beta in the dual lattice;
/// zero by convention when m is not congruent to Q(beta) mod Z.
Int coset_representation_count(const IntegralLattice& l, const RationalVector& beta, const Rat& m,
                               std::uint64_t node_budget = kDefaultNodeBudget);

struct MajorantPoint {
    LatticeVector lambda;
    Rat q_perp;  // Q(lambda_{v-perp}) = m + (lambda,omega)^2 / (4N), exact
};

/// All lambda in a Lorentzian lattice with Q(lambda) = m and
/// Q(lambda_{v-perp}) <= T, where v = omega/sqrt(N), Q(omega) = -N < 0.
/// The positive-definite majorant Q_v(x) = Q(x) - 2 Q(x_v) bounds the sweep:
/// Q_v(lambda) <= 2T - m, i.e. (lambda,omega)^2 <= 4N(T - m).
std::vector<MajorantPoint> majorant_enumerate(const IntegralLattice& k, const LatticeVector& omega,
                                              const Int& m, const Rat& t,
                                              std::uint64_t node_budget = kDefaultNodeBudget);

/// One hyperplane slice (lambda, omega) = s of the truncated hyperboloid,
/// with the exact count of lattice points on it.
struct MajorantSlice {
    Int s;
    Int count;
    Rat q_perp;
};

/// Slice decomposition of the same point set that majorant_enumerate lists;
/// counts only, ordered by increasing |s| then s.
std::vector<MajorantSlice> majorant_slice_counts(const IntegralLattice& k,
                                                 const LatticeVector& omega, const Int& m,
                                                 const Rat& t,
                                                 std::uint64_t node_budget = kDefaultNodeBudget);

struct QuadricBinReport {
    Int m;
    LatticeVector omega;
    Int n_omega;  // N with Q(omega) = -N
    long first_bin = 1;
    std::vector<Int> bins;  // bins[i] counts Q_perp in [first_bin + i, first_bin + i + 1)
    Int total() const;
};

/// Histogram of Q(lambda_{v-perp}) over left-closed unit bins [N, N+1),
/// N = m .. n_max (Q_perp >= m always holds on the slice Q(lambda) = m).
QuadricBinReport quadric_bin_counts(const IntegralLattice& k, const LatticeVector& omega,
                                    const Int& m, long n_max,
                                    std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace specdiv
