#pragma once

#include "specdiv/enumerate.hpp"
#include "specdiv/lattice.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace specdiv {

/// Coset-indexed representation numbers c(D, beta, m) of a positive definite
/// lattice up to a truncation: the Fourier coefficients of its vector-valued
/// theta function. Exponents on coset c form the grid offset(c) + Z>=0.
class ThetaTable {
public:
    const IntegralLattice& lattice() const { return lattice_; }
    const DiscriminantGroup& group() const { return group_; }
    const Rat& truncation() const { return truncation_; }

    size_t coset_count() const { return counts_.size(); }
    /// Smallest exponent of the coset grid (the fractional part Q(beta) mod 1).
    const Rat& offset(size_t coset) const { return offsets_[coset]; }
    const std::vector<long long>& counts(size_t coset) const { return counts_[coset]; }

    /// c(D, beta, m); zero off the coset grid, throws beyond the truncation.
    Int coefficient(size_t coset, const Rat& m) const;

    /// (m, value) pairs of one coset, for growth fits.
    std::vector<std::pair<double, double>> coset_series(size_t coset) const;

    struct Entry {
        size_t coset;
        Rat m;
        Int value;
    };
    /// All stored entries, sorted by (coset, m).
    std::vector<Entry> entries() const;

private:
    friend ThetaTable theta_series(const IntegralLattice&, const Rat&, std::uint64_t);
    IntegralLattice lattice_;
    DiscriminantGroup group_;
    Rat truncation_;
    std::vector<Rat> offsets_;
    std::vector<std::vector<long long>> counts_;
};

/// Theta coefficients of a positive definite lattice for all cosets and all
/// exponents <= truncation. Orthogonally indecomposable Gram matrices are
/// enumerated coset by coset; detected diagonal blocks are combined through
/// the exact direct-sum convolution identity.
ThetaTable theta_series(const IntegralLattice& d, const Rat& truncation,
                        std::uint64_t node_budget = kDefaultNodeBudget);

/// Re-indexed theta coefficients of D = J^perp_L / J on the discriminant
/// group of the ambient lattice: entries vanish on cosets with no lift into
/// J^perp, and equal c(D, beta-bar, m) otherwise.
class LiftedCoefficientTable {
public:
    const IntegralLattice& ambient() const { return ambient_; }
    const DiscriminantGroup& group() const { return group_; }
    const ThetaTable& base() const { return base_; }
    const Rat& truncation() const { return base_.truncation(); }

    size_t coset_count() const { return lift_class_.size(); }
    bool has_lift(size_t coset) const { return lift_class_[coset].has_value(); }
    const std::optional<size_t>& lift_class(size_t coset) const { return lift_class_[coset]; }
    Int coefficient(size_t coset, const Rat& m) const;
    std::vector<std::pair<double, double>> coset_series(size_t coset) const;

private:
    friend LiftedCoefficientTable lifted_coefficients(const IntegralLattice&, const LatticeVector&,
                                                      const LatticeVector&, const Rat&,
                                                      std::uint64_t);
    IntegralLattice ambient_;
    DiscriminantGroup group_;
    ThetaTable base_;
    std::vector<std::optional<size_t>> lift_class_;
};

LiftedCoefficientTable lifted_coefficients(const IntegralLattice& l, const LatticeVector& j1,
                                           const LatticeVector& j2, const Rat& truncation,
                                           std::uint64_t node_budget = kDefaultNodeBudget);

/// q d/dq of a coefficient table: every coefficient multiplied by its
/// exponent (exact rationals; the constant term dies).
class DerivedSeries {
public:
    /// Multiplies each raw coefficient by its exponent offset(c) + t.
    DerivedSeries(Rat truncation, std::vector<Rat> offsets, std::vector<std::vector<Rat>> raw);

    size_t coset_count() const { return values_.size(); }
    const Rat& offset(size_t coset) const { return offsets_[coset]; }
    Rat coefficient(size_t coset, const Rat& m) const;
    std::vector<std::pair<double, double>> coset_series(size_t coset) const;

    struct Entry {
        size_t coset;
        Rat m;
        Rat value;
    };
    std::vector<Entry> entries() const;

private:
    Rat truncation_;
    std::vector<Rat> offsets_;
    std::vector<std::vector<Rat>> values_;
};

DerivedSeries q_derivative(const ThetaTable& table);
DerivedSeries q_derivative(const LiftedCoefficientTable& table);

/// Log-log slope of dyadic-block maxima: for each block [2^k, 2^{k+1}) the
/// largest value is taken (at its own abscissa), blocks with max <= 0 are
/// skipped, and a least-squares line through the surviving points gives the
/// slope; the residual is the RMS misfit. Raw coefficient series oscillate
/// (they vanish off represented norms), which the block max smooths away.
struct GrowthFit {
    double slope = 0;
    double residual = 0;
};

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& series,
                     double expected_exponent = 0.0, int min_blocks = 6);

}  // namespace specdiv
