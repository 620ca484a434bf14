#pragma once

#include "specdiv/matrix.hpp"
#include "specdiv/numeric.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace specdiv {

struct Signature {
    int plus = 0;
    int minus = 0;
    bool operator==(const Signature&) const = default;
};

/// An integral lattice presented by the Gram matrix of a fixed basis,
/// (e_i, e_j) exact integers. Q(x) = (x,x)/2 on even lattices.
class IntegralLattice {
public:
    IntegralLattice() = default;
    explicit IntegralLattice(IMat gram);

    int rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }
    const Int& determinant() const { return det_; }
    bool is_even() const { return even_; }

    Int bilinear(const LatticeVector& x, const LatticeVector& y) const;
    /// Q(x) = (x,x)/2; throws on vectors of odd square norm.
    Int quad(const LatticeVector& x) const;

    Signature signature() const;
    bool is_positive_definite() const;
    /// Signature (rank-1, 1).
    bool is_lorentzian() const;

    /// gram^{-1}: rows span the dual lattice in basis coordinates.
    QMat dual_basis() const;

private:
    IMat gram_;
    Int det_;
    bool even_ = false;
};

/// L∨/L as invariant factors d_1 | ... | d_k (> 1), generators lifted to L∨,
/// and the Q/Z-valued quadratic form on the cosets.
class DiscriminantGroup {
public:
    const std::vector<Int>& invariant_factors() const { return factors_; }
    const std::vector<RationalVector>& generators() const { return gens_; }
    const Int& order() const { return order_; }
    size_t size() const { return static_cast<size_t>(order_.get_ui()); }

    std::vector<Int> residues(size_t index) const;
    size_t index_of(const std::vector<Int>& residues) const;
    size_t negate(size_t index) const;

    /// Q(beta) mod Z in [0,1).
    const Rat& qvalue(size_t index) const { return qvalues_[index]; }
    const std::vector<Rat>& qvalues() const { return qvalues_; }

    /// Representative of the coset in L∨ (lattice-basis coordinates).
    RationalVector representative(size_t index) const;

    /// Class of a dual vector given its pairing vector y = gram * beta
    /// (which is integral exactly when beta is in L∨).
    size_t class_of_pairings(const std::vector<Int>& y) const;
    /// Rows of the Smith transform attached to the nontrivial factors;
    /// class residues are (smith_rows * y) mod d_i.
    const IMat& smith_rows() const { return u_rows_; }
    /// Class of beta in L∨ given in lattice-basis coordinates.
    size_t class_of(const RationalVector& beta, const IntegralLattice& l) const;

private:
    friend DiscriminantGroup discriminant_group(const IntegralLattice&, const Int&);
    std::vector<Int> factors_;          // > 1, ascending divisibility
    std::vector<RationalVector> gens_;  // lifts of the cyclic generators
    Int order_ = 1;
    std::vector<Rat> qvalues_;
    IMat u_rows_;  // rows of the Smith transform for the nontrivial factors
};

DiscriminantGroup discriminant_group(const IntegralLattice& l,
                                     const Int& fill_limit = Int(1000000));

enum class Maximality { yes, no, undecided };

/// True iff the discriminant form has no nonzero isotropic element, which is
/// equivalent to L admitting no strict even overlattice. Groups larger than
/// the ceiling are reported undecided rather than enumerated.
Maximality is_maximal(const IntegralLattice& l, const Int& ceiling = Int(1000000));

struct ComplementResult {
    IMat basis;  // ambient coordinates, saturated, canonical HNF columns
    IMat gram;   // induced Gram matrix (may be degenerate)
    bool degenerate = false;
    IntegralLattice lattice() const;  // throws when degenerate
};

/// Saturated sublattice {x in L : (x,s)=0 for all s in S} with induced form.
ComplementResult orthogonal_complement(const IntegralLattice& l,
                                       const std::vector<LatticeVector>& s);

/// All primitive isotropic vectors with 0 < max|coord| <= height_bound,
/// one representative per +/- pair, sorted lexicographically.
std::vector<LatticeVector> isotropic_vectors(const IntegralLattice& l, long height_bound,
                                             std::uint64_t budget = 200000000ull);

struct IsotropicQuotient {
    IntegralLattice lattice;
    IMat complement_basis;  // basis of I^perp (resp. J^perp) in ambient coordinates
    IMat lifts;             // ambient lifts of the quotient basis vectors
};

/// K_I = (I^perp cap L)/Zi for a primitive isotropic i; drops signature (1,1).
IsotropicQuotient quotient_by_isotropic_line(const IntegralLattice& l, const LatticeVector& i);

/// D = J^perp_L / J for a primitive isotropic plane J = <j1, j2>; drops (2,2).
IsotropicQuotient quotient_by_isotropic_plane(const IntegralLattice& l, const LatticeVector& j1,
                                              const LatticeVector& j2);

namespace lattices {

/// Hyperbolic plane U, gram [[0,1],[1,0]].
IntegralLattice hyperbolic_plane();
/// Orthogonal sum of k copies of A1 = [[2]].
IntegralLattice a1(int copies = 1);
/// The E8 root lattice (Cartan matrix Gram, determinant 1).
IntegralLattice e8();
IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b);
IntegralLattice from_diagonal(const std::vector<long>& diag);

}  // namespace lattices

}  // namespace specdiv
