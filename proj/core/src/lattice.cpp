#include "specdiv/lattice.hpp"

#include <algorithm>

namespace specdiv {

IntegralLattice::IntegralLattice(IMat gram) : gram_(std::move(gram)) {
    if (gram_.rows() == 0 || gram_.rows() != gram_.cols())
        throw validation_error("lattice: gram matrix must be square of positive rank");
    for (int i = 0; i < gram_.rows(); ++i)
        for (int j = i + 1; j < gram_.cols(); ++j)
            if (gram_.at(i, j) != gram_.at(j, i))
                throw validation_error("lattice: gram matrix is not symmetric");
    det_ = det(gram_);
    if (det_ == 0) throw validation_error("lattice: gram matrix is degenerate");
    even_ = true;
    for (int i = 0; i < gram_.rows(); ++i)
        if (mod_floor(gram_.at(i, i), Int(2)) != 0) even_ = false;
}

Int IntegralLattice::bilinear(const LatticeVector& x, const LatticeVector& y) const {
    if (static_cast<int>(x.size()) != rank() || static_cast<int>(y.size()) != rank())
        throw validation_error("bilinear: vector length does not match lattice rank");
    Int acc;
    for (int i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        Int row;
        for (int j = 0; j < rank(); ++j)
            if (y[j] != 0) row += gram_.at(i, j) * y[j];
        acc += x[i] * row;
    }
    return acc;
}

Int IntegralLattice::quad(const LatticeVector& x) const {
    Int b = bilinear(x, x);
    if (mod_floor(b, Int(2)) != 0)
        throw validation_error("quad: (x,x) is odd; Q(x) is not an integer on this lattice");
    return b / 2;
}

Signature IntegralLattice::signature() const {
    const int n = rank();
    QMat m = to_rational(gram_);
    Signature sig;
    auto add_row_col = [&](int dst, int src) {
        for (int j = 0; j < n; ++j) m.at(dst, j) += m.at(src, j);
        for (int i = 0; i < n; ++i) m.at(i, dst) += m.at(i, src);
    };
    auto swap_row_col = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < n; ++j) std::swap(m.at(a, j), m.at(b, j));
        for (int i = 0; i < n; ++i) std::swap(m.at(i, a), m.at(i, b));
    };
    for (int k = 0; k < n; ++k) {
        if (m.at(k, k) == 0) {
            int di = -1, oj = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, i) != 0) { di = i; break; }
            if (di >= 0) {
                swap_row_col(k, di);
            } else {
                for (int j = k + 1; j < n; ++j)
                    if (m.at(k, j) != 0) { oj = j; break; }
                if (oj < 0) throw validation_error("signature: degenerate gram matrix");
                add_row_col(k, oj);  // diagonal becomes 2*(k,oj) since both diagonals vanish
            }
        }
        const Rat p = m.at(k, k);
        if (p > 0) ++sig.plus; else ++sig.minus;
        for (int i = k + 1; i < n; ++i) {
            if (m.at(i, k) == 0) continue;
            Rat f = m.at(i, k) / p;
            for (int j = 0; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
            for (int j = 0; j < n; ++j) m.at(j, i) -= f * m.at(j, k);
        }
    }
    return sig;
}

bool IntegralLattice::is_positive_definite() const {
    Signature s = signature();
    return s.minus == 0;
}

bool IntegralLattice::is_lorentzian() const {
    Signature s = signature();
    return s.minus == 1 && s.plus == rank() - 1;
}

QMat IntegralLattice::dual_basis() const { return inverse(to_rational(gram_)); }

std::vector<Int> DiscriminantGroup::residues(size_t index) const {
    std::vector<Int> r(factors_.size());
    Int rem(static_cast<unsigned long>(index));
    for (size_t i = 0; i < factors_.size(); ++i) {
        r[i] = mod_floor(rem, factors_[i]);
        rem = floor_div(rem, factors_[i]);
    }
    return r;
}

size_t DiscriminantGroup::index_of(const std::vector<Int>& residues) const {
    Int idx(0), stride(1);
    for (size_t i = 0; i < factors_.size(); ++i) {
        idx += mod_floor(residues[i], factors_[i]) * stride;
        stride *= factors_[i];
    }
    return static_cast<size_t>(idx.get_ui());
}

size_t DiscriminantGroup::negate(size_t index) const {
    std::vector<Int> r = residues(index);
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_floor(-r[i], factors_[i]);
    return index_of(r);
}

RationalVector DiscriminantGroup::representative(size_t index) const {
    std::vector<Int> r = residues(index);
    size_t rank = gens_.empty() ? 0 : gens_[0].size();
    RationalVector rep(rank, Rat(0));
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t c = 0; c < rank; ++c) rep[c] += Rat(r[i]) * gens_[i][c];
    return rep;
}

size_t DiscriminantGroup::class_of_pairings(const std::vector<Int>& y) const {
    std::vector<Int> r(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        Int acc;
        for (int j = 0; j < u_rows_.cols(); ++j)
            if (u_rows_.at(static_cast<int>(i), j) != 0)
                acc += u_rows_.at(static_cast<int>(i), j) * y[j];
        r[i] = mod_floor(acc, factors_[i]);
    }
    return index_of(r);
}

size_t DiscriminantGroup::class_of(const RationalVector& beta, const IntegralLattice& l) const {
    std::vector<Int> y(l.rank());
    for (int i = 0; i < l.rank(); ++i) {
        Rat acc;
        for (int j = 0; j < l.rank(); ++j) acc += Rat(l.gram().at(i, j)) * beta[j];
        if (acc.get_den() != 1)
            throw validation_error("discriminant class: vector is not in the dual lattice");
        y[i] = acc.get_num();
    }
    return class_of_pairings(y);
}

DiscriminantGroup discriminant_group(const IntegralLattice& l, const Int& fill_limit) {
    SmithResult s = smith_normal_form(l.gram());
    const int n = l.rank();
    DiscriminantGroup g;
    g.order_ = 1;
    std::vector<int> nontrivial;
    for (int i = 0; i < n; ++i) {
        if (s.d.at(i, i) > 1) {
            nontrivial.push_back(i);
            g.factors_.push_back(s.d.at(i, i));
            g.order_ *= s.d.at(i, i);
        }
    }
    // Generator of the cyclic factor at Smith index i is (1/d_i) * (column i of V).
    for (int idx : nontrivial) {
        RationalVector gen(n);
        for (int r = 0; r < n; ++r) gen[r] = make_rat(s.v.at(r, idx), s.d.at(idx, idx));
        g.gens_.push_back(std::move(gen));
    }
    g.u_rows_ = IMat(static_cast<int>(nontrivial.size()), n);
    for (size_t i = 0; i < nontrivial.size(); ++i)
        for (int j = 0; j < n; ++j)
            g.u_rows_.at(static_cast<int>(i), j) = s.u.at(nontrivial[i], j);

    if (g.order_ > fill_limit)
        throw budget_error("discriminant group too large to tabulate");

    const size_t k = g.factors_.size();
    const size_t count = g.size();
    // q(sum a_i g_i) = sum a_i^2 q_i + sum_{i<j} a_i a_j (g_i, g_j) mod Z.
    std::vector<Rat> qi(k);
    std::vector<std::vector<Rat>> bij(k, std::vector<Rat>(k));
    QMat gram_q = to_rational(l.gram());
    auto pair_q = [&](const RationalVector& a, const RationalVector& b) {
        Rat acc;
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            Rat row;
            for (int j = 0; j < n; ++j)
                if (b[j] != 0) row += gram_q.at(i, j) * b[j];
            acc += a[i] * row;
        }
        return acc;
    };
    for (size_t i = 0; i < k; ++i) {
        qi[i] = rat_mod1(pair_q(g.gens_[i], g.gens_[i]) / 2);
        for (size_t j = i + 1; j < k; ++j) bij[i][j] = rat_mod1(pair_q(g.gens_[i], g.gens_[j]));
    }
    g.qvalues_.resize(count);
    for (size_t idx = 0; idx < count; ++idx) {
        std::vector<Int> a = g.residues(idx);
        Rat q;
        for (size_t i = 0; i < k; ++i) {
            if (a[i] == 0) continue;
            q += Rat(a[i] * a[i]) * qi[i];
            for (size_t j = i + 1; j < k; ++j)
                if (a[j] != 0) q += Rat(a[i] * a[j]) * bij[i][j];
        }
        g.qvalues_[idx] = rat_mod1(q);
    }
    return g;
}

Maximality is_maximal(const IntegralLattice& l, const Int& ceiling) {
    if (!l.is_even()) throw validation_error("is_maximal: lattice must be even");
    // Even overlattices correspond to isotropic subgroups of L∨/L; a nonzero
    // isotropic subgroup exists iff some nonzero class has q(beta) = 0 mod Z,
    // since q(k*beta) = k^2 q(beta) and the pairing integrality on the cyclic
    // group generated by beta follows from q vanishing on it.
    SmithResult s = smith_normal_form(l.gram());
    Int order(1);
    for (int i = 0; i < l.rank(); ++i) order *= s.d.at(i, i);
    if (order > ceiling) return Maximality::undecided;
    DiscriminantGroup g = discriminant_group(l, ceiling);
    for (size_t idx = 1; idx < g.size(); ++idx)
        if (g.qvalue(idx) == 0) return Maximality::no;
    return Maximality::yes;
}

IntegralLattice ComplementResult::lattice() const {
    if (degenerate) throw validation_error("complement: induced form is degenerate");
    return IntegralLattice(gram);
}

namespace {

IMat induced_gram(const IMat& gram, const IMat& basis) {
    return mul(mul(basis.transposed(), gram), basis);
}

}  // namespace

ComplementResult orthogonal_complement(const IntegralLattice& l,
                                       const std::vector<LatticeVector>& s) {
    const int n = l.rank();
    if (s.empty()) throw validation_error("orthogonal_complement: empty constraint set");
    IMat rows(static_cast<int>(s.size()), n);
    for (size_t a = 0; a < s.size(); ++a) {
        if (static_cast<int>(s[a].size()) != n)
            throw validation_error("orthogonal_complement: vector length mismatch");
        for (int j = 0; j < n; ++j) {
            Int acc;
            for (int i = 0; i < n; ++i) acc += s[a][i] * l.gram().at(i, j);
            rows.at(static_cast<int>(a), j) = acc;
        }
    }
    {
        // Linear independence of S.
        IMat sm(n, static_cast<int>(s.size()));
        for (size_t a = 0; a < s.size(); ++a)
            for (int i = 0; i < n; ++i) sm.at(i, static_cast<int>(a)) = s[a][i];
        if (row_hnf(sm.transposed()).rank != static_cast<int>(s.size()))
            throw validation_error("orthogonal_complement: constraint vectors are dependent");
    }
    ComplementResult res;
    res.basis = kernel_basis(rows);
    res.gram = induced_gram(l.gram(), res.basis);
    res.degenerate = res.gram.rows() == 0 || det(res.gram) == 0;
    return res;
}

std::vector<LatticeVector> isotropic_vectors(const IntegralLattice& l, long height_bound,
                                             std::uint64_t budget) {
    if (height_bound <= 0) throw validation_error("isotropic_vectors: bound must be positive");
    const int n = l.rank();
    double cells = 1.0;
    for (int i = 0; i < n; ++i) cells *= 2.0 * static_cast<double>(height_bound) + 1.0;
    if (cells > static_cast<double>(budget))
        throw budget_error("isotropic_vectors: box scan exceeds budget");
    std::vector<LatticeVector> out;
    if (!l.is_positive_definite()) {
        LatticeVector x(n, Int(-height_bound));
        while (true) {
            // canonical representative: first nonzero coordinate positive
            int fnz = -1;
            for (int i = 0; i < n; ++i)
                if (x[i] != 0) { fnz = i; break; }
            if (fnz >= 0 && x[fnz] > 0) {
                Int content = 0;
                for (int i = 0; i < n; ++i) content = gcd(content, x[i]);
                if (content == 1 && l.bilinear(x, x) == 0) out.push_back(x);
            }
            int k = 0;
            while (k < n && x[k] == height_bound) x[k++] = -height_bound;
            if (k == n) break;
            x[k] += 1;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Basis of the quotient C/span(first k columns of a completion), together
// with ambient lifts; the induced form is well-defined because the killed
// vectors pair to zero with all of C.
IsotropicQuotient quotient_of_complement(const IntegralLattice& l, const IMat& cbasis,
                                         const IMat& killed) {
    const int k = killed.cols();
    IMat coords(cbasis.cols(), k);
    for (int a = 0; a < k; ++a) {
        std::vector<Int> target = killed.column(a), sol;
        if (!solve_integer(cbasis, target, sol))
            throw validation_error("quotient: isotropic sublattice is not primitive");
        for (int i = 0; i < cbasis.cols(); ++i) coords.at(i, a) = sol[i];
    }
    IMat w = unimodular_completion(coords);
    IMat quot_coords(cbasis.cols(), cbasis.cols() - k);
    for (int j = k; j < w.cols(); ++j)
        for (int i = 0; i < w.rows(); ++i) quot_coords.at(i, j - k) = w.at(i, j);
    IsotropicQuotient q;
    q.complement_basis = cbasis;
    q.lifts = mul(cbasis, quot_coords);
    q.lattice = IntegralLattice(induced_gram(l.gram(), q.lifts));
    return q;
}

}  // namespace

IsotropicQuotient quotient_by_isotropic_line(const IntegralLattice& l, const LatticeVector& i) {
    if (l.bilinear(i, i) != 0)
        throw validation_error("quotient_by_isotropic_line: vector is not isotropic");
    Int content = 0;
    for (const Int& c : i) content = gcd(content, c);
    if (content != 1) throw validation_error("quotient_by_isotropic_line: vector is not primitive");
    ComplementResult comp = orthogonal_complement(l, {i});
    IMat killed(l.rank(), 1);
    for (int r = 0; r < l.rank(); ++r) killed.at(r, 0) = i[r];
    return quotient_of_complement(l, comp.basis, killed);
}

IsotropicQuotient quotient_by_isotropic_plane(const IntegralLattice& l, const LatticeVector& j1,
                                              const LatticeVector& j2) {
    if (l.bilinear(j1, j1) != 0 || l.bilinear(j2, j2) != 0 || l.bilinear(j1, j2) != 0)
        throw validation_error("quotient_by_isotropic_plane: plane is not totally isotropic");
    IMat killed(l.rank(), 2);
    for (int r = 0; r < l.rank(); ++r) {
        killed.at(r, 0) = j1[r];
        killed.at(r, 1) = j2[r];
    }
    if (row_hnf(killed.transposed()).rank != 2)
        throw validation_error("quotient_by_isotropic_plane: vectors do not span a plane");
    ComplementResult comp = orthogonal_complement(l, {j1, j2});
    return quotient_of_complement(l, comp.basis, killed);
}

namespace lattices {

IntegralLattice hyperbolic_plane() {
    return IntegralLattice(IMat(2, 2, {Int(0), Int(1), Int(1), Int(0)}));
}

IntegralLattice a1(int copies) {
    IMat g(copies, copies);
    for (int i = 0; i < copies; ++i) g.at(i, i) = 2;
    return IntegralLattice(g);
}

IntegralLattice e8() {
    // Cartan matrix of E8; node 8 attached to node 5.
    const int adj[8][8] = {
        {2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, 0},
        {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, -1}, {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, 0, 0, -1, 0, 0, 2}};
    IMat g(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) g.at(i, j) = adj[i][j];
    return IntegralLattice(g);
}

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
    IMat g(a.rank() + b.rank(), a.rank() + b.rank());
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) g.at(i, j) = a.gram().at(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) g.at(a.rank() + i, a.rank() + j) = b.gram().at(i, j);
    return IntegralLattice(g);
}

IntegralLattice from_diagonal(const std::vector<long>& diag) {
    IMat g(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (size_t i = 0; i < diag.size(); ++i) g.at(static_cast<int>(i), static_cast<int>(i)) = diag[i];
    return IntegralLattice(g);
}

}  // namespace lattices

}  // namespace specdiv
