#pragma once

// Independent brute-force oracles for the test suite. Everything here walks
// exact coordinate boxes; none of it shares code with the enumeration paths
// under test.

#include "specdiv/specdiv.hpp"

#include <map>
#include <random>
#include <vector>

namespace oracles {

using specdiv::IMat;
using specdiv::Int;
using specdiv::IntegralLattice;
using specdiv::LatticeVector;
using specdiv::QMat;
using specdiv::Rat;

// floor(sqrt(r)) for rational r >= 0; isqrt(floor(r)) is exact for this.
inline Int floor_sqrt(const Rat& r) { return specdiv::isqrt(specdiv::rat_floor(r)); }

// Exact coordinate box for {x : x^T G x <= c}: |x_i|^2 <= c * (G^{-1})_ii.
inline std::vector<long> definite_box(const IntegralLattice& l, const Rat& bilinear_bound) {
    QMat inv = specdiv::inverse(specdiv::to_rational(l.gram()));
    std::vector<long> box(l.rank());
    for (int i = 0; i < l.rank(); ++i)
        box[i] = specdiv::to_long(floor_sqrt(bilinear_bound * inv.at(i, i)));
    return box;
}

template <class Fn>
void scan_box(const std::vector<long>& box, Fn&& fn) {
    const int n = static_cast<int>(box.size());
    std::vector<long> x(n);
    for (int i = 0; i < n; ++i) x[i] = -box[i];
    while (true) {
        fn(x);
        int k = 0;
        while (k < n && x[k] == box[k]) {
            x[k] = -box[k];
            ++k;
        }
        if (k == n) break;
        x[k] += 1;
    }
}

inline std::vector<LatticeVector> naive_short_vectors(const IntegralLattice& l, const Int& m) {
    std::vector<LatticeVector> out;
    if (m == 0) {
        out.emplace_back(l.rank(), Int(0));
        return out;
    }
    std::vector<long> box = definite_box(l, Rat(2 * m));
    scan_box(box, [&](const std::vector<long>& x) {
        LatticeVector v(l.rank());
        for (int i = 0; i < l.rank(); ++i) v[i] = x[i];
        if (l.bilinear(v, v) == 2 * m) out.push_back(std::move(v));
    });
    std::sort(out.begin(), out.end());
    return out;
}

// All lambda with Q = m, Q(lambda_perp) <= T on a Lorentzian lattice, by
// scanning the box of the explicit majorant form 2N*G + 2*(Gw)(Gw)^T.
struct NaiveMajorantPoint {
    LatticeVector lambda;
    Rat q_perp;
};

inline std::vector<NaiveMajorantPoint> naive_majorant(const IntegralLattice& k,
                                                      const LatticeVector& omega, const Int& m,
                                                      const Rat& t) {
    std::vector<NaiveMajorantPoint> out;
    Int n_omega = -k.quad(omega);
    if (t < Rat(m)) return out;
    const int n = k.rank();
    std::vector<Int> gw(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gw[i] += k.gram().at(i, j) * omega[j];
    IMat f(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            f.at(i, j) = 2 * n_omega * k.gram().at(i, j) + 2 * gw[i] * gw[j];
    Rat c = Rat(4) * n_omega * (Rat(2) * t - m);
    QMat finv = specdiv::inverse(specdiv::to_rational(f));
    std::vector<long> box(n);
    for (int i = 0; i < n; ++i) box[i] = specdiv::to_long(floor_sqrt(c * finv.at(i, i)));
    scan_box(box, [&](const std::vector<long>& xs) {
        LatticeVector v(n);
        for (int i = 0; i < n; ++i) v[i] = xs[i];
        if (k.bilinear(v, v) != 2 * m) return;
        Int s;
        for (int i = 0; i < n; ++i) s += v[i] * gw[i];
        Rat q_perp = Rat(m) + specdiv::make_rat(s * s, 4 * n_omega);
        if (q_perp <= t) out.push_back({std::move(v), q_perp});
    });
    std::sort(out.begin(), out.end(),
              [](const NaiveMajorantPoint& a, const NaiveMajorantPoint& b) {
                  return a.lambda < b.lambda;
              });
    return out;
}

// Coset-indexed theta coefficients by a direct dual-box scan.
inline std::map<std::pair<size_t, Rat>, Int> naive_theta(const IntegralLattice& d, const Rat& trunc) {
    specdiv::DiscriminantGroup g = specdiv::discriminant_group(d);
    QMat ginv = d.dual_basis();
    std::map<std::pair<size_t, Rat>, Int> out;
    // dual vector with coordinates y w.r.t. the dual basis has pairing
    // vector y and norm y^T G^{-1} y / 2; box from ((G^{-1})^{-1})_ii = G_ii.
    std::vector<long> box(d.rank());
    for (int i = 0; i < d.rank(); ++i)
        box[i] = specdiv::to_long(floor_sqrt(Rat(2) * trunc * Rat(d.gram().at(i, i))));
    scan_box(box, [&](const std::vector<long>& ys) {
        std::vector<Int> y(d.rank());
        Rat q;
        for (int i = 0; i < d.rank(); ++i) y[i] = ys[i];
        for (int i = 0; i < d.rank(); ++i)
            for (int j = 0; j < d.rank(); ++j)
                if (y[i] != 0 && y[j] != 0) q += Rat(y[i] * y[j]) * ginv.at(i, j);
        q /= 2;
        if (q > trunc) return;
        out[{g.class_of_pairings(y), q}] += 1;
    });
    return out;
}

// Does L admit a strict even overlattice? Tries every nonzero coset of
// L∨/L and checks integrality and evenness of the spanned lattice directly.
inline bool naive_even_overlattice_exists(const IntegralLattice& l) {
    specdiv::DiscriminantGroup g = specdiv::discriminant_group(l);
    const int n = l.rank();
    for (size_t idx = 1; idx < g.size(); ++idx) {
        specdiv::RationalVector rep = g.representative(idx);
        Int den(1);
        for (const Rat& c : rep) den = specdiv::lcm(den, c.get_den());
        if (den == 1) continue;  // rep already in L
        IMat cols(n, n + 1);
        for (int i = 0; i < n; ++i) cols.at(i, i) = den;
        for (int i = 0; i < n; ++i) {
            Rat scaled = rep[i] * den;
            cols.at(i, n) = scaled.get_num();
        }
        IMat h = specdiv::hnf_column_basis(cols);  // basis of den * (L + Z rep)
        QMat gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat acc;
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (h.at(a, i) != 0 && h.at(b, j) != 0)
                            acc += Rat(h.at(a, i) * h.at(b, j)) * Rat(l.gram().at(a, b));
                gram.at(i, j) = acc / (den * den);
            }
        bool integral_even = true;
        for (int i = 0; i < n && integral_even; ++i)
            for (int j = 0; j < n && integral_even; ++j) {
                if (gram.at(i, j).get_den() != 1) integral_even = false;
                if (i == j && integral_even &&
                    specdiv::mod_floor(gram.at(i, i).get_num(), Int(2)) != 0)
                    integral_even = false;
            }
        if (!integral_even) continue;
        // strictness: index = den^n / |det h| ... h spans den*(L + Z rep)
        Int dh = specdiv::det(h);
        if (dh < 0) dh = -dh;
        Int den_pow(1);
        for (int i = 0; i < n; ++i) den_pow *= den;
        if (dh < den_pow) return true;  // strictly larger than L
    }
    return false;
}

// |{v in Z^r : Q(beta + v) = m}| by scanning the box around -beta.
inline Int naive_coset_count(const IntegralLattice& l, const specdiv::RationalVector& beta,
                             const Rat& m) {
    if (m < 0) return Int(0);
    const int n = l.rank();
    QMat gram = specdiv::to_rational(l.gram());
    QMat inv = specdiv::inverse(gram);
    std::vector<long> lo(n), hi(n), x(n);
    for (int i = 0; i < n; ++i) {
        // |beta_i + v_i| <= sqrt(2m inv_ii); round the radius up, the exact
        // norm check filters the slack
        Int b = floor_sqrt(Rat(2) * m * inv.at(i, i)) + 1;
        lo[i] = specdiv::to_long(specdiv::rat_ceil(Rat(-b) - beta[i]));
        hi[i] = specdiv::to_long(specdiv::rat_floor(Rat(b) - beta[i]));
        if (lo[i] > hi[i]) return Int(0);  // empty box dimension
    }
    Int count;
    for (int i = 0; i < n; ++i) x[i] = lo[i];
    while (true) {
        Rat q;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q += (beta[i] + x[i]) * gram.at(i, j) * (beta[j] + x[j]);
        if (q == Rat(2) * m) count += 1;
        int k = 0;
        while (k < n && x[k] == hi[k]) {
            x[k] = lo[k];
            ++k;
        }
        if (k == n) break;
        x[k] += 1;
    }
    return count;
}

inline Int sigma3(long m) {
    Int acc;
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) acc += Int(d) * d * d;
    return acc;
}

inline Int sigma1(long m) {
    Int acc;
    for (long d = 1; d <= m; ++d)
        if (m % d == 0) acc += d;
    return acc;
}

// Diagonally dominant random even Gram matrices; positive definite by
// construction, far from the Hermite extremes.
inline IntegralLattice random_lattice(std::mt19937& rng, int rank, long max_entry) {
    std::uniform_int_distribution<long> diag(1, max_entry / 2);
    std::uniform_int_distribution<long> off(-1, 1);
    while (true) {
        IMat g(rank, rank);
        for (int i = 0; i < rank; ++i) g.at(i, i) = 2 * diag(rng);
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j) {
                long v = off(rng);
                g.at(i, j) = v;
                g.at(j, i) = v;
            }
        // force strict diagonal dominance
        for (int i = 0; i < rank; ++i) {
            Int rowsum;
            for (int j = 0; j < rank; ++j)
                if (j != i) rowsum += abs(g.at(i, j));
            if (g.at(i, i) <= rowsum) g.at(i, i) = rowsum + 2;
            if (specdiv::mod_floor(g.at(i, i), Int(2)) != 0) g.at(i, i) += 1;
        }
        IntegralLattice l(g);
        if (l.is_positive_definite()) return l;
    }
}

// Hand-picked skew positive definite Grams with entries <= 6 and small
// eigenvalues; they stress the floating bounds harder than the dominant
// random family.
inline std::vector<IntegralLattice> skew_corpus() {
    std::vector<IntegralLattice> out;
    out.push_back(IntegralLattice(IMat(2, 2, {Int(6), Int(5), Int(5), Int(6)})));
    out.push_back(IntegralLattice(IMat(2, 2, {Int(2), Int(1), Int(1), Int(4)})));
    out.push_back(IntegralLattice(
        IMat(3, 3, {Int(2), Int(1), Int(1), Int(1), Int(2), Int(1), Int(1), Int(1), Int(2)})));
    out.push_back(IntegralLattice(
        IMat(3, 3, {Int(6), Int(5), Int(4), Int(5), Int(6), Int(5), Int(4), Int(5), Int(6)})));
    out.push_back(IntegralLattice(
        IMat(4, 4, {Int(4), Int(2), Int(0), Int(1), Int(2), Int(4), Int(2), Int(0), Int(0),
                    Int(2), Int(4), Int(2), Int(1), Int(0), Int(2), Int(4)})));
    out.push_back(IntegralLattice(
        IMat(4, 4, {Int(2), Int(-1), Int(0), Int(0), Int(-1), Int(2), Int(-1), Int(0), Int(0),
                    Int(-1), Int(2), Int(-1), Int(0), Int(0), Int(-1), Int(2)})));
    return out;
}

inline IMat random_unimodular(std::mt19937& rng, int n, int shears = 6) {
    IMat u = IMat::identity(n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<int> amt(-2, 2);
    for (int s = 0; s < shears; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        int a = amt(rng);
        for (int r = 0; r < n; ++r) u.at(r, j) += Int(a) * u.at(r, i);
    }
    return u;
}

}  // namespace oracles
