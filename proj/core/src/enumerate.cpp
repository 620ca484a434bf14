#include "specdiv/enumerate.hpp"

#include "specdiv/enum_core.hpp"

#include <algorithm>
#include <atomic>

namespace specdiv {

namespace {

std::atomic<int> g_max_threads{1};

}  // namespace

void set_max_threads(int n) { g_max_threads.store(n < 1 ? 1 : n); }
int max_threads() { return g_max_threads.load(); }

namespace enumcore {

std::vector<i64> to_i64(const IMat& a) {
    std::vector<i64> out(static_cast<size_t>(a.rows()) * a.cols());
    size_t k = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (!a.at(i, j).fits_slong_p())
                throw budget_error("enumeration: gram entry exceeds 64-bit range");
            out[k++] = a.at(i, j).get_si();
        }
    return out;
}

}  // namespace enumcore

namespace {

using enumcore::i64;

i64 to_i64_scalar(const Int& v, const char* what) {
    if (!v.fits_slong_p()) throw budget_error(std::string(what) + " exceeds 64-bit range");
    return v.get_si();
}

LatticeVector negated(const LatticeVector& x) {
    LatticeVector y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
    return y;
}

}  // namespace

NormSlice short_vectors(const IntegralLattice& l, const Int& m, std::uint64_t node_budget) {
    if (!l.is_positive_definite())
        throw validation_error("short_vectors: lattice must be positive definite");
    if (m < 0) throw validation_error("short_vectors: target norm must be nonnegative");
    NormSlice slice{l, Rat(m), {}};
    if (m == 0) {
        slice.vectors.emplace_back(l.rank(), Int(0));
        return slice;
    }
    const i64 target = to_i64_scalar(Int(2 * m), "short_vectors: target");
    enumcore::Core core(l.rank(), enumcore::to_i64(l.gram()), target);
    enumcore::Options opt;
    opt.fold_signs = true;
    opt.node_budget = node_budget;
    core.visit(opt, [&](const i64* x, i64 q, int weight) {
        if (q != target) return;
        LatticeVector v(l.rank());
        for (int i = 0; i < l.rank(); ++i) v[i] = x[i];
        if (weight == 2) slice.vectors.push_back(negated(v));
        slice.vectors.push_back(std::move(v));
    });
    std::sort(slice.vectors.begin(), slice.vectors.end());
    return slice;
}

Int coset_representation_count(const IntegralLattice& l, const RationalVector& beta, const Rat& m,
                               std::uint64_t node_budget) {
    if (!l.is_positive_definite())
        throw validation_error("coset_representation_count: lattice must be positive definite");
    if (static_cast<int>(beta.size()) != l.rank())
        throw validation_error("coset_representation_count: shift length mismatch");
    const int n = l.rank();
    // beta must pair integrally with the lattice.
    Rat qbeta;
    Int den(1);
    for (int i = 0; i < n; ++i) {
        Rat acc;
        for (int j = 0; j < n; ++j)
            if (beta[j] != 0) acc += Rat(l.gram().at(i, j)) * beta[j];
        if (acc.get_den() != 1)
            throw validation_error("coset_representation_count: beta is not in the dual lattice");
        if (beta[i] != 0) qbeta += beta[i] * acc;
        den = lcm(den, beta[i].get_den());
    }
    qbeta /= 2;
    if (m < 0) return Int(0);
    if (rat_mod1(m - qbeta) != 0) return Int(0);  // m not in Q(beta) + Z

    // lambda = beta + v, scaled by den: w = den*beta + den*v runs over a coset
    // of den * Z^n and (w, w) = 2 m den^2.
    std::vector<i64> step(n, to_i64_scalar(den, "coset denominator"));
    std::vector<i64> off(n);
    for (int i = 0; i < n; ++i) {
        Rat c = Rat(den) * beta[i];
        off[i] = to_i64_scalar(mod_floor(c.get_num(), den), "coset offset");
    }
    Rat target_q = Rat(2) * m * den * den;
    if (target_q.get_den() != 1) return Int(0);
    const i64 target = to_i64_scalar(target_q.get_num(), "coset target");
    enumcore::Core core(n, enumcore::to_i64(l.gram()), target);
    enumcore::Options opt;
    opt.step = step;
    opt.offset = off;
    opt.node_budget = node_budget;
    return core.count_window(opt, target - 1, target);
}

namespace {

// Shared slice machinery: lambda with Q(lambda) = m decomposes along
// s = (lambda, omega); each slice is a shifted shell of the positive
// definite sublattice omega-perp.
struct SliceContext {
    int n = 0;
    Int n_omega;          // N = -Q(omega)
    Int pairing_content;  // image of x -> (x, omega) is content * Z
    std::vector<Int> unit_solution;  // x with (x, omega) = content
    IMat wbasis;          // saturated basis of omega-perp
    IMat a_p;             // induced Gram on omega-perp
    QMat a_p_inv;
};

SliceContext make_slice_context(const IntegralLattice& k, const LatticeVector& omega) {
    if (static_cast<int>(omega.size()) != k.rank())
        throw validation_error("majorant: omega length mismatch");
    if (!k.is_even()) throw validation_error("majorant: lattice must be even");
    if (!k.is_lorentzian()) throw validation_error("majorant: lattice is not Lorentzian");
    SliceContext ctx;
    ctx.n = k.rank();
    Int qo = k.quad(omega);
    if (qo >= 0) throw validation_error("majorant: omega must have negative norm");
    ctx.n_omega = -qo;
    IMat pairing_row(1, ctx.n);
    Int content(0);
    for (int j = 0; j < ctx.n; ++j) {
        Int acc;
        for (int i = 0; i < ctx.n; ++i) acc += omega[i] * k.gram().at(i, j);
        pairing_row.at(0, j) = acc;
        content = gcd(content, acc);
    }
    ctx.pairing_content = content;
    if (!solve_integer(pairing_row, {content}, ctx.unit_solution))
        throw validation_error("majorant: internal pairing solve failed");
    ctx.wbasis = kernel_basis(pairing_row);
    ctx.a_p = mul(mul(ctx.wbasis.transposed(), k.gram()), ctx.wbasis);
    if (ctx.a_p.rows() > 0) ctx.a_p_inv = inverse(to_rational(ctx.a_p));
    return ctx;
}

// Enumerate the slice (lambda, omega) = s; fn(y) is called with quotient
// coordinates of each solution, or, when collect is false, only counted.
template <class Fn>
Int slice_shell(const SliceContext& ctx, const IntegralLattice& k, const Int& s, const Int& m,
                std::uint64_t node_budget, bool collect, std::vector<Int>& x0_out, Fn&& fn) {
    const int n = ctx.n;
    const int np = ctx.wbasis.cols();
    Int ratio = s / ctx.pairing_content;
    std::vector<Int> x0(n);
    for (int i = 0; i < n; ++i) x0[i] = ratio * ctx.unit_solution[i];
    x0_out = x0;
    Int base = k.quad(x0);
    if (np == 0) return Int(base == m ? 1 : 0);

    // Q(x0 + W y) = m  <=>  y^T A y + 2 c^T y = 2(m - base).
    std::vector<Int> gx0(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (x0[j] != 0) gx0[i] += k.gram().at(i, j) * x0[j];
    std::vector<Int> c(np);
    for (int a = 0; a < np; ++a)
        for (int i = 0; i < n; ++i)
            if (gx0[i] != 0) c[a] += ctx.wbasis.at(i, a) * gx0[i];
    RationalVector cq(np);
    for (int i = 0; i < np; ++i) cq[i] = Rat(c[i]);
    RationalVector t = mul_q(ctx.a_p_inv, cq);  // center = -t
    Rat radius = Rat(2) * Rat(m - base);
    for (int i = 0; i < np; ++i) radius += t[i] * cq[i];
    if (radius < 0) return Int(0);

    Int dd(1);
    for (int i = 0; i < np; ++i) dd = lcm(dd, t[i].get_den());
    Rat scaled = radius * dd * dd;
    if (scaled.get_den() != 1) return Int(0);
    const i64 target = to_i64_scalar(scaled.get_num(), "slice target");
    std::vector<i64> step(np, to_i64_scalar(dd, "slice denominator"));
    std::vector<i64> off(np);
    for (int i = 0; i < np; ++i) {
        Rat ct = Rat(dd) * t[i];
        off[i] = to_i64_scalar(mod_floor(ct.get_num(), dd), "slice offset");
    }
    enumcore::Core core(np, enumcore::to_i64(ctx.a_p), target);
    enumcore::Options opt;
    opt.step = step;
    opt.offset = off;
    opt.node_budget = node_budget;
    if (!collect) return core.count_window(opt, target - 1, target);

    Int count(0);
    core.visit(opt, [&](const i64* w, i64 q, int) {
        if (q != target) return;
        std::vector<Int> y(np);
        for (int i = 0; i < np; ++i) {
            Rat yi = (Rat(Int(w[i])) - Rat(dd) * t[i]) / dd;
            y[i] = yi.get_num();  // integral by construction of the coset
        }
        fn(y);
        count += 1;
    });
    return count;
}

}  // namespace

std::vector<MajorantPoint> majorant_enumerate(const IntegralLattice& k, const LatticeVector& omega,
                                              const Int& m, const Rat& t,
                                              std::uint64_t node_budget) {
    if (m <= 0) throw validation_error("majorant: m must be positive");
    SliceContext ctx = make_slice_context(k, omega);
    std::vector<MajorantPoint> out;
    if (t < Rat(m)) return out;
    // (lambda, omega)^2 <= 4 N (T - m); s runs over multiples of the content.
    Rat s2max = Rat(4) * ctx.n_omega * (t - m);
    Int smax = isqrt(rat_floor(s2max));
    for (Int s = -floor_div(smax, ctx.pairing_content) * ctx.pairing_content; s <= smax;
         s += ctx.pairing_content) {
        Rat q_perp = Rat(m) + make_rat(s * s, 4 * ctx.n_omega);
        if (q_perp > t) continue;
        std::vector<Int> x0;
        slice_shell(ctx, k, s, m, node_budget, true, x0, [&](const std::vector<Int>& y) {
            LatticeVector lambda = x0;
            for (int i = 0; i < ctx.n; ++i)
                for (int j = 0; j < ctx.wbasis.cols(); ++j)
                    lambda[i] += ctx.wbasis.at(i, j) * y[j];
            out.push_back({std::move(lambda), q_perp});
        });
    }
    std::sort(out.begin(), out.end(),
              [](const MajorantPoint& a, const MajorantPoint& b) { return a.lambda < b.lambda; });
    return out;
}

std::vector<MajorantSlice> majorant_slice_counts(const IntegralLattice& k,
                                                 const LatticeVector& omega, const Int& m,
                                                 const Rat& t, std::uint64_t node_budget) {
    if (m <= 0) throw validation_error("majorant: m must be positive");
    SliceContext ctx = make_slice_context(k, omega);
    std::vector<MajorantSlice> out;
    if (t < Rat(m)) return out;
    Rat s2max = Rat(4) * ctx.n_omega * (t - m);
    Int smax = isqrt(rat_floor(s2max));
    for (Int a = 0; a <= smax; a += ctx.pairing_content) {
        Rat q_perp = Rat(m) + make_rat(a * a, 4 * ctx.n_omega);
        if (q_perp > t) continue;
        for (int sign = 0; sign < (a == 0 ? 1 : 2); ++sign) {
            Int s = sign == 0 ? a : -a;
            std::vector<Int> x0;
            Int cnt = slice_shell(ctx, k, s, m, node_budget, false, x0,
                                  [](const std::vector<Int>&) {});
            if (cnt != 0) out.push_back({s, cnt, q_perp});
        }
    }
    return out;
}

Int QuadricBinReport::total() const {
    Int t;
    for (const Int& b : bins) t += b;
    return t;
}

QuadricBinReport quadric_bin_counts(const IntegralLattice& k, const LatticeVector& omega,
                                    const Int& m, long n_max, std::uint64_t node_budget) {
    if (n_max < 1) throw validation_error("quadric_bin_counts: n_max must be positive");
    std::vector<MajorantSlice> slices =
        majorant_slice_counts(k, omega, m, Rat(Int(n_max + 1)), node_budget);
    QuadricBinReport rep;
    rep.m = m;
    rep.omega = omega;
    rep.n_omega = -k.quad(omega);
    rep.first_bin = to_long(m);  // Q_perp >= m on the slice Q(lambda) = m
    long bins = n_max - rep.first_bin + 1;
    rep.bins.assign(bins > 0 ? bins : 0, Int(0));
    for (const MajorantSlice& s : slices) {
        long bin = to_long(rat_floor(s.q_perp));
        if (bin > n_max) continue;  // Q_perp = n_max + 1 exactly
        rep.bins[bin - rep.first_bin] += s.count;
    }
    return rep;
}

}  // namespace specdiv
