#pragma once

#include "specdiv/matrix.hpp"
#include "specdiv/numeric.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace specdiv::enumcore {

// Low-level Fincke-Pohst walker over {x in Z^n : x^T A x <= bound} for an
// integer symmetric positive definite A. Floating Cholesky supplies interval
// bounds; every emitted point carries its exact integer value, and the final
// coordinate interval is solved exactly, so results do not depend on rounding.
//
// Coordinates may be restricted to congruence classes x_i = offset_i mod
// step_i (used for coset and shifted-lattice enumeration). With fold_signs,
// one representative per +/- pair is visited and reported with weight 2
// (weight 1 for the zero vector); folding requires trivial steps.

struct Options {
    bool fold_signs = false;
    std::vector<std::int64_t> step;    // empty means all 1
    std::vector<std::int64_t> offset;  // empty means all 0
    std::uint64_t node_budget = 1ull << 33;
    // Clamp on the outermost coordinate, for chunked/parallel sweeps.
    std::int64_t outer_lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t outer_hi = std::numeric_limits<std::int64_t>::max();
};

using i64 = std::int64_t;
using i128 = __int128;

class Core {
public:
    Core(int n, std::vector<i64> a, i64 bound) : n_(n), a_(std::move(a)), bound_(bound) {
        if (bound_ < 0) bound_ = -1;  // empty region, still well-formed
        build_cholesky();
        safety_check();
        // Kill subtrees whose floating budget is decisively negative; the
        // margin dominates accumulated rounding so exact solutions survive.
        margin_ = 1e-10 * static_cast<double>(std::max<i64>(bound_, 1)) * (n_ + 4) + 1e-9;
    }

    int dim() const { return n_; }
    i64 bound() const { return bound_; }

    /// Range of the outermost coordinate before clamping (for chunking).
    std::pair<i64, i64> outer_range() const {
        if (bound_ < 0) return {0, -1};
        double r = std::sqrt(static_cast<double>(bound_) / d_[n_ - 1]);
        return {static_cast<i64>(std::floor(-r)) - 2, static_cast<i64>(std::ceil(r)) + 2};
    }

    /// leaf(const i64* x, i64 q, int weight) for every point with q <= bound.
    template <class Leaf>
    void visit(const Options& opt, Leaf&& leaf) {
        State st(n_, opt);
        if (bound_ < 0) return;
        if (n_ == 1) {
            leaf_level(st, static_cast<double>(bound_), 0, true, leaf);
            return;
        }
        rec(st, n_ - 1, static_cast<double>(bound_), 0, true, leaf);
    }

    /// Exact number of points with lo < x^T A x <= hi (no sign folding).
    Int count_window(const Options& opt, i64 lo, i64 hi) {
        Int total;
        if (hi > bound_)
            throw validation_error("count_window: window exceeds prepared bound");
        State st(n_, opt);
        if (bound_ < 0) return total;
        count_rec(st, n_ - 1, static_cast<double>(bound_), 0, lo, hi, total);
        return total;
    }

private:
    struct State {
        std::vector<i64> x;
        std::vector<i64> lin;   // lin[i] = sum_{j>level} A[i][j] x_j
        std::vector<i64> step;
        std::vector<i64> off;
        bool fold;
        std::uint64_t nodes = 0;
        std::uint64_t budget;
        i64 outer_lo, outer_hi;

        State(int n, const Options& o)
            : x(n, 0),
              lin(n, 0),
              step(o.step.empty() ? std::vector<i64>(n, 1) : o.step),
              off(o.offset.empty() ? std::vector<i64>(n, 0) : o.offset),
              fold(o.fold_signs),
              budget(o.node_budget),
              outer_lo(o.outer_lo),
              outer_hi(o.outer_hi) {
            if (fold)
                for (i64 s : step)
                    if (s != 1) throw validation_error("enumeration: folding requires unit steps");
            for (int i = 0; i < n; ++i) {
                if (step[i] < 1) throw validation_error("enumeration: step must be positive");
                off[i] = ((off[i] % step[i]) + step[i]) % step[i];
            }
        }

        void charge(std::uint64_t k) {
            nodes += k;
            if (nodes > budget) throw budget_error("enumeration: node budget exceeded");
        }
    };

    int n_;
    std::vector<i64> a_;     // row-major symmetric
    i64 bound_;
    std::vector<double> d_;  // Cholesky pivots
    std::vector<double> mu_; // row-major, mu[i*n+j] for j > i
    double margin_ = 0;

    i64 A(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    void build_cholesky() {
        d_.assign(n_, 0.0);
        mu_.assign(static_cast<size_t>(n_) * n_, 0.0);
        std::vector<double> q(a_.begin(), a_.end());
        auto Q = [&](int i, int j) -> double& { return q[static_cast<size_t>(i) * n_ + j]; };
        for (int i = 0; i < n_; ++i) {
            if (Q(i, i) <= 0)
                throw validation_error("enumeration: form is not positive definite");
            for (int j = i + 1; j < n_; ++j) {
                double t = Q(i, j) / Q(i, i);
                for (int k = j; k < n_; ++k) Q(j, k) -= t * Q(i, k);
                mu_[static_cast<size_t>(i) * n_ + j] = t;
            }
            d_[i] = Q(i, i);
        }
    }

    void safety_check() const {
        // Everything downstream stays within __int128 as long as the linear
        // forms fit in ~2^61; estimate coordinate boxes from the Cholesky.
        const double lim = 2.3e18;
        if (static_cast<double>(bound_) > lim)
            throw budget_error("enumeration: bound exceeds 64-bit safety range");
        std::vector<double> box(n_, 0.0);
        for (int i = 0; i < n_; ++i) {
            double inv = 0;  // (A^{-1})_{ii} via Cholesky back-substitution on e_i
            std::vector<double> y(n_, 0.0);
            for (int k = i; k >= 0; --k) {
                double s = (k == i) ? 1.0 : 0.0;
                for (int j = k + 1; j <= i; ++j) s -= mu_[static_cast<size_t>(k) * n_ + j] * y[j];
                y[k] = s;
            }
            for (int k = 0; k <= i; ++k) inv += y[k] * y[k] / d_[k];
            box[i] = std::sqrt(std::max(0.0, static_cast<double>(bound_)) * inv) + 3.0;
        }
        for (int i = 0; i < n_; ++i) {
            double l = 0;
            for (int j = 0; j < n_; ++j)
                l += std::abs(static_cast<double>(A(i, j))) * box[j];
            if (l > lim) throw budget_error("enumeration: linear form exceeds 64-bit safety range");
        }
    }

    static i64 first_ge(i64 lo, i64 step, i64 off) {
        i64 r = ((lo % step) + step) % step;
        return lo + ((off - r) + step) % step;
    }

    // Exact maximal interval {x : a x^2 + 2 b x + p <= limit}; empty -> lo > hi.
    static void exact_interval(i64 a, i64 b, i64 p, i64 limit, i64& lo, i64& hi) {
        i128 disc = static_cast<i128>(b) * b - static_cast<i128>(a) * (static_cast<i128>(p) - limit);
        if (disc < 0) {
            lo = 1;
            hi = 0;
            return;
        }
        double sq = std::sqrt(static_cast<double>(disc));
        auto val = [&](i64 x) {
            return (static_cast<i128>(a) * x + 2 * static_cast<i128>(b)) * x + p;
        };
        lo = static_cast<i64>(std::ceil((-static_cast<double>(b) - sq) / a)) - 2;
        hi = static_cast<i64>(std::floor((-static_cast<double>(b) + sq) / a)) + 2;
        while (lo <= hi && val(lo) > limit) ++lo;
        while (lo - 1 <= hi && val(lo - 1) <= limit) --lo;
        while (hi >= lo && val(hi) > limit) --hi;
        while (hi + 1 >= lo && val(hi + 1) <= limit) ++hi;
    }

    template <class Leaf>
    void leaf_level(State& st, double /*t*/, i64 pval, bool tail_zero, Leaf&& leaf) {
        i64 lo, hi;
        exact_interval(A(0, 0), st.lin[0], pval, bound_, lo, hi);
        if (st.fold && tail_zero && lo < 0) lo = 0;
        if (n_ == 1) {
            lo = std::max(lo, st.outer_lo);
            hi = std::min(hi, st.outer_hi);
        }
        i64 x = first_ge(lo, st.step[0], st.off[0]);
        if (x > hi) return;
        st.charge(static_cast<std::uint64_t>((hi - x) / st.step[0] + 1));
        const i64 a = A(0, 0), b = st.lin[0];
        for (; x <= hi; x += st.step[0]) {
            i64 q = static_cast<i64>((static_cast<i128>(a) * x + 2 * static_cast<i128>(b)) * x + pval);
            st.x[0] = x;
            int weight = st.fold ? ((tail_zero && x == 0) ? 1 : 2) : 1;
            leaf(st.x.data(), q, weight);
        }
        st.x[0] = 0;
    }

    template <class Leaf>
    void rec(State& st, int k, double t, i64 pval, bool tail_zero, Leaf&& leaf) {
        double c = 0;
        for (int j = k + 1; j < n_; ++j) c += mu_[static_cast<size_t>(k) * n_ + j] * st.x[j];
        double r = std::sqrt(std::max(t, 0.0) / d_[k]);
        i64 lo = static_cast<i64>(std::ceil(-c - r)) - 2;
        i64 hi = static_cast<i64>(std::floor(-c + r)) + 2;
        if (st.fold && tail_zero && lo < 0) lo = 0;
        if (k == n_ - 1) {
            lo = std::max(lo, st.outer_lo);
            hi = std::min(hi, st.outer_hi);
        }
        i64 x = first_ge(lo, st.step[k], st.off[k]);
        if (x > hi) return;
        std::vector<i64> saved_lin(st.lin.begin(), st.lin.begin() + k);
        const i64 lk = st.lin[k];
        for (; x <= hi; x += st.step[k]) {
            st.charge(1);
            double dx = static_cast<double>(x) + c;
            double tnext = t - d_[k] * dx * dx;
            if (tnext < -margin_) continue;
            i128 pw = pval + (static_cast<i128>(A(k, k)) * x + 2 * static_cast<i128>(lk)) * x;
            if (pw > (static_cast<i128>(1) << 62) || pw < -(static_cast<i128>(1) << 62))
                throw budget_error("enumeration: partial value exceeds 64-bit safety range");
            i64 pnext = static_cast<i64>(pw);
            st.x[k] = x;
            for (int i = 0; i < k; ++i) st.lin[i] = saved_lin[i] + A(i, k) * x;
            bool tz = tail_zero && x == 0;
            if (k == 1)
                leaf_level(st, tnext, pnext, tz, leaf);
            else
                rec(st, k - 1, tnext, pnext, tz, leaf);
        }
        st.x[k] = 0;
        for (int i = 0; i < k; ++i) st.lin[i] = saved_lin[i];
    }

    void count_leaf(State& st, i64 pval, i64 lo_val, i64 hi_val, Int& total) {
        i64 lo1, hi1, lo2, hi2;
        exact_interval(A(0, 0), st.lin[0], pval, hi_val, lo1, hi1);
        if (lo1 > hi1) return;
        auto count_in = [&](i64 lo, i64 hi) -> i64 {
            if (n_ == 1) {
                lo = std::max(lo, st.outer_lo);
                hi = std::min(hi, st.outer_hi);
            }
            i64 x = first_ge(lo, st.step[0], st.off[0]);
            if (x > hi) return 0;
            return (hi - x) / st.step[0] + 1;
        };
        i64 cnt = count_in(lo1, hi1);
        exact_interval(A(0, 0), st.lin[0], pval, lo_val, lo2, hi2);
        if (lo2 <= hi2) cnt -= count_in(lo2, hi2);
        if (cnt != 0) total += static_cast<long>(cnt);
        st.charge(1);
    }

    void count_rec(State& st, int k, double t, i64 pval, i64 lo_val, i64 hi_val, Int& total) {
        if (n_ == 1 || k == 0) {
            count_leaf(st, pval, lo_val, hi_val, total);
            return;
        }
        double c = 0;
        for (int j = k + 1; j < n_; ++j) c += mu_[static_cast<size_t>(k) * n_ + j] * st.x[j];
        double r = std::sqrt(std::max(t, 0.0) / d_[k]);
        i64 lo = static_cast<i64>(std::ceil(-c - r)) - 2;
        i64 hi = static_cast<i64>(std::floor(-c + r)) + 2;
        if (k == n_ - 1) {
            lo = std::max(lo, st.outer_lo);
            hi = std::min(hi, st.outer_hi);
        }
        i64 x = first_ge(lo, st.step[k], st.off[k]);
        if (x > hi) return;
        std::vector<i64> saved_lin(st.lin.begin(), st.lin.begin() + k);
        const i64 lk = st.lin[k];
        for (; x <= hi; x += st.step[k]) {
            st.charge(1);
            double dx = static_cast<double>(x) + c;
            double tnext = t - d_[k] * dx * dx;
            if (tnext < -margin_) continue;
            i128 pw = pval + (static_cast<i128>(A(k, k)) * x + 2 * static_cast<i128>(lk)) * x;
            if (pw > (static_cast<i128>(1) << 62) || pw < -(static_cast<i128>(1) << 62))
                throw budget_error("enumeration: partial value exceeds 64-bit safety range");
            st.x[k] = x;
            for (int i = 0; i < k; ++i) st.lin[i] = saved_lin[i] + A(i, k) * x;
            count_rec(st, k - 1, tnext, static_cast<i64>(pw), lo_val, hi_val, total);
        }
        st.x[k] = 0;
        for (int i = 0; i < k; ++i) st.lin[i] = saved_lin[i];
    }
};

/// Convert an exact Gram-like matrix to the int64 core representation.
std::vector<i64> to_i64(const IMat& a);

}  // namespace specdiv::enumcore
