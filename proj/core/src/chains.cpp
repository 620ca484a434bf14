#include "specdiv/chains.hpp"

#include "specdiv/enum_core.hpp"

#include <algorithm>
#include <cmath>

namespace specdiv {

IMat LatticeChain::level_basis(int n) const {
    if (n == 0) return IMat::identity(base.rank());
    return levels.at(n - 1);
}

IntegralLattice LatticeChain::level_lattice(int n) const {
    IMat b = level_basis(n);
    return IntegralLattice(mul(mul(b.transposed(), base.gram()), b));
}

Int LatticeChain::level_index(int n) const {
    Int d = det(level_basis(n));
    return d < 0 ? -d : d;
}

namespace {

void require_prime(const Int& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw validation_error("chain: p must be prime");
}

Int mod_inverse(const Int& a, const Int& mod) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw validation_error("chain: functional pivot is not invertible");
    return inv;
}

}  // namespace

LatticeChain chain_from_functional(const IntegralLattice& d, const Int& p,
                                   const std::vector<Int>& phi, int depth) {
    require_prime(p);
    if (!d.is_positive_definite())
        throw validation_error("chain_from_functional: base must be positive definite");
    if (static_cast<int>(phi.size()) != d.rank())
        throw validation_error("chain_from_functional: covector length mismatch");
    if (depth < 0) throw validation_error("chain_from_functional: negative depth");
    int pivot = -1;
    for (int i = 0; i < d.rank(); ++i)
        if (mod_floor(phi[i], p) != 0) { pivot = i; break; }
    if (pivot < 0)
        throw validation_error("chain_from_functional: phi vanishes mod p");

    LatticeChain chain{d, p, {}};
    const int n = d.rank();
    Int q(1);
    for (int level = 1; level <= depth; ++level) {
        q *= p;
        Int inv = mod_inverse(phi[pivot], q);
        IMat basis(n, n);
        int col = 0;
        for (int j = 0; j < n; ++j) {
            if (j == pivot) continue;
            basis.at(j, col) = 1;
            basis.at(pivot, col) = mod_floor(-phi[j] * inv, q);
            ++col;
        }
        basis.at(pivot, col) = q;
        chain.levels.push_back(hnf_column_basis(basis));
    }
    return chain;
}

LatticeChain chain_scaled(const IntegralLattice& d, const Int& p, int c, int depth) {
    require_prime(p);
    if (c < 1) throw validation_error("chain_scaled: c must be >= 1");
    if (!d.is_positive_definite())
        throw validation_error("chain_scaled: base must be positive definite");
    LatticeChain chain{d, p, {}};
    for (int level = 1; level <= depth; ++level) {
        Int scale(1);
        for (int k = 0; k < (level + c - 1) / c; ++k) scale *= p;
        IMat basis(d.rank(), d.rank());
        for (int i = 0; i < d.rank(); ++i) basis.at(i, i) = scale;
        chain.levels.push_back(basis);
    }
    return chain;
}

const char* to_string(ChainViolationKind kind) {
    switch (kind) {
        case ChainViolationKind::containment: return "containment";
        case ChainViolationKind::p_step: return "p-step";
        case ChainViolationKind::strict_decrease: return "strict-decrease";
    }
    return "unknown";
}

std::vector<ChainViolation> verify_chain(const LatticeChain& chain) {
    std::vector<ChainViolation> out;
    const int n = chain.base.rank();
    auto contains = [&](const IMat& inner_basis, const IMat& outer_basis) {
        // every column of inner_basis integrally expressible in outer_basis
        for (int j = 0; j < inner_basis.cols(); ++j) {
            std::vector<Int> sol;
            if (!solve_integer(outer_basis, inner_basis.column(j), sol)) return false;
        }
        return true;
    };
    for (int lvl = 1; lvl <= chain.depth(); ++lvl) {
        IMat prev = chain.level_basis(lvl - 1);
        IMat cur = chain.level_basis(lvl);
        if (cur.rows() != n || cur.cols() != n || det(cur) == 0) {
            out.push_back({ChainViolationKind::containment, lvl});
            continue;
        }
        if (!contains(cur, prev)) out.push_back({ChainViolationKind::containment, lvl});
        IMat scaled(prev.rows(), prev.cols());
        for (int i = 0; i < prev.rows(); ++i)
            for (int j = 0; j < prev.cols(); ++j) scaled.at(i, j) = chain.p * prev.at(i, j);
        if (!contains(scaled, cur)) out.push_back({ChainViolationKind::p_step, lvl});
        if (!(chain.level_index(lvl) > chain.level_index(lvl - 1)))
            out.push_back({ChainViolationKind::strict_decrease, lvl});
    }
    return out;
}

MinimaGrowthReport minima_growth_report(const LatticeChain& chain, int b,
                                        std::uint64_t node_budget) {
    if (chain.depth() < 6)
        throw validation_error("minima_growth_report: chain depth must be at least 6");
    MinimaGrowthReport rep;
    rep.reference_exponent = b > 0 ? 1.0 / b : 0.0;
    std::vector<double> log_mu;
    for (int n = 1; n <= chain.depth(); ++n) {
        rep.profiles.push_back(successive_minima(chain.level_lattice(n), node_budget));
        log_mu.push_back(0.5 * std::log(to_double(rep.profiles.back().minima_sq[0])));
    }
    const int cnt = chain.depth();
    auto fit = [&](auto xform) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < cnt; ++i) {
            double x = xform(i + 1);
            sx += x;
            sy += log_mu[i];
            sxx += x * x;
            sxy += x * log_mu[i];
        }
        double denom = cnt * sxx - sx * sx;
        double slope = denom == 0 ? 0 : (cnt * sxy - sx * sy) / denom;
        double icept = (sy - slope * sx) / cnt;
        double rss = 0;
        for (int i = 0; i < cnt; ++i) {
            double e = log_mu[i] - (slope * xform(i + 1) + icept);
            rss += e * e;
        }
        return std::pair<double, double>(slope, std::sqrt(rss / cnt));
    };
    auto [pow_slope, pow_rms] = fit([](int n) { return std::log(static_cast<double>(n)); });
    auto [lin_slope, lin_rms] = fit([](int n) { return static_cast<double>(n); });
    rep.fitted_exponent = pow_slope;
    rep.diverging =
        rep.profiles.back().minima_sq[0] > rep.profiles.front().minima_sq[0];
    rep.super_polynomial = lin_slope > 0 && pow_rms > 3.0 * lin_rms + 1e-9;
    return rep;
}

SumExperimentReport summed_intersection_experiment(const LatticeChain& chain, int b,
                                                   const Int& d_class,
                                                   const std::vector<Int>& x_grid,
                                                   std::uint64_t node_budget) {
    if (d_class < 1)
        throw validation_error("summed_intersection_experiment: square class must be positive");
    if (!verify_chain(chain).empty())
        throw validation_error("summed_intersection_experiment: chain fails verification");
    SumExperimentReport rep;
    rep.budget_exponent = (b + 1) / 2.0;
    rep.x_grid = x_grid;

    // mu_1^2 per level, nondecreasing; levels beyond the cutoff cannot
    // represent any m < 2X.
    std::vector<Rat> min_q;
    for (int n = 0; n <= chain.depth(); ++n)
        min_q.push_back(minimum_q(chain.level_lattice(n), node_budget));

    for (const Int& x : x_grid) {
        if (x < 1) throw validation_error("summed_intersection_experiment: X must be positive");
        std::vector<Int> shells;
        for (Int k = isqrt(ceil_div(x, d_class)); true; ++k) {
            if (k == 0) continue;
            Int m = d_class * k * k;
            if (m < x) continue;
            if (m >= 2 * x) break;
            shells.push_back(m);
        }
        Int total;
        for (int n = 0; n <= chain.depth(); ++n) {
            if (min_q[n] > Rat(2 * x)) break;
            if (shells.empty()) break;
            IntegralLattice ln = chain.level_lattice(n);
            enumcore::Core core(ln.rank(), enumcore::to_i64(ln.gram()),
                                to_long(Int(2 * shells.back())));
            enumcore::Options opt;
            opt.node_budget = node_budget;
            for (const Int& m : shells) {
                long t = to_long(Int(2 * m));
                total += core.count_window(opt, t - 2, t);
            }
        }
        rep.sums.push_back(total);
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = 0; i < rep.x_grid.size(); ++i) {
        if (rep.sums[i] <= 0) continue;
        double lx = std::log(to_double(rep.x_grid[i]));
        double ly = std::log(to_double(rep.sums[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    double denom = cnt * sxx - sx * sx;
    rep.fitted_exponent = (cnt >= 2 && denom != 0) ? (cnt * sxy - sx * sy) / denom : 0.0;
    return rep;
}

}  // namespace specdiv
