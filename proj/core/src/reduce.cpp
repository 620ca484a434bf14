#include "specdiv/reduce.hpp"

#include "specdiv/enum_core.hpp"

#include <algorithm>
#include <cmath>

namespace specdiv {

namespace {

struct GramSchmidt {
    std::vector<Rat> bstar;            // ||b_i*||^2 in bilinear scale
    std::vector<std::vector<Rat>> mu;  // mu[i][j], j < i
};

GramSchmidt gram_schmidt(const IMat& g) {
    const int n = g.rows();
    GramSchmidt gs;
    gs.bstar.assign(n, Rat(0));
    gs.mu.assign(n, std::vector<Rat>(n, Rat(0)));
    // c[i][j] = (b_i, b_j*) computed from the Gram matrix alone.
    std::vector<std::vector<Rat>> c(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Rat v = Rat(g.at(i, j));
            for (int k = 0; k < j; ++k) v -= gs.mu[j][k] * c[i][k];
            c[i][j] = v;
            if (j < i) gs.mu[i][j] = v / gs.bstar[j];
        }
        gs.bstar[i] = c[i][i];
        if (gs.bstar[i] <= 0)
            throw validation_error("lll: form is not positive definite");
    }
    return gs;
}

Rat rat_round(const Rat& q) { return Rat(rat_floor(q + Rat(1, 2))); }

}  // namespace

LllResult lll_reduce(const IntegralLattice& l, const Rat& delta) {
    if (delta <= Rat(1, 4) || delta >= 1)
        throw validation_error("lll: delta must lie in (1/4, 1)");
    if (!l.is_positive_definite())
        throw validation_error("lll: lattice must be positive definite");
    const int n = l.rank();
    IMat g = l.gram();
    IMat t = IMat::identity(n);

    auto translate = [&](int dst, int src, const Int& q) {
        // b_dst -= q * b_src
        for (int j = 0; j < n; ++j) g.at(dst, j) -= q * g.at(src, j);
        for (int i = 0; i < n; ++i) g.at(i, dst) -= q * g.at(i, src);
        for (int i = 0; i < n; ++i) t.at(i, dst) -= q * t.at(i, src);
    };
    auto swap_basis = [&](int a, int b) {
        for (int j = 0; j < n; ++j) std::swap(g.at(a, j), g.at(b, j));
        for (int i = 0; i < n; ++i) std::swap(g.at(i, a), g.at(i, b));
        for (int i = 0; i < n; ++i) std::swap(t.at(i, a), t.at(i, b));
    };

    int k = 1;
    while (k < n) {
        GramSchmidt gs = gram_schmidt(g);
        for (int j = k - 1; j >= 0; --j) {
            if (abs(gs.mu[k][j]) > Rat(1, 2)) {
                Rat q = rat_round(gs.mu[k][j]);
                translate(k, j, q.get_num());
                gs = gram_schmidt(g);
            }
        }
        if (gs.bstar[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.bstar[k - 1]) {
            ++k;
        } else {
            swap_basis(k, k - 1);
            k = std::max(k - 1, 1);
        }
    }
    return LllResult{IntegralLattice(g), t};
}

MinimaProfile successive_minima(const IntegralLattice& l, std::uint64_t node_budget) {
    if (l.rank() > 10) throw budget_error("successive_minima: rank exceeds exact budget (10)");
    LllResult red = lll_reduce(l);
    const int n = l.rank();
    Int bound(0);
    for (int i = 0; i < n; ++i) bound = std::max(bound, red.lattice.gram().at(i, i));

    // All vectors with (x,x) <= max_i (b_i, b_i); the sorted reduced basis
    // bounds every successive minimum, so the witnesses live in this ball.
    struct Cand {
        Int q2;  // bilinear norm
        LatticeVector v;
    };
    std::vector<Cand> cands;
    enumcore::Core core(n, enumcore::to_i64(red.lattice.gram()),
                        to_long(bound));
    enumcore::Options opt;
    opt.fold_signs = true;
    opt.node_budget = node_budget;
    core.visit(opt, [&](const enumcore::i64* x, enumcore::i64 q, int) {
        if (q == 0) return;
        LatticeVector y(n, Int(0));
        for (int i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            for (int r = 0; r < n; ++r) y[r] += red.transform.at(r, i) * Int(x[i]);
        }
        // canonical sign in original coordinates
        for (int r = 0; r < n; ++r) {
            if (y[r] == 0) continue;
            if (y[r] < 0)
                for (int s = 0; s < n; ++s) y[s] = -y[s];
            break;
        }
        cands.push_back({Int(q), std::move(y)});
    });
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.q2 != b.q2) return a.q2 < b.q2;
        return a.v < b.v;
    });

    MinimaProfile prof;
    std::vector<LatticeVector> picked;
    for (const Cand& c : cands) {
        if (static_cast<int>(picked.size()) == n) break;
        // exact independence check against the picked family
        IMat m(n, static_cast<int>(picked.size()) + 1);
        for (size_t j = 0; j < picked.size(); ++j)
            for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(j)) = picked[j][i];
        for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(picked.size())) = c.v[i];
        if (row_hnf(m.transposed()).rank != static_cast<int>(picked.size()) + 1) continue;
        picked.push_back(c.v);
        prof.minima_sq.push_back(make_rat(c.q2, Int(2)));
    }
    if (static_cast<int>(picked.size()) != n)
        throw budget_error("successive_minima: enumeration failed to span the lattice");
    prof.witnesses = std::move(picked);
    Rat acc(1);
    for (const Rat& m2 : prof.minima_sq) {
        acc *= m2;
        prof.products_sq.push_back(acc);
    }
    return prof;
}

double MinimaProfile::minimum(int i) const { return std::sqrt(to_double(minima_sq.at(i))); }

double MinimaProfile::product(int i) const {
    if (i == 0) return 1.0;
    return std::sqrt(to_double(products_sq.at(i - 1)));
}

Rat minimum_q(const IntegralLattice& l, std::uint64_t node_budget) {
    LllResult red = lll_reduce(l);
    const int n = l.rank();
    Int bound = red.lattice.gram().at(0, 0);
    for (int i = 1; i < n; ++i) bound = std::min(bound, red.lattice.gram().at(i, i));
    Int best = bound;
    enumcore::Core core(n, enumcore::to_i64(red.lattice.gram()), to_long(bound));
    enumcore::Options opt;
    opt.fold_signs = true;
    opt.node_budget = node_budget;
    core.visit(opt, [&](const enumcore::i64*, enumcore::i64 q, int) {
        if (q != 0 && Int(q) < best) best = q;
    });
    return make_rat(best, Int(2));
}

EkBoundReport ek_count_bound_check(const IntegralLattice& l, const Int& x,
                                   std::uint64_t node_budget) {
    if (l.rank() > 10) throw budget_error("ek_count_bound_check: rank exceeds budget (10)");
    if (x < 1) throw validation_error("ek_count_bound_check: X must be positive");
    if (x > 1000000) throw budget_error("ek_count_bound_check: X exceeds enumeration budget");
    if (!l.is_positive_definite())
        throw validation_error("ek_count_bound_check: lattice must be positive definite");
    EkBoundReport rep;
    {
        enumcore::Core core(l.rank(), enumcore::to_i64(l.gram()), to_long(Int(2 * x)));
        enumcore::Options opt;
        opt.node_budget = node_budget;
        rep.lhs = core.count_window(opt, 0, to_long(Int(2 * x)));
    }
    MinimaProfile prof = successive_minima(l, node_budget);
    double xd = to_double(x);
    double sum = 0;
    for (int j = 0; j <= l.rank(); ++j) {
        double term = std::pow(xd, j / 2.0) / prof.product(j);
        rep.rhs_terms.push_back(term);
        sum += term;
    }
    rep.ratio = to_double(rep.lhs) / sum;
    return rep;
}

}  // namespace specdiv
