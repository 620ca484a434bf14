#include "specdiv/theta.hpp"

#include "specdiv/enum_core.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace specdiv {

namespace {

using enumcore::i64;

struct PartialTheta {
    std::vector<int> coords;  // original coordinate indices, ascending
    IntegralLattice lattice;
    DiscriminantGroup group;
    Int scale;  // N with N * gram^{-1} integral
    std::vector<Rat> offsets;
    std::vector<std::vector<long long>> counts;
};

std::vector<std::vector<int>> orthogonal_components(const IMat& g) {
    const int n = g.rows();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.at(i, j) != 0) parent[find(i)] = find(j);
    std::vector<std::vector<int>> comps;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[slot[r]].push_back(i);
    }
    return comps;
}

IntegralLattice principal_sublattice(const IMat& g, const std::vector<int>& coords) {
    IMat m(static_cast<int>(coords.size()), static_cast<int>(coords.size()));
    for (size_t i = 0; i < coords.size(); ++i)
        for (size_t j = 0; j < coords.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = g.at(coords[i], coords[j]);
    return IntegralLattice(m);
}

void check_table_budget(const DiscriminantGroup& g, const Rat& truncation) {
    double classes = to_double(g.order());
    double len = to_double(truncation) + 2.0;
    if (classes > 2.0e6 || classes * len > 8.0e7)
        throw budget_error("theta_series: table size exceeds budget");
}

std::vector<std::vector<long long>> allocate_counts(const DiscriminantGroup& g,
                                                    const std::vector<Rat>& offsets,
                                                    const Rat& truncation) {
    std::vector<std::vector<long long>> counts(g.size());
    for (size_t c = 0; c < g.size(); ++c) {
        Rat span = truncation - offsets[c];
        long len = span < 0 ? 0 : to_long(rat_floor(span)) + 1;
        counts[c].assign(static_cast<size_t>(len), 0);
    }
    return counts;
}

PartialTheta direct_theta(const IMat& full_gram, const std::vector<int>& coords,
                          const Rat& truncation, std::uint64_t node_budget) {
    PartialTheta pt;
    pt.coords = coords;
    pt.lattice = principal_sublattice(full_gram, coords);
    pt.group = discriminant_group(pt.lattice);
    check_table_budget(pt.group, truncation);
    const int n = pt.lattice.rank();

    QMat ginv = pt.lattice.dual_basis();
    Int nden(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) nden = lcm(nden, ginv.at(i, j).get_den());
    pt.scale = nden;
    IMat s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rat e = Rat(nden) * ginv.at(i, j);
            s.at(i, j) = e.get_num();
        }

    pt.offsets.resize(pt.group.size());
    for (size_t c = 0; c < pt.group.size(); ++c) pt.offsets[c] = pt.group.qvalue(c);
    pt.counts = allocate_counts(pt.group, pt.offsets, truncation);

    Rat bound_q = Rat(2) * nden * truncation;
    const i64 bound = to_long(rat_floor(bound_q));
    const i64 two_n = 2 * to_long(nden);

    enumcore::Core core(n, enumcore::to_i64(s), bound);

    const size_t nclasses = pt.group.size();
    const size_t kf = pt.group.invariant_factors().size();
    std::vector<i64> dfac(kf), stride(kf), urows(kf * n);
    {
        i64 st = 1;
        for (size_t i = 0; i < kf; ++i) {
            dfac[i] = to_long(pt.group.invariant_factors()[i]);
            stride[i] = st;
            st *= dfac[i];
        }
        for (size_t i = 0; i < kf; ++i)
            for (int j = 0; j < n; ++j)
                urows[i * n + j] = to_long(pt.group.smith_rows().at(static_cast<int>(i), j));
    }
    std::vector<size_t> neg(nclasses);
    std::vector<i64> off_scaled(nclasses);
    for (size_t c = 0; c < nclasses; ++c) {
        neg[c] = pt.group.negate(c);
        Rat os = pt.offsets[c] * 2 * nden;
        off_scaled[c] = to_long(os.get_num());  // integral: denominators divide 2N
    }

    auto run_range = [&](i64 lo, i64 hi, std::vector<std::vector<long long>>& acc) {
        enumcore::Options opt;
        opt.fold_signs = true;
        opt.node_budget = node_budget;
        opt.outer_lo = lo;
        opt.outer_hi = hi;
        if (kf == 0) {
            auto& row = acc[0];
            core.visit(opt, [&](const i64*, i64 q, int weight) {
                row[static_cast<size_t>(q / two_n)] += weight;
            });
        } else {
            core.visit(opt, [&](const i64* y, i64 q, int weight) {
                size_t idx = 0;
                for (size_t i = 0; i < kf; ++i) {
                    i64 a = 0;
                    for (int j = 0; j < n; ++j) a += urows[i * n + j] * y[j];
                    a %= dfac[i];
                    if (a < 0) a += dfac[i];
                    idx += static_cast<size_t>(a) * static_cast<size_t>(stride[i]);
                }
                size_t t = static_cast<size_t>((q - off_scaled[idx]) / two_n);
                acc[idx][t] += 1;
                if (weight == 2) acc[neg[idx]][t] += 1;
            });
        }
    };

    auto [olo, ohi] = core.outer_range();
    if (olo < 0) olo = 0;  // sign folding clamps the outermost coordinate
    const int threads = max_threads();
    if (threads > 1 && ohi - olo >= 4 * threads && n > 1) {
        std::vector<std::vector<std::vector<long long>>> locals(
            threads, allocate_counts(pt.group, pt.offsets, truncation));
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(threads);
        i64 span = ohi - olo + 1;
        for (int t = 0; t < threads; ++t) {
            i64 a = olo + span * t / threads;
            i64 b = olo + span * (t + 1) / threads - 1;
            pool.emplace_back([&, t, a, b] {
                try {
                    run_range(a, b, locals[t]);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errs)
            if (e) std::rethrow_exception(e);
        for (int t = 0; t < threads; ++t)
            for (size_t c = 0; c < nclasses; ++c)
                for (size_t i = 0; i < pt.counts[c].size(); ++i) pt.counts[c][i] += locals[t][c][i];
    } else {
        run_range(olo, ohi, pt.counts);
    }
    return pt;
}

// Integral pairing vector gram * representative of a coset.
std::vector<Int> class_pairings(const PartialTheta& pt, size_t coset) {
    RationalVector rep = pt.group.representative(coset);
    const int n = pt.lattice.rank();
    std::vector<Int> y(n);
    for (int i = 0; i < n; ++i) {
        Rat acc;
        for (int j = 0; j < n; ++j)
            if (rep[j] != 0) acc += Rat(pt.lattice.gram().at(i, j)) * rep[j];
        y[i] = acc.get_num();  // integral since rep is in the dual
    }
    return y;
}

// Exact direct-sum identity: c(A+B, (a,b), m) = sum_{m1+m2=m} c_A(a,m1) c_B(b,m2).
PartialTheta convolve(const IMat& full_gram, const PartialTheta& a, const PartialTheta& b,
                      const Rat& truncation) {
    PartialTheta out;
    out.coords.resize(a.coords.size() + b.coords.size());
    std::merge(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end(),
               out.coords.begin());
    out.lattice = principal_sublattice(full_gram, out.coords);
    out.group = discriminant_group(out.lattice);
    check_table_budget(out.group, truncation);
    out.scale = lcm(a.scale, b.scale);
    out.offsets.resize(out.group.size());
    for (size_t c = 0; c < out.group.size(); ++c) out.offsets[c] = out.group.qvalue(c);
    out.counts = allocate_counts(out.group, out.offsets, truncation);

    const int n = out.lattice.rank();
    std::vector<int> pos_a(a.coords.size()), pos_b(b.coords.size());
    for (size_t i = 0; i < a.coords.size(); ++i)
        pos_a[i] = static_cast<int>(std::lower_bound(out.coords.begin(), out.coords.end(),
                                                     a.coords[i]) -
                                    out.coords.begin());
    for (size_t i = 0; i < b.coords.size(); ++i)
        pos_b[i] = static_cast<int>(std::lower_bound(out.coords.begin(), out.coords.end(),
                                                     b.coords[i]) -
                                    out.coords.begin());

    for (size_t ca = 0; ca < a.group.size(); ++ca) {
        std::vector<Int> ya = class_pairings(a, ca);
        // sparse view of the a-row
        std::vector<std::pair<size_t, long long>> nza;
        for (size_t t = 0; t < a.counts[ca].size(); ++t)
            if (a.counts[ca][t] != 0) nza.emplace_back(t, a.counts[ca][t]);
        if (nza.empty()) continue;
        for (size_t cb = 0; cb < b.group.size(); ++cb) {
            const auto& row_b = b.counts[cb];
            if (row_b.empty()) continue;
            std::vector<Int> y(n, Int(0));
            for (size_t i = 0; i < ya.size(); ++i) y[pos_a[i]] = ya[i];
            std::vector<Int> yb = class_pairings(b, cb);
            for (size_t i = 0; i < yb.size(); ++i) y[pos_b[i]] = yb[i];
            size_t idx = out.group.class_of_pairings(y);
            Rat shift = a.offsets[ca] + b.offsets[cb] - out.offsets[idx];
            if (shift.get_den() != 1)
                throw validation_error("theta convolution: class offsets are inconsistent");
            long base = to_long(shift.get_num());  // 0 or 1
            auto& dst = out.counts[idx];
            const long cap = static_cast<long>(dst.size());
            for (const auto& [ta, va] : nza) {
                long t0 = static_cast<long>(ta) + base;
                long bmax = std::min<long>(static_cast<long>(row_b.size()), cap - t0);
                for (long tb = 0; tb < bmax; ++tb) {
                    if (row_b[tb] == 0) continue;
                    dst[t0 + tb] += va * row_b[tb];
                }
            }
        }
    }
    return out;
}

}  // namespace

ThetaTable theta_series(const IntegralLattice& d, const Rat& truncation,
                        std::uint64_t node_budget) {
    if (!d.is_positive_definite())
        throw validation_error("theta_series: lattice must be positive definite");
    if (truncation <= 0) throw validation_error("theta_series: truncation must be positive");

    std::vector<std::vector<int>> comps = orthogonal_components(d.gram());
    PartialTheta acc = direct_theta(d.gram(), comps[0], truncation, node_budget);
    for (size_t i = 1; i < comps.size(); ++i) {
        PartialTheta next = direct_theta(d.gram(), comps[i], truncation, node_budget);
        acc = convolve(d.gram(), acc, next, truncation);
    }
    ThetaTable table;
    table.lattice_ = d;
    table.group_ = std::move(acc.group);
    table.truncation_ = truncation;
    table.offsets_ = std::move(acc.offsets);
    table.counts_ = std::move(acc.counts);
    return table;
}

Int ThetaTable::coefficient(size_t coset, const Rat& m) const {
    if (m > truncation_) throw validation_error("theta coefficient beyond truncation");
    Rat diff = m - offsets_[coset];
    if (diff < 0 || diff.get_den() != 1) return Int(0);
    size_t t = static_cast<size_t>(to_long(diff.get_num()));
    if (t >= counts_[coset].size()) return Int(0);
    return Int(static_cast<long>(counts_[coset][t]));
}

std::vector<std::pair<double, double>> ThetaTable::coset_series(size_t coset) const {
    std::vector<std::pair<double, double>> out;
    out.reserve(counts_[coset].size());
    double off = to_double(offsets_[coset]);
    for (size_t t = 0; t < counts_[coset].size(); ++t)
        out.emplace_back(off + static_cast<double>(t), static_cast<double>(counts_[coset][t]));
    return out;
}

std::vector<ThetaTable::Entry> ThetaTable::entries() const {
    std::vector<Entry> out;
    for (size_t c = 0; c < counts_.size(); ++c)
        for (size_t t = 0; t < counts_[c].size(); ++t)
            out.push_back({c, offsets_[c] + Rat(static_cast<long>(t)),
                           Int(static_cast<long>(counts_[c][t]))});
    return out;
}

LiftedCoefficientTable lifted_coefficients(const IntegralLattice& l, const LatticeVector& j1,
                                           const LatticeVector& j2, const Rat& truncation,
                                           std::uint64_t node_budget) {
    IsotropicQuotient q = quotient_by_isotropic_plane(l, j1, j2);
    LiftedCoefficientTable table;
    table.ambient_ = l;
    table.group_ = discriminant_group(l);
    table.base_ = theta_series(q.lattice, truncation, node_budget);
    table.lift_class_.assign(table.group_.size(), std::nullopt);

    const int n = l.rank();
    IMat pairing(2, n);
    for (int j = 0; j < n; ++j) {
        Int a1, a2;
        for (int i = 0; i < n; ++i) {
            a1 += j1[i] * l.gram().at(i, j);
            a2 += j2[i] * l.gram().at(i, j);
        }
        pairing.at(0, j) = a1;
        pairing.at(1, j) = a2;
    }
    for (size_t c = 0; c < table.group_.size(); ++c) {
        RationalVector beta = table.group_.representative(c);
        // Seek v in L with (beta + v, j_a) = 0; no solution means no lift.
        std::vector<Int> rhs(2);
        for (int a = 0; a < 2; ++a) {
            Rat acc;
            const LatticeVector& ja = a == 0 ? j1 : j2;
            for (int i = 0; i < n; ++i) {
                Rat row;
                for (int jj = 0; jj < n; ++jj) row += Rat(l.gram().at(i, jj)) * beta[jj];
                if (ja[i] != 0) acc += Rat(ja[i]) * row;
            }
            rhs[a] = -acc.get_num();
        }
        std::vector<Int> v;
        if (!solve_integer(pairing, rhs, v)) continue;
        RationalVector mu(n);
        for (int i = 0; i < n; ++i) mu[i] = beta[i] + Rat(v[i]);
        // Image in D∨/D via pairings with the lifted quotient basis.
        std::vector<Int> yd(q.lifts.cols());
        for (int a = 0; a < q.lifts.cols(); ++a) {
            Rat acc;
            for (int i = 0; i < n; ++i) {
                if (q.lifts.at(i, a) == 0) continue;
                Rat row;
                for (int jj = 0; jj < n; ++jj) row += Rat(l.gram().at(i, jj)) * mu[jj];
                acc += Rat(q.lifts.at(i, a)) * row;
            }
            yd[a] = acc.get_num();
        }
        size_t dclass = table.base_.group().class_of_pairings(yd);
        if (table.group_.qvalue(c) != table.base_.group().qvalue(dclass))
            throw validation_error("lifted_coefficients: coset map broke the quadratic form");
        table.lift_class_[c] = dclass;
    }
    return table;
}

Int LiftedCoefficientTable::coefficient(size_t coset, const Rat& m) const {
    if (!lift_class_[coset]) return Int(0);
    return base_.coefficient(*lift_class_[coset], m);
}

std::vector<std::pair<double, double>> LiftedCoefficientTable::coset_series(size_t coset) const {
    if (!lift_class_[coset]) return {};
    return base_.coset_series(*lift_class_[coset]);
}

DerivedSeries::DerivedSeries(Rat truncation, std::vector<Rat> offsets,
                             std::vector<std::vector<Rat>> raw)
    : truncation_(std::move(truncation)), offsets_(std::move(offsets)), values_(std::move(raw)) {
    for (size_t c = 0; c < values_.size(); ++c)
        for (size_t t = 0; t < values_[c].size(); ++t)
            values_[c][t] *= offsets_[c] + Rat(static_cast<long>(t));
}

DerivedSeries q_derivative(const ThetaTable& table) {
    std::vector<std::vector<Rat>> vals(table.coset_count());
    std::vector<Rat> offs(table.coset_count());
    for (size_t c = 0; c < table.coset_count(); ++c) {
        offs[c] = table.offset(c);
        const auto& row = table.counts(c);
        vals[c].resize(row.size());
        for (size_t t = 0; t < row.size(); ++t) vals[c][t] = Rat(static_cast<long>(row[t]));
    }
    return DerivedSeries(table.truncation(), std::move(offs), std::move(vals));
}

DerivedSeries q_derivative(const LiftedCoefficientTable& table) {
    std::vector<std::vector<Rat>> vals(table.coset_count());
    std::vector<Rat> offs(table.coset_count());
    for (size_t c = 0; c < table.coset_count(); ++c) {
        offs[c] = table.group().qvalue(c);
        if (!table.has_lift(c)) continue;
        const auto& row = table.base().counts(*table.lift_class(c));
        vals[c].resize(row.size());
        for (size_t t = 0; t < row.size(); ++t) vals[c][t] = Rat(static_cast<long>(row[t]));
    }
    return DerivedSeries(table.truncation(), std::move(offs), std::move(vals));
}

Rat DerivedSeries::coefficient(size_t coset, const Rat& m) const {
    if (m > truncation_) throw validation_error("derived coefficient beyond truncation");
    Rat diff = m - offsets_[coset];
    if (diff < 0 || diff.get_den() != 1) return Rat(0);
    size_t t = static_cast<size_t>(to_long(diff.get_num()));
    if (t >= values_[coset].size()) return Rat(0);
    return values_[coset][t];
}

std::vector<std::pair<double, double>> DerivedSeries::coset_series(size_t coset) const {
    std::vector<std::pair<double, double>> out;
    double off = to_double(offsets_[coset]);
    for (size_t t = 0; t < values_[coset].size(); ++t)
        out.emplace_back(off + static_cast<double>(t), to_double(values_[coset][t]));
    return out;
}

std::vector<DerivedSeries::Entry> DerivedSeries::entries() const {
    std::vector<Entry> out;
    for (size_t c = 0; c < values_.size(); ++c)
        for (size_t t = 0; t < values_[c].size(); ++t)
            out.push_back({c, offsets_[c] + Rat(static_cast<long>(t)), values_[c][t]});
    return out;
}

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& series,
                     double expected_exponent, int min_blocks) {
    (void)expected_exponent;  // reported by callers next to the fit
    struct Block {
        double best_m = 0;
        double best_v = -1;
    };
    std::vector<Block> blocks;
    for (const auto& [m, v] : series) {
        if (m < 1.0) continue;
        int k = static_cast<int>(std::floor(std::log2(m)));
        if (k >= static_cast<int>(blocks.size())) blocks.resize(k + 1);
        // block maximum; ties resolved toward the larger abscissa
        if (v > blocks[k].best_v || (v == blocks[k].best_v && m > blocks[k].best_m)) {
            blocks[k].best_v = v;
            blocks[k].best_m = m;
        }
    }
    std::vector<std::pair<double, double>> pts;
    for (const Block& b : blocks)
        if (b.best_v > 0) pts.emplace_back(std::log(b.best_m), std::log(b.best_v));
    if (static_cast<int>(pts.size()) < min_blocks)
        throw validation_error("growth_fit: insufficient data (need 6 dyadic blocks)");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    double denom = n * sxx - sx * sx;
    GrowthFit fit;
    fit.slope = denom == 0 ? 0.0 : (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.slope * sx) / n;
    double rss = 0;
    for (const auto& [x, y] : pts) {
        double e = y - (fit.slope * x + intercept);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace specdiv
