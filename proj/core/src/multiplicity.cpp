#include "specdiv/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace specdiv {

Rat type_ii_multiplicity(const IntegralLattice& d, int b, const Int& m,
                         std::uint64_t node_budget) {
    if (b < 3) throw validation_error("type_ii_multiplicity: b must be at least 3");
    if (d.rank() != b - 2)
        throw validation_error("type_ii_multiplicity: rank(D) must equal b - 2");
    if (m < 1) throw validation_error("type_ii_multiplicity: m must be positive");
    RationalVector zero(d.rank(), Rat(0));
    Int count = coset_representation_count(d, zero, Rat(m), node_budget);
    return make_rat(Int(2) * m * count, Int(b - 2));
}

std::vector<std::pair<double, double>> MultiplicitySeries::series() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(entries.size());
    for (const MultiplicityEntry& e : entries) out.emplace_back(to_double(e.m), e.value);
    return out;
}

MultiplicitySeries type_ii_series(const IntegralLattice& d, int b, const Int& m_max,
                                  std::uint64_t node_budget) {
    if (b < 3) throw validation_error("type_ii_series: b must be at least 3");
    if (d.rank() != b - 2) throw validation_error("type_ii_series: rank(D) must equal b - 2");
    ThetaTable theta = theta_series(d, Rat(m_max), node_budget);
    size_t zero_class = theta.group().index_of(
        std::vector<Int>(theta.group().invariant_factors().size(), Int(0)));
    MultiplicitySeries s;
    s.kind = MultiplicityKind::type_ii;
    s.b = b;
    const double factor = 2.0 / (b - 2);
    for (Int m = 1; m <= m_max; ++m) {
        Int c = theta.coefficient(zero_class, Rat(m));
        s.entries.push_back({m, factor * to_double(m) * to_double(c), 0.0});
    }
    return s;
}

PhiResult phi_k_m(const IntegralLattice& k, const LatticeVector& omega, int b, const Int& m,
                  const Rat& truncation, std::uint64_t node_budget) {
    if (b < 3) throw validation_error("phi_k_m: b must be at least 3");
    Signature sig = k.signature();
    if (sig.plus != b - 1 || sig.minus != 1)
        throw validation_error("phi_k_m: lattice signature must be (b-1, 1)");
    if (m < 1) throw validation_error("phi_k_m: m must be positive");
    if (truncation < Rat(m)) throw validation_error("phi_k_m: truncation below m");

    std::vector<MajorantSlice> slices = majorant_slice_counts(k, omega, m, truncation, node_budget);
    PhiResult res;
    if (slices.empty()) {
        res.empty_slice = true;
        return res;
    }

    const double a = (b - 1) / 2.0;
    const double c = 1.0 + b / 2.0;
    const double md = to_double(m);
    const double prefactor =
        2.0 * gamma_lanczos(a) * std::pow(4.0 * M_PI * md, b / 2.0) / (1.0 + b / 2.0);

    // Sort by Q_perp so dyadic partial sums are prefixes.
    std::sort(slices.begin(), slices.end(), [](const MajorantSlice& x, const MajorantSlice& y) {
        if (x.q_perp != y.q_perp) return x.q_perp < y.q_perp;
        return x.s < y.s;
    });

    std::map<Rat, double> fcache;
    double sum = 0;
    std::vector<std::pair<double, double>> prefix;  // (q_perp, partial sum)
    for (const MajorantSlice& sl : slices) {
        double f;
        auto it = fcache.find(sl.q_perp);
        if (it != fcache.end()) {
            f = it->second;
        } else {
            double z = sl.q_perp == Rat(m) ? 1.0 : md / to_double(sl.q_perp);
            f = gauss_hypergeometric(a, 1.0, c, z, 1e-12).value;
            fcache.emplace(sl.q_perp, f);
        }
        double qp = to_double(sl.q_perp);
        sum += to_double(sl.count) * f / std::pow(4.0 * M_PI * qp, a);
        prefix.emplace_back(qp, sum);
        res.point_count += sl.count;
    }
    res.value = prefactor * sum;

    // Tail constant from the dyadic increments value(4T') - value(T')
    // ~ (C/2) T'^{-1/2}; doubled once more as a safety factor.
    auto partial_at = [&](double tcut) {
        double best = 0;
        for (const auto& [qp, s] : prefix)
            if (qp <= tcut) best = s;
            else break;
        return best;
    };
    const double tmax = to_double(truncation);
    double cemp = 0;
    for (double tj = md; 4.0 * tj <= tmax; tj *= 2.0) {
        double inc = partial_at(4.0 * tj) - partial_at(tj);
        cemp = std::max(cemp, 2.0 * std::sqrt(tj) * inc * prefactor);
    }
    if (cemp > 0)
        res.tail_bound = 2.0 * cemp / std::sqrt(tmax);
    else
        res.tail_bound = res.value * std::sqrt(md / tmax);
    return res;
}

PhiResult type_iii_multiplicity(const IntegralLattice& k, const LatticeVector& omega, int b,
                                const Int& m, const Rat& truncation, std::uint64_t node_budget) {
    PhiResult phi = phi_k_m(k, omega, b, m, truncation, node_budget);
    Int n_omega = -k.quad(omega);
    double scale = std::sqrt(to_double(n_omega)) / (8.0 * std::sqrt(2.0) * M_PI);
    phi.value *= scale;
    phi.tail_bound *= scale;
    return phi;
}

MultiplicitySeries type_iii_series(const IntegralLattice& k, const LatticeVector& omega, int b,
                                   const Int& m_max, long t_factor,
                                   std::uint64_t node_budget) {
    if (t_factor < 1) throw validation_error("type_iii_series: truncation factor must be >= 1");
    MultiplicitySeries s;
    s.kind = MultiplicityKind::type_iii;
    s.b = b;
    for (Int m = 1; m <= m_max; ++m) {
        PhiResult r = type_iii_multiplicity(k, omega, b, m, Rat(m * t_factor), node_budget);
        s.entries.push_back({m, r.value, r.tail_bound});
    }
    return s;
}

ExponentReport exponent_report(const MultiplicitySeries& series, const Int& m_max) {
    std::vector<std::pair<double, double>> pts;
    double cap = to_double(m_max);
    for (const MultiplicityEntry& e : series.entries)
        if (to_double(e.m) <= cap) pts.emplace_back(to_double(e.m), e.value);
    ExponentReport rep;
    rep.target = series.kind == MultiplicityKind::type_ii ? series.b / 2.0 - 1.0
                                                          : (series.b - 1) / 2.0;
    rep.fit = growth_fit(pts, rep.target);
    return rep;
}

}  // namespace specdiv
