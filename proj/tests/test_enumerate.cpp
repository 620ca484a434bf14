#include <doctest.h>

#include "oracles.hpp"

using namespace specdiv;
using namespace specdiv::lattices;

namespace {

LatticeVector vec(std::initializer_list<long> xs) {
    LatticeVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("short_vectors basics") {
    NormSlice s = short_vectors(lattices::a1(), Int(1));
    REQUIRE(s.vectors.size() == 2);
    CHECK(s.vectors[0] == vec({-1}));
    CHECK(s.vectors[1] == vec({1}));

    NormSlice zero = short_vectors(lattices::a1(), Int(0));
    REQUIRE(zero.vectors.size() == 1);
    CHECK(zero.vectors[0] == vec({0}));

    CHECK(short_vectors(e8(), Int(1)).vectors.size() == 240);
    CHECK_THROWS_AS(short_vectors(hyperbolic_plane(), Int(1)), validation_error);
}

TEST_CASE("short_vectors agrees with the naive box scan") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 15; ++trial) {
        IntegralLattice l = oracles::random_lattice(rng, 2 + trial % 4, 6);
        for (long m : {1L, 2L, 5L, 9L}) {
            NormSlice s = short_vectors(l, Int(m));
            CHECK(s.vectors == oracles::naive_short_vectors(l, Int(m)));
        }
    }
}

TEST_CASE("short_vectors on skew ill-conditioned lattices") {
    for (const IntegralLattice& l : oracles::skew_corpus()) {
        REQUIRE(l.is_positive_definite());
        for (long m : {1L, 2L, 3L, 6L, 11L, 20L}) {
            NormSlice s = short_vectors(l, Int(m));
            CHECK(s.vectors == oracles::naive_short_vectors(l, Int(m)));
        }
    }
}

TEST_CASE("sign symmetry of norm slices") {
    std::mt19937 rng(55);
    IntegralLattice l = oracles::random_lattice(rng, 3, 6);
    for (long m = 1; m <= 12; ++m) {
        NormSlice s = short_vectors(l, Int(m));
        CHECK(s.vectors.size() % 2 == 0);
        for (const LatticeVector& v : s.vectors) {
            LatticeVector neg(v.size());
            for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
            CHECK(std::binary_search(s.vectors.begin(), s.vectors.end(), neg));
        }
    }
}

TEST_CASE("coset representation counts") {
    IntegralLattice a1 = lattices::a1();
    RationalVector half = {Rat(1, 2)};
    CHECK(coset_representation_count(a1, half, Rat(1, 4)) == 2);  // +/- x/2
    RationalVector zero = {Rat(0)};
    CHECK(coset_representation_count(a1, zero, Rat(0)) == 1);
    CHECK(coset_representation_count(a1, zero, Rat(1, 2)) == 0);  // off-grid convention
    CHECK(coset_representation_count(a1, zero, Rat(1)) == 2);
    RationalVector bad = {Rat(1, 3)};
    CHECK_THROWS_AS(coset_representation_count(a1, bad, Rat(1)), validation_error);
}

TEST_CASE("coset counts agree with a shifted box scan") {
    std::mt19937 rng(89);
    for (int trial = 0; trial < 6; ++trial) {
        IntegralLattice l = oracles::random_lattice(rng, 2 + trial % 2, 6);
        DiscriminantGroup g = discriminant_group(l);
        for (size_t c = 0; c < std::min<size_t>(g.size(), 4); ++c) {
            RationalVector beta = g.representative(c);
            for (long k = 0; k <= 3; ++k) {
                Rat m = g.qvalue(c) + k;
                CHECK(coset_representation_count(l, beta, m) ==
                      oracles::naive_coset_count(l, beta, m));
            }
        }
    }
}

TEST_CASE("coset symmetry under negation") {
    std::mt19937 rng(77);
    IntegralLattice l = oracles::random_lattice(rng, 3, 6);
    DiscriminantGroup g = discriminant_group(l);
    for (size_t c = 0; c < std::min<size_t>(g.size(), 6); ++c) {
        RationalVector beta = g.representative(c);
        RationalVector nbeta(beta.size());
        for (size_t i = 0; i < beta.size(); ++i) nbeta[i] = -beta[i];
        Rat m = g.qvalue(c) + 2;
        CHECK(coset_representation_count(l, beta, m) ==
              coset_representation_count(l, nbeta, m));
    }
}

TEST_CASE("majorant enumeration golden case") {
    // K = U + A1, omega = e - f, N = 1: Q(a,b,c) = ab + c^2,
    // Q_perp = m + (b-a)^2/4. At m = 1, T = 1 only slices with b = a
    // survive: a^2 + c^2 = 1.
    IntegralLattice k = direct_sum(hyperbolic_plane(), lattices::a1());
    LatticeVector omega = vec({1, -1, 0});
    std::vector<MajorantPoint> pts = majorant_enumerate(k, omega, Int(1), Rat(1));
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].lambda == vec({-1, -1, 0}));
    CHECK(pts[1].lambda == vec({0, 0, -1}));
    CHECK(pts[2].lambda == vec({0, 0, 1}));
    CHECK(pts[3].lambda == vec({1, 1, 0}));
    for (const MajorantPoint& p : pts) CHECK(p.q_perp == Rat(1));
}

TEST_CASE("majorant enumeration matches the naive scan") {
    IntegralLattice k1 = direct_sum(hyperbolic_plane(), lattices::a1());
    IntegralLattice k2 = from_diagonal({2, 2, -2});
    IntegralLattice k3 = from_diagonal({2, -4});
    struct Case {
        const IntegralLattice* k;
        LatticeVector omega;
    };
    std::vector<Case> cases = {{&k1, vec({1, -1, 0})},
                               {&k1, vec({1, -2, 1})},
                               {&k2, vec({0, 1, 2})},
                               {&k3, vec({0, 1})}};
    for (const Case& c : cases) {
        for (long m : {1L, 2L, 3L, 7L}) {
            for (long t : {3L, 10L, 20L}) {
                std::vector<MajorantPoint> got =
                    majorant_enumerate(*c.k, c.omega, Int(m), Rat(t));
                std::vector<oracles::NaiveMajorantPoint> want =
                    oracles::naive_majorant(*c.k, c.omega, Int(m), Rat(t));
                REQUIRE(got.size() == want.size());
                for (size_t i = 0; i < got.size(); ++i) {
                    CHECK(got[i].lambda == want[i].lambda);
                    CHECK(got[i].q_perp == want[i].q_perp);
                }
            }
        }
    }
}

TEST_CASE("majorant preconditions and monotonicity") {
    IntegralLattice k = direct_sum(hyperbolic_plane(), lattices::a1());
    CHECK_THROWS_AS(majorant_enumerate(k, vec({0, 0, 1}), Int(1), Rat(5)), validation_error);
    CHECK_THROWS_AS(majorant_enumerate(k, vec({1, 0, 0}), Int(1), Rat(5)), validation_error);
    CHECK_THROWS_AS(majorant_enumerate(e8(), LatticeVector(8, Int(1)), Int(1), Rat(5)),
                    validation_error);

    LatticeVector omega = vec({1, -1, 0});
    std::vector<MajorantPoint> small = majorant_enumerate(k, omega, Int(2), Rat(5));
    std::vector<MajorantPoint> large = majorant_enumerate(k, omega, Int(2), Rat(10));
    CHECK(large.size() >= small.size());
    for (const MajorantPoint& p : small) {
        bool found = false;
        for (const MajorantPoint& q : large)
            if (q.lambda == p.lambda) found = true;
        CHECK(found);
    }
    // slice counts agree with the vector list
    std::vector<MajorantSlice> slices = majorant_slice_counts(k, omega, Int(2), Rat(10));
    Int total;
    for (const MajorantSlice& s : slices) total += s.count;
    CHECK(total == Int(static_cast<long>(large.size())));
}

TEST_CASE("quadric bin counts golden case") {
    IntegralLattice k = direct_sum(hyperbolic_plane(), lattices::a1());
    LatticeVector omega = vec({1, -1, 0});
    QuadricBinReport rep = quadric_bin_counts(k, omega, Int(1), 5);
    REQUIRE(rep.first_bin == 1);
    REQUIRE(rep.bins.size() == 5);
    // d = b - a, Q_perp = 1 + d^2/4; counts by hand and by the naive scan
    CHECK(rep.bins[0] == 12);
    CHECK(rep.bins[1] == 8);
    CHECK(rep.bins[2] == 8);
    CHECK(rep.bins[3] == 0);
    CHECK(rep.bins[4] == 16);

    // partition identity against majorant_enumerate at T = N_max + 1
    std::vector<MajorantPoint> pts = majorant_enumerate(k, omega, Int(1), Rat(6));
    Int below;
    for (const MajorantPoint& p : pts)
        if (p.q_perp < Rat(6)) below += 1;
    CHECK(rep.total() == below);

    // binning matches the naive scan
    std::vector<oracles::NaiveMajorantPoint> naive =
        oracles::naive_majorant(k, omega, Int(1), Rat(6));
    std::vector<Int> bins(5, Int(0));
    for (const auto& p : naive) {
        long bin = to_long(rat_floor(p.q_perp));
        if (bin <= 5) bins[bin - 1] += 1;
    }
    for (size_t i = 0; i < 5; ++i) CHECK(rep.bins[i] == bins[i]);
}

TEST_CASE("quadric bins empty slice") {
    // Q = x^2 + 4y^2 - 4z^2 does not represent 2
    IntegralLattice k = from_diagonal({2, 8, -8});
    QuadricBinReport rep = quadric_bin_counts(k, vec({0, 0, 1}), Int(2), 8);
    CHECK(rep.total() == 0);
}

TEST_CASE("deterministic parallel enumeration") {
    IntegralLattice d = lattices::a1(3);
    ThetaTable seq = theta_series(d, Rat(40));
    set_max_threads(3);
    ThetaTable par = theta_series(d, Rat(40));
    set_max_threads(1);
    for (size_t c = 0; c < seq.coset_count(); ++c) CHECK(seq.counts(c) == par.counts(c));
}
