#include <doctest.h>

#include "oracles.hpp"

using namespace specdiv;
using namespace specdiv::lattices;

TEST_CASE("lll reduces the skewed plane to the identity form") {
    IntegralLattice skew(IMat(2, 2, {Int(1), Int(3), Int(3), Int(10)}));
    LllResult r = lll_reduce(skew);
    CHECK(r.lattice.gram() == IMat(2, 2, {Int(1), Int(0), Int(0), Int(1)}));
    Int dt = det(r.transform);
    CHECK((dt == 1 || dt == -1));
    CHECK(mul(mul(r.transform.transposed(), skew.gram()), r.transform) == r.lattice.gram());
}

TEST_CASE("lll leaves reduced bases alone") {
    IntegralLattice d = from_diagonal({2, 4});
    LllResult r = lll_reduce(d);
    CHECK(r.lattice.gram() == d.gram());
    CHECK(r.transform == IMat::identity(2));
}

TEST_CASE("lll preserves the determinant") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        IntegralLattice l = oracles::random_lattice(rng, 4, 6);
        IMat skewed = mul(mul(oracles::random_unimodular(rng, 4).transposed(), l.gram()),
                          oracles::random_unimodular(rng, 4));
        // rebuild a symmetric gram via T^t G T with a single transform
        IMat u = oracles::random_unimodular(rng, 4, 8);
        IMat g = mul(mul(u.transposed(), l.gram()), u);
        LllResult r = lll_reduce(IntegralLattice(g));
        CHECK(det(r.lattice.gram()) == det(l.gram()));
        (void)skewed;
    }
}

TEST_CASE("lll rejects bad inputs") {
    CHECK_THROWS_AS(lll_reduce(hyperbolic_plane()), validation_error);
    CHECK_THROWS_AS(lll_reduce(lattices::a1(), Rat(2)), validation_error);
}

TEST_CASE("successive minima on split diagonal forms") {
    MinimaProfile p = successive_minima(from_diagonal({2, 2}));
    REQUIRE(p.minima_sq.size() == 2);
    CHECK(p.minima_sq[0] == 1);
    CHECK(p.minima_sq[1] == 1);
    CHECK(p.products_sq[1] == 1);

    MinimaProfile p2 = successive_minima(from_diagonal({2, 8}));
    CHECK(p2.minima_sq[0] == 1);
    CHECK(p2.minima_sq[1] == 4);

    // scaling: k^2 * gram multiplies every mu_i^2 by k^2
    IntegralLattice base = from_diagonal({2, 6});
    IMat scaled(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) scaled.at(i, j) = 9 * base.gram().at(i, j);
    MinimaProfile ps = successive_minima(IntegralLattice(scaled));
    MinimaProfile pb = successive_minima(base);
    for (int i = 0; i < 2; ++i) CHECK(ps.minima_sq[i] == 9 * pb.minima_sq[i]);
}

TEST_CASE("successive minima are basis invariants") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        IntegralLattice l = oracles::random_lattice(rng, 3, 6);
        MinimaProfile base = successive_minima(l);
        IMat u = oracles::random_unimodular(rng, 3, 8);
        IntegralLattice moved(mul(mul(u.transposed(), l.gram()), u));
        MinimaProfile other = successive_minima(moved);
        CHECK(base.minima_sq == other.minima_sq);
        // witnesses attain their stated norms and are independent
        IMat w(3, 3);
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i) w.at(i, j) = base.witnesses[j][i];
        CHECK(det(w) != 0);
        for (int j = 0; j < 3; ++j)
            CHECK(Rat(l.bilinear(base.witnesses[j], base.witnesses[j])) ==
                  base.minima_sq[j] * 2);
    }
}

TEST_CASE("minkowski bound on the first minimum") {
    // (2 mu_1^2)^r <= gamma_r^r |det G| with the known Hermite constants
    const long hermite_pow_num[9] = {0, 1, 4, 2, 4, 8, 64, 64, 256};
    const long hermite_pow_den[9] = {1, 1, 3, 1, 1, 1, 3, 1, 1};
    std::mt19937 rng(29);
    for (int rank = 2; rank <= 5; ++rank) {
        for (int trial = 0; trial < 6; ++trial) {
            IntegralLattice l = oracles::random_lattice(rng, rank, 6);
            Rat mu1 = successive_minima(l).minima_sq[0];
            Rat lhs(1);
            for (int i = 0; i < rank; ++i) lhs *= 2 * mu1;
            Int d = l.determinant();
            if (d < 0) d = -d;
            Rat rhs = Rat(hermite_pow_num[rank], hermite_pow_den[rank]) * Rat(d);
            CHECK(lhs <= rhs);
        }
    }
}

TEST_CASE("minimum_q shortcut agrees with the full profile") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        IntegralLattice l = oracles::random_lattice(rng, 4, 6);
        CHECK(minimum_q(l) == successive_minima(l).minima_sq[0]);
    }
}

TEST_CASE("ek bound report on hand-checked cases") {
    EkBoundReport one = ek_count_bound_check(lattices::a1(), Int(25));
    CHECK(one.lhs == 10);  // +/- kx, Q = k^2 <= 25, k = 1..5

    EkBoundReport disc = ek_count_bound_check(from_diagonal({2, 2}), Int(100));
    CHECK(disc.lhs == 316);  // Gauss circle: 317 points including the origin
    CHECK(disc.ratio <= 8.0);
    CHECK(disc.rhs_terms.size() == 3);
    CHECK(disc.rhs_terms[0] == 1.0);

    EkBoundReport below = ek_count_bound_check(from_diagonal({8, 8}), Int(3));
    CHECK(below.lhs == 0);  // X below mu_1^2

    CHECK_THROWS_AS(ek_count_bound_check(lattices::a1(), Int(2000000)), budget_error);
}

TEST_CASE("ek lhs equals the summed shell counts") {
    std::mt19937 rng(61);
    IntegralLattice l = oracles::random_lattice(rng, 3, 6);
    EkBoundReport rep = ek_count_bound_check(l, Int(30));
    Int direct;
    for (long m = 1; m <= 30; ++m)
        direct += Int(static_cast<long>(short_vectors(l, Int(m)).vectors.size()));
    CHECK(rep.lhs == direct);
}

TEST_CASE("ek ratio bounded across a random corpus") {
    std::mt19937 rng(59);
    for (int rank = 2; rank <= 4; ++rank) {
        for (int trial = 0; trial < 5; ++trial) {
            IntegralLattice l = oracles::random_lattice(rng, rank, 6);
            EkBoundReport rep = ek_count_bound_check(l, Int(1000));
            CHECK(rep.ratio <= 8.0);
        }
    }
}
