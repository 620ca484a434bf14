#include <doctest.h>

#include "oracles.hpp"

using namespace specdiv;
using namespace specdiv::lattices;

TEST_CASE("functional chain on A1^2 at p=3") {
    LatticeChain chain = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(0)}, 3);
    REQUIRE(chain.depth() == 3);
    for (int n = 1; n <= 3; ++n) {
        Int want(1);
        for (int i = 0; i < n; ++i) want *= 3;
        CHECK(chain.level_index(n) == want);
    }
    // L_1 spanned by (3,0) and (0,1)
    IMat b1 = chain.level_basis(1);
    CHECK(b1 == IMat(2, 2, {Int(3), Int(0), Int(0), Int(1)}));
    CHECK(verify_chain(chain).empty());
    // every member of L_1 has phi = 0 mod 3
    for (int j = 0; j < 2; ++j) CHECK(mod_floor(b1.at(0, j), Int(3)) == 0);
}

TEST_CASE("depth zero chain is just the base") {
    LatticeChain chain = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(0)}, 0);
    CHECK(chain.depth() == 0);
    CHECK(chain.level_basis(0) == IMat::identity(2));
    CHECK(chain.level_lattice(0).gram() == lattices::a1(2).gram());
    CHECK(verify_chain(chain).empty());
}

TEST_CASE("functional chain rejects bad inputs") {
    CHECK_THROWS_AS(chain_from_functional(lattices::a1(2), Int(3), {Int(3), Int(6)}, 2),
                    validation_error);
    CHECK_THROWS_AS(chain_from_functional(lattices::a1(2), Int(4), {Int(1), Int(0)}, 2),
                    validation_error);
    CHECK_THROWS_AS(chain_from_functional(hyperbolic_plane(), Int(3), {Int(1), Int(0)}, 2),
                    validation_error);
}

TEST_CASE("scaled chain indices and minima") {
    LatticeChain chain = chain_scaled(lattices::a1(), Int(2), 1, 4);
    for (int n = 1; n <= 4; ++n) {
        // mu_1^2(L_n) = 4^n, index = 2^n for rank 1
        Rat mu = minimum_q(chain.level_lattice(n));
        Rat want(1);
        for (int i = 0; i < n; ++i) want *= 4;
        CHECK(mu == want);
        Int idx(1);
        for (int i = 0; i < n; ++i) idx *= 2;
        CHECK(chain.level_index(n) == idx);
    }
    CHECK(verify_chain(chain).empty());

    // index = p^{r ceil(n/c)}
    LatticeChain c2 = chain_scaled(lattices::a1(3), Int(5), 2, 5);
    for (int n = 1; n <= 5; ++n) {
        Int want(1);
        int steps = (n + 1) / 2;
        for (int i = 0; i < 3 * steps; ++i) want *= 5;
        CHECK(c2.level_index(n) == want);
    }
}

TEST_CASE("chain minima are nondecreasing") {
    LatticeChain chain = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(2)}, 6);
    Rat prev(0);
    for (int n = 0; n <= 6; ++n) {
        Rat mu = minimum_q(chain.level_lattice(n));
        CHECK(mu >= prev);
        prev = mu;
    }
}

TEST_CASE("constructor outputs pass verification for random functionals") {
    std::mt19937 rng(97);
    std::vector<long> primes = {2, 3, 5, 7};
    std::uniform_int_distribution<int> pidx(0, 3);
    std::uniform_int_distribution<long> coef(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        int rank = 2 + trial % 3;
        IntegralLattice base = oracles::random_lattice(rng, rank, 6);
        Int p(primes[pidx(rng)]);
        std::vector<Int> phi(rank);
        bool ok = false;
        for (int i = 0; i < rank; ++i) {
            phi[i] = coef(rng);
            if (mod_floor(phi[i], p) != 0) ok = true;
        }
        if (!ok) phi[0] = 1;
        LatticeChain chain = chain_from_functional(base, p, phi, 4);
        CHECK(verify_chain(chain).empty());
        LatticeChain scaled = chain_scaled(base, p, 1, 4);
        CHECK(verify_chain(scaled).empty());
    }
}

TEST_CASE("slow scaled chains repeat levels and fail exactly strict decrease") {
    // L_n = p^{ceil(n/c)} D repeats each level c times; the repeated levels
    // trip the strict index check and nothing else.
    LatticeChain chain = chain_scaled(lattices::a1(2), Int(3), 2, 4);
    for (const ChainViolation& v : verify_chain(chain))
        CHECK(v.kind == ChainViolationKind::strict_decrease);
    CHECK(verify_chain(chain).size() == 2);  // levels 1->2 and 3->4 repeat
}

TEST_CASE("planted defects are detected with the right kind") {
    LatticeChain good = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(0)}, 3);

    LatticeChain not_contained = good;
    not_contained.levels[1] = IMat(2, 2, {Int(1), Int(0), Int(0), Int(5)});  // not inside L_1
    bool saw_containment = false;
    for (const ChainViolation& v : verify_chain(not_contained))
        if (v.kind == ChainViolationKind::containment && v.level == 2) saw_containment = true;
    CHECK(saw_containment);

    LatticeChain no_pstep = good;
    // L_2 := 27 L_0 is inside L_1 and decreasing, but p*L_1 is not inside it
    no_pstep.levels[1] = IMat(2, 2, {Int(27), Int(0), Int(0), Int(27)});
    bool saw_pstep = false;
    for (const ChainViolation& v : verify_chain(no_pstep))
        if (v.kind == ChainViolationKind::p_step && v.level == 2) saw_pstep = true;
    CHECK(saw_pstep);

    LatticeChain constant = good;
    constant.levels[1] = constant.levels[0];
    bool saw_decrease = false;
    for (const ChainViolation& v : verify_chain(constant))
        if (v.kind == ChainViolationKind::strict_decrease && v.level == 2) saw_decrease = true;
    CHECK(saw_decrease);
}

TEST_CASE("minima growth report flags scaled chains as super-polynomial") {
    LatticeChain chain = chain_scaled(lattices::a1(), Int(2), 1, 8);
    MinimaGrowthReport rep = minima_growth_report(chain, 3);
    CHECK(rep.diverging);
    CHECK(rep.super_polynomial);
    REQUIRE(rep.profiles.size() == 8);
    for (int n = 1; n <= 8; ++n) {
        Rat want(1);
        for (int i = 0; i < n; ++i) want *= 4;
        CHECK(rep.profiles[n - 1].minima_sq[0] == want);
    }
}

TEST_CASE("minima growth report on a flat functional chain") {
    LatticeChain chain = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(0)}, 8);
    MinimaGrowthReport rep = minima_growth_report(chain, 4);
    // the second basis vector survives every level, so mu_1 stays 1
    CHECK_FALSE(rep.diverging);
    CHECK(rep.fitted_exponent == doctest::Approx(0.0).epsilon(1e-9));
    for (const MinimaProfile& p : rep.profiles) CHECK(p.minima_sq[0] == 1);

    LatticeChain shallow = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(0)}, 3);
    CHECK_THROWS_AS(minima_growth_report(shallow, 4), validation_error);
}

TEST_CASE("summed intersection experiment basics") {
    LatticeChain chain = chain_scaled(lattices::a1(2), Int(2), 1, 6);
    // X below mu_1^2(L_1) = 4: only the base contributes
    SumExperimentReport rep =
        summed_intersection_experiment(chain, 4, Int(1), {Int(1), Int(2)});
    // X=1: S={1}, r(base,1)=4; X=2: S={4}? no, S={m in [2,4): square} = {}; X=2 sum 0
    REQUIRE(rep.sums.size() == 2);
    CHECK(rep.sums[0] == 4);
    CHECK(rep.sums[1] == 0);

    // an unrepresented square class gives zero sums
    SumExperimentReport zero =
        summed_intersection_experiment(chain, 4, Int(7), {Int(7), Int(14)});
    CHECK(zero.sums[0] == 0);
    CHECK(zero.sums[1] == 0);

    LatticeChain bad = chain;
    bad.levels[0] = IMat(2, 2, {Int(1), Int(0), Int(0), Int(1)});
    CHECK_THROWS_AS(summed_intersection_experiment(bad, 4, Int(1), {Int(4)}), validation_error);
}

TEST_CASE("level cutoff is sound") {
    LatticeChain chain = chain_scaled(lattices::a1(2), Int(2), 1, 6);
    // for levels with mu_1^2 > 2X no vector of norm <= 2X exists
    Int x(8);
    for (int n = 0; n <= chain.depth(); ++n) {
        if (minimum_q(chain.level_lattice(n)) > Rat(2 * x)) {
            for (long m = 1; m <= 16; ++m) {
                RationalVector zero(2, Rat(0));
                CHECK(coset_representation_count(chain.level_lattice(n), zero, Rat(m)) == 0);
            }
        }
    }
}

TEST_CASE("ek link: per-level counts obey the minima bound") {
    LatticeChain chain = chain_from_functional(lattices::a1(2), Int(3), {Int(1), Int(1)}, 5);
    for (int n = 0; n <= chain.depth(); ++n) {
        EkBoundReport rep = ek_count_bound_check(chain.level_lattice(n), Int(500));
        CHECK(rep.ratio <= 8.0);
    }
}
