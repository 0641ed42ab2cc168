#include <doctest.h>

#include "fixtures.hpp"
#include "psdrigid/classify.hpp"
#include "psdrigid/oracle.hpp"

using namespace psdrigid;

TEST_CASE("oracle on the worked examples") {
    for (int s : {1, 2}) {
        CHECK(verify_trivial_only(fixtures::rigid_example(), s, 2000, 1));
        const OracleVerdict v = sample_motion_oracle(fixtures::flexible_example(), s, 2000, 1);
        REQUIRE(v.found_nontrivial);
        REQUIRE(v.motion);
        CHECK(is_s_inf_motion(fixtures::flexible_example(), *v.motion, s));
        CHECK(v.seed == 1);
    }
}

TEST_CASE("a matrix with a zero has no 1-infinitesimally rigid factorization") {
    const PsdFactorization D = fixtures::derangement();
    const OracleVerdict one = sample_motion_oracle(D, 1, 2000, 3);
    REQUIRE(one.found_nontrivial);
    CHECK(is_s_inf_motion(D, *one.motion, 1));
    CHECK_FALSE(is_s_inf_motion(D, *one.motion, 2));
    CHECK(verify_trivial_only(D, 2, 2000, 3));
}

TEST_CASE("oracle is deterministic per seed") {
    const PsdFactorization F = generate_rank_one(3, 3, {{0, 0}}, 5);
    const OracleVerdict a = sample_motion_oracle(F, 2, 500, 42);
    const OracleVerdict b = sample_motion_oracle(F, 2, 500, 42);
    CHECK(a.found_nontrivial == b.found_nontrivial);
    CHECK(a.trials_used == b.trials_used);
    if (a.motion) CHECK(a.motion->D == b.motion->D);
}

TEST_CASE("oracle agrees with the one-zero classifier") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const PsdFactorization F = generate_rank_one(3, 3, {{0, 0}}, seed);
        const bool rigid = classify_one_orth(F).two_inf_rigid == Verdict::yes;
        const OracleVerdict v = sample_motion_oracle(F, 2, 1000, seed);
        CHECK(rigid == !v.found_nontrivial);
        if (v.motion) CHECK(distance_from_span(*v.motion, {MotionMatrix::identity(3)}) > 1e-6);
    }
}

TEST_CASE("closed-form and minor-based left kernels coincide") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const KernelCrosscheck full = kernel_crosscheck(rank_one_profile(generate_rank_one(3, 3, {}, seed)), Variant::full);
        CHECK_FALSE(full.rank_deficient);
        CHECK(full.deviation <= 1e-9);
        const PsdFactorization Z = generate_rank_one(3, 3, {{0, 0}}, seed);
        const auto [G, S] = normalize_orthogonal_pair(Z, 0, 0);
        const KernelCrosscheck one = kernel_crosscheck(rank_one_profile(G), Variant::one_orth);
        CHECK_FALSE(one.rank_deficient);
        CHECK(one.deviation <= 1e-9);
    }
}

TEST_CASE("sampling in higher dimension") {
    const PsdFactorization W = k_trivial_witness(3);
    CHECK(verify_trivial_only(W, 3, 300, 9));
    const PsdFactorization W2 = k_trivial_witness(2);
    CHECK(verify_trivial_only(W2, 2, 300, 9));
}
