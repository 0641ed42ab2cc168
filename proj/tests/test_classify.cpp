#include <doctest.h>

#include "fixtures.hpp"
#include "psdrigid/classify.hpp"
#include "psdrigid/errors.hpp"

#include <random>

using namespace psdrigid;

namespace {

bool one_signed(const Eigen::VectorXd& y) { return (y.array() > 0).all() || (y.array() < 0).all(); }

void check_all_equal(const RigidityReport& r) {
    CHECK(r.one_inf_rigid == r.two_inf_rigid);
    CHECK(r.two_inf_rigid == r.locally_rigid);
    CHECK(r.locally_rigid == r.globally_rigid);
}

}  // namespace

TEST_CASE("triple search on the worked examples") {
    const auto t = triple_search(rank_one_profile(fixtures::rigid_example()), Regime::no_orth);
    REQUIRE(t);
    CHECK(t->a == std::array<int, 3>{0, 1, 2});
    CHECK(t->b == std::array<int, 3>{0, 1, 2});
    CHECK_FALSE(triple_search(rank_one_profile(fixtures::flexible_example()), Regime::no_orth));
    const RankOneProfile small = profile_from_vectors({Vec2(1, 2), Vec2(1, 3)}, {Vec2(1, 5), Vec2(1, 6), Vec2(1, 7)});
    CHECK_THROWS_AS(triple_search(small, Regime::no_orth), PreconditionError);
    CHECK_THROWS_AS(triple_search(rank_one_profile(fixtures::rigid_example()), Regime::one_orth), PreconditionError);
}

TEST_CASE("no-orth classifier on the worked examples") {
    const RigidityReport rigid = classify_no_orth(fixtures::rigid_example());
    CHECK(rigid.one_inf_rigid == Verdict::yes);
    check_all_equal(rigid);
    CHECK(rigid.witness_triple);
    CHECK_FALSE(rigid.motion);

    const RigidityReport flex = classify_no_orth(fixtures::flexible_example());
    CHECK(flex.one_inf_rigid == Verdict::no);
    check_all_equal(flex);
    REQUIRE(flex.motion);
    CHECK(is_s_inf_motion(fixtures::flexible_example(), *flex.motion, 2));

    const PsdFactorization padded = append_rank_two_factors(fixtures::rigid_example(), {SymMat::identity(2)},
                                                            {SymMat::from_upper(2, {2.0, 0.5, 1.0})});
    const RigidityReport same = classify_no_orth(padded);
    CHECK(same.one_inf_rigid == Verdict::yes);
    check_all_equal(same);
}

TEST_CASE("no-orth verdict matches the Farkas test on random profiles") {
    int rigid = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const PsdFactorization F = generate_rank_one(3 + seed % 2, 3 + seed % 3, {}, seed);
        const RigidityReport r = classify_no_orth(F);
        check_all_equal(r);
        const ConeTest cone = cone_full_dimensional(build_cone_system(rank_one_profile(F), Variant::full));
        CHECK((r.one_inf_rigid == Verdict::yes) == !cone.full_dimensional);
        if (F.p() == 3 && F.q() == 3)
            CHECK((r.one_inf_rigid == Verdict::yes) == one_signed(left_kernel_formula(rank_one_profile(F), Variant::full)));
        if (r.one_inf_rigid == Verdict::yes) ++rigid;
    }
    CHECK(rigid > 0);
    CHECK(rigid < 200);
}

TEST_CASE("strict and non-strict forms agree on nondegenerate input") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const RankOneProfile P = rank_one_profile(generate_rank_one(3, 4, {}, seed));
        CHECK(triple_search(P, Regime::no_orth, Strictness::strict).has_value() ==
              triple_search(P, Regime::no_orth, Strictness::non_strict).has_value());
    }
}

TEST_CASE("preconditions are refused") {
    const PsdFactorization degenerate =
        from_vectors({Vec2(1, 2), Vec2(2, 4), Vec2(1, 4)}, {Vec2(1, 5), Vec2(1, 6), Vec2(1, 7)});
    try {
        classify_no_orth(degenerate);
        FAIL("expected refusal");
    } catch (const PreconditionError& err) {
        REQUIRE(err.violations().size() == 1);
        CHECK(err.violations()[0] == "det(a1, a2) = 0");
    }
    CHECK_THROWS_AS(classify_no_orth(fixtures::derangement()), PreconditionError);
    CHECK_THROWS_AS(classify_one_orth(fixtures::derangement()), PreconditionError);
    CHECK_THROWS_AS(classify_two_orth(fixtures::rigid_example()), PreconditionError);
}

TEST_CASE("one orthogonal pair") {
    int rigid = 0, flexible = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const PsdFactorization F = generate_rank_one(3, 3, {{static_cast<int>(seed % 3), static_cast<int>((seed / 3) % 3)}}, seed);
        const RigidityReport r = classify_one_orth(F);
        CHECK(r.one_inf_rigid == Verdict::not_applicable);
        CHECK(r.zero_count == 1);
        // Farkas on the reduced cone in the normalized frame
        const RankOneProfile P = rank_one_profile(F);
        const IndexPair z = P.orth_pairs.front();
        const auto [G, S] = normalize_orthogonal_pair(F, P.a_source[z.i], P.b_source[z.j]);
        const RankOneProfile Q = rank_one_profile(G);
        const bool sign_rigid = one_signed(left_kernel_formula(Q, Variant::one_orth));
        CHECK((r.two_inf_rigid == Verdict::yes) == sign_rigid);
        CHECK((r.two_inf_rigid == Verdict::yes) == !cone_full_dimensional(build_cone_system(Q, Variant::one_orth)).full_dimensional);
        if (r.two_inf_rigid == Verdict::yes) {
            ++rigid;
            CHECK(r.globally_rigid == Verdict::unknown);
            CHECK(r.witness_triple);
            CHECK_FALSE(r.notes.empty());
        } else {
            ++flexible;
            CHECK(r.globally_rigid == Verdict::no);
            CHECK(r.locally_rigid == Verdict::no);
            REQUIRE(r.motion);
            CHECK(is_s_inf_motion(F, *r.motion, 2));
        }
    }
    CHECK(rigid > 0);
    CHECK(flexible > 0);
}

TEST_CASE("two orthogonal pairs") {
    const RigidityReport der = classify_two_orth(fixtures::derangement());
    CHECK(der.two_inf_rigid == Verdict::yes);
    CHECK(der.zero_count == 3);
    CHECK(der.globally_rigid == Verdict::unknown);
    const std::vector<IndexPair> zeros = {{0, 0}, {1, 1}};
    const RigidityReport a = classify_two_orth(generate_factorization({2, 2, 1, 1}, zeros, 4));
    CHECK(a.two_inf_rigid == Verdict::no);
    CHECK(a.motion);
    const RigidityReport b = classify_two_orth(generate_factorization({3, 2, 0, 1}, zeros, 4));
    CHECK(b.two_inf_rigid == Verdict::no);
    CHECK(b.p_bar == 3);
    CHECK(b.q_bar == 2);
    for (std::uint64_t seed = 1; seed <= 30; ++seed)
        CHECK(classify_two_orth(generate_rank_one(3, 4, zeros, seed)).two_inf_rigid == Verdict::yes);
}

TEST_CASE("dispatch and uniqueness") {
    CHECK(classify(fixtures::derangement()).zero_count == 3);
    CHECK(classify(fixtures::rigid_example()).globally_rigid == Verdict::yes);

    const RigidityReport u = uniqueness(fixtures::rigid_example());
    CHECK(u.globally_rigid == Verdict::yes);
    REQUIRE(u.witness_triple);
    CHECK(u.witness_triple->a == std::array<int, 3>{0, 1, 2});
    CHECK(uniqueness(fixtures::flexible_example()).globally_rigid == Verdict::no);

    // rank-2 matrix
    const PsdFactorization low = from_vectors({Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)}, {Vec2(1, 0), Vec2(0, 1), Vec2(1, 2)});
    PsdFactorization flat = low;
    flat.A = {SymMat::outer(Vec2(1, 2)), SymMat::outer(Vec2(2, 4)), SymMat::outer(Vec2(3, 6))};
    CHECK_THROWS_AS(uniqueness(flat), PreconditionError);

    std::mt19937_64 rng(12);
    for (int n = 0; n < 30; ++n) {
        const Eigen::Matrix2d S = fixtures::random_invertible(rng);
        CHECK(uniqueness(gl_act(fixtures::rigid_example(), S)).globally_rigid == Verdict::yes);
        CHECK(uniqueness(gl_act(fixtures::flexible_example(), S)).globally_rigid == Verdict::no);
    }
}

TEST_CASE("boundary report") {
    CHECK(boundary_report(fixtures::rigid_example()).verdict == BoundaryVerdict::boundary_consistent);
    CHECK_THROWS_AS(boundary_report(fixtures::derangement()), PreconditionError);
    PsdFactorization full = fixtures::rigid_example();
    for (auto& X : full.A) X = SymMat::from_dense(X.dense() + 0.1 * Eigen::Matrix2d::Identity());
    for (auto& X : full.B) X = SymMat::from_dense(X.dense() + 0.1 * Eigen::Matrix2d::Identity());
    full.M = reconstruct(full);
    CHECK(boundary_report(full).verdict == BoundaryVerdict::interior_certificate);
    PsdFactorization two = fixtures::rigid_example();
    two.A[0] = SymMat::identity(2);
    two.A[1] = SymMat::from_upper(2, {1.0, 0.2, 1.0});
    CHECK(boundary_report(two).verdict == BoundaryVerdict::inconclusive);
}

TEST_CASE("rigid verdicts survive added factors") {
    int checked = 0;
    for (std::uint64_t seed = 1; checked < 30 && seed < 400; ++seed) {
        const PsdFactorization F = generate_rank_one(3, 3, {}, seed);
        if (classify_no_orth(F).one_inf_rigid != Verdict::yes) continue;
        ++checked;
        CHECK(classify_no_orth(append_rank_two_factors(F, {SymMat::identity(2)}, {SymMat::identity(2)})).one_inf_rigid ==
              Verdict::yes);
        // extra rank-one vectors from another generated instance
        const PsdFactorization extra = generate_rank_one(3, 3, {}, seed + 1000);
        PsdFactorization bigger = F;
        bigger.A.push_back(extra.A[0]);
        bigger.B.push_back(extra.B[1]);
        bool usable = true;
        try {
            const RankOneProfile P = rank_one_profile(bigger);
            usable = P.orth_pairs.empty() && P.degenerate_a.empty() && P.degenerate_b.empty();
        } catch (const PreconditionError&) {
            usable = false;
        }
        if (usable) CHECK(classify_no_orth(bigger).one_inf_rigid == Verdict::yes);
    }
    CHECK(checked == 30);
}
