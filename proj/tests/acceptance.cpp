// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include "fixtures.hpp"
#include "psdrigid/classify.hpp"
#include "psdrigid/errors.hpp"
#include "psdrigid/motions.hpp"
#include "psdrigid/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace psdrigid;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool verdicts_equal(const RigidityReport& x, const RigidityReport& y) {
    return x.one_inf_rigid == y.one_inf_rigid && x.two_inf_rigid == y.two_inf_rigid &&
           x.locally_rigid == y.locally_rigid && x.globally_rigid == y.globally_rigid;
}

bool all_four(const RigidityReport& r, Verdict v) {
    return r.one_inf_rigid == v && r.two_inf_rigid == v && r.locally_rigid == v && r.globally_rigid == v;
}

int rank_of(const Eigen::MatrixXd& X) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * s(0)) ++r;
    return r;
}

PsdFactorization with_exact(PsdFactorization F) {
    ExactFactors ex;
    auto row = [](const SymMat& X) {
        std::vector<Rational> r;
        for (double v : X.upper()) r.push_back(rational_from_double(v));
        return r;
    };
    for (const auto& X : F.A) ex.A.push_back(row(X));
    for (const auto& X : F.B) ex.B.push_back(row(X));
    F.exact = ex;
    return F;
}

// Profile of a generated one-zero instance in the frame a_1 = (l,0), b_1 = (0,m).
RankOneProfile normalized_one_zero(std::uint64_t seed) {
    const PsdFactorization Z = generate_rank_one(3, 3, {{0, 0}}, seed);
    return rank_one_profile(normalize_orthogonal_pair(Z, 0, 0).first);
}

void criterion_1(Outcome& out) {
    const PsdFactorization F = fixtures::rigid_example();
    const auto t0 = Clock::now();
    const RigidityReport r = classify_no_orth(F);
    const double elapsed = seconds_since(t0);
    out.require(all_four(r, Verdict::yes), "verdicts");
    const WitnessTriple expected{{0, 1, 2}, {0, 1, 2}};
    out.require(r.witness_triple && *r.witness_triple == expected, "witness triple");
    out.require(elapsed < 1.0, "runtime");

    ClassifyOptions exact;
    exact.arithmetic = Arithmetic::exact;
    const RigidityReport e = classify_no_orth(with_exact(F), exact);
    out.require(verdicts_equal(r, e) && e.witness_triple == r.witness_triple, "exact arithmetic");
    const RankOneProfile pf = rank_one_profile(F);
    const RankOneProfile pe = rank_one_profile(with_exact(F), kDefaultTol, Arithmetic::exact);
    out.require(pf.det_a_sign == pe.det_a_sign && pf.det_b_sign == pe.det_b_sign && pf.dot_sign == pe.dot_sign,
                "sign tables");
    for (double tol : {1e-12, 1e-11, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
        ClassifyOptions o;
        o.tol = tol;
        const RigidityReport t = classify_no_orth(F, o);
        out.require(verdicts_equal(r, t) && t.witness_triple == r.witness_triple, "tolerance sweep");
    }
    out.detail << "runtime " << elapsed << " s";
}

void criterion_2(Outcome& out) {
    const PsdFactorization F = fixtures::flexible_example();
    const RigidityReport r = classify_no_orth(F);
    out.require(all_four(r, Verdict::no), "verdicts");
    const ConeSystem sys = build_cone_system(rank_one_profile(F), Variant::full);
    const ConeTest t = cone_full_dimensional(sys);
    out.require(t.full_dimensional, "cone full dimensional");
    const double slack = t.full_dimensional ? (sys.C * t.interior).minCoeff() : 0.0;
    out.require(slack >= 1.0 - 1e-9, "C D >= 1");
    out.require(r.motion && is_s_inf_motion(F, *r.motion, 2), "witness motion");
    out.detail << "min(C D) = " << slack;
}

void criterion_3(Outcome& out) {
    const PsdFactorization F = fixtures::derangement();
    Eigen::Matrix3d expected;
    expected << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    out.require(reconstruct(F).isApprox(expected), "reconstruction");
    const RigidityReport r = classify(F);
    out.require(r.p_bar == 3 && r.q_bar == 3, "p_bar = q_bar = 3");
    out.require(r.two_inf_rigid == Verdict::yes, "2-infinitesimally rigid");
    const MotionSpace space = solve_two_inf_two_orth(rank_one_profile(F));
    out.require(space.kind == MotionKind::trivial_only, "solver");
    out.detail << "zero_count " << r.zero_count;
}

void criterion_4(Outcome& out) {
    double worst_full = 0.0, worst_one = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const KernelCrosscheck full = kernel_crosscheck(rank_one_profile(generate_rank_one(3, 3, {}, seed)), Variant::full);
        out.require(!full.rank_deficient, "full variant rank");
        worst_full = std::max(worst_full, full.deviation);
        const KernelCrosscheck one = kernel_crosscheck(normalized_one_zero(seed), Variant::one_orth);
        out.require(!one.rank_deficient, "one-zero variant rank");
        worst_one = std::max(worst_one, one.deviation);
    }
    out.require(worst_full <= 1e-9, "full deviation");
    out.require(worst_one <= 1e-9, "one-zero deviation");
    out.detail << "max deviation " << worst_full << " / " << worst_one;
}

void criterion_5(Outcome& out) {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const ConeSystem C = build_cone_system(rank_one_profile(generate_rank_one(3, 3, {}, seed)), Variant::full);
        for (const auto& v : right_kernel_structured(Variant::full)) worst = std::max(worst, (C.C * v).cwiseAbs().maxCoeff());
        out.require(rank_of(C.C) == 5, "rank(C) = 5");
        const ConeSystem Cbar = build_cone_system(normalized_one_zero(seed), Variant::one_orth);
        for (const auto& w : right_kernel_structured(Variant::one_orth))
            worst = std::max(worst, (Cbar.C * w).cwiseAbs().maxCoeff());
        out.require(rank_of(Cbar.C) == 3, "rank(Cbar) = 3");
    }
    out.require(worst <= 1e-12, "kernel residual");
    out.detail << "max residual " << worst;
}

void criterion_6(Outcome& out, std::mt19937_64& rng) {
    const auto G = trivial_basis_general(2);
    const auto K = trivial_basis_k2();
    Eigen::MatrixXd stacked(8, 9);
    for (int i = 0; i < 4; ++i) {
        stacked.row(i) = G[i].vec().transpose();
        stacked.row(4 + i) = K[i].vec().transpose();
    }
    out.require(rank_of(stacked.topRows(4)) == 4 && rank_of(stacked.bottomRows(4)) == 4 && rank_of(stacked) == 4,
                "rank-4 agreement");

    std::normal_distribution<double> g(0.0, 1.0);
    const std::vector<std::vector<IndexPair>> patterns = {{}, {{0, 0}}, {{0, 0}, {1, 1}}};
    for (int t = 0; t < 100; ++t) {
        const GeneratorShape shape{3, 3, t % 2, t % 3 == 0 ? 1 : 0};
        const PsdFactorization F = generate_factorization(shape, patterns[t % 3], 1000 + t);
        const double d = g(rng);
        for (int s : {1, 2})
            out.require(is_s_inf_motion(F, MotionMatrix(d * Eigen::MatrixXd::Identity(3, 3)), s), "dI accepted");
    }

    int rejected = 0, total = 0;
    for (int k : {2, 3}) {
        const PsdFactorization W = k_trivial_witness(k);
        const int n = sym_dim(k);
        out.require(is_s_inf_motion(W, MotionMatrix(1.7 * Eigen::MatrixXd::Identity(n, n)), k), "dI on witness");
        for (int t = 0; t < 1000; ++t) {
            // first-order consistent: the off-diagonal part of the leading k x k
            // block vanishes; later families also clear the mixed blocks and
            // finally everything but a non-constant diagonal
            Eigen::MatrixXd D = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return g(rng); });
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (i != j) D(i, j) = 0.0;
            if (t % 3 >= 1) {
                D.topRightCorner(k, n - k).setZero();
                D.bottomLeftCorner(n - k, k).setZero();
            }
            if (t % 3 == 2) D = Eigen::MatrixXd(D.diagonal().asDiagonal());
            ++total;
            if (!is_s_inf_motion(W, MotionMatrix(D), k)) ++rejected;
        }
    }
    out.require(rejected == total, "non-scalar rejected");
    out.detail << rejected << "/" << total << " non-scalar motions rejected";
}

void criterion_7(Outcome& out, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 1000; ++t) {
        const Vec2 v = Vec2(g(rng), g(rng)).normalized();
        for (Side side : {Side::A, Side::B}) {
            const Eigen::VectorXd alpha = alpha_row(v, side);
            Eigen::VectorXd flat(9);
            for (int i = 0; i < 9; ++i) flat(i) = g(rng);
            flat -= alpha * (alpha.dot(flat) / alpha.squaredNorm());
            flat.normalize();
            worst = std::max(worst, beta_quadratic(v, side, MotionMatrix::from_vec(flat)));
        }
    }
    out.require(worst <= 1e-9, "beta <= 0");
    out.detail << "max beta " << worst;
}

void criterion_8(Outcome& out, std::mt19937_64& rng) {
    const RigidityReport rigid = classify_no_orth(fixtures::rigid_example());
    const RigidityReport flexible = classify_no_orth(fixtures::flexible_example());
    for (int t = 0; t < 100; ++t) {
        const Eigen::Matrix2d S = fixtures::random_invertible(rng);
        out.require(verdicts_equal(rigid, classify_no_orth(gl_act(fixtures::rigid_example(), S))), "rigid example");
        out.require(verdicts_equal(flexible, classify_no_orth(gl_act(fixtures::flexible_example(), S))),
                    "flexible example");
    }
    int one_rigid = 0, two_rigid = 0;
    for (int t = 0; t < 100; ++t) {
        const Eigen::Matrix2d S = fixtures::random_orthogonal(rng);
        const PsdFactorization one = generate_rank_one(3, 3, {{t % 3, (t / 3) % 3}}, 2000 + t);
        const RigidityReport r1 = classify_one_orth(one);
        out.require(verdicts_equal(r1, classify_one_orth(gl_act(one, S))), "one orthogonal pair");
        if (r1.two_inf_rigid == Verdict::yes) ++one_rigid;
        const GeneratorShape shape{2 + t % 2, 2 + (t / 2) % 2, t % 2 == 0 ? 1 : 0, (t / 2) % 2 == 0 ? 1 : 0};
        const PsdFactorization two = generate_factorization(shape, {{0, 0}, {1, 1}}, 3000 + t);
        const RigidityReport r2 = classify_two_orth(two);
        out.require(verdicts_equal(r2, classify_two_orth(gl_act(two, S))), "two orthogonal pairs");
        if (r2.two_inf_rigid == Verdict::yes) ++two_rigid;
    }
    out.detail << "rigid among transformed: one-zero " << one_rigid << "/100, two-zero " << two_rigid << "/100";
}

void criterion_9(Outcome& out) {
    struct Shape {
        int p_bar, q_bar;
        bool rigid;
    };
    const Shape shapes[] = {{2, 2, false}, {3, 2, false}, {2, 3, false}, {3, 3, true}};
    int disagreements = 0, instances = 0;
    for (const Shape& sh : shapes) {
        for (int t = 0; t < 50; ++t) {
            const GeneratorShape shape{sh.p_bar, sh.q_bar, sh.p_bar < 3 ? 1 : 0, sh.q_bar < 3 ? 1 : 0};
            const PsdFactorization F = generate_factorization(shape, {{0, 0}, {1, 1}}, 4000 + 100 * sh.p_bar + 10 * sh.q_bar + t);
            ++instances;
            const RigidityReport r = classify_two_orth(F);
            out.require((r.two_inf_rigid == Verdict::yes) == sh.rigid, "classifier verdict");
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                const bool found = sample_motion_oracle(F, 2, 10000, seed).found_nontrivial;
                if (found == (r.two_inf_rigid == Verdict::yes)) ++disagreements;
            }
        }
    }
    out.require(disagreements == 0, "oracle agreement");
    out.detail << instances << " instances, " << disagreements << " oracle disagreements";
}

void criterion_10(Outcome& out) {
    int trials = 0, flips = 0;
    std::uint64_t seed = 5000;
    while (trials < 50) {
        ++seed;
        const bool one_zero = trials % 2 == 1;
        const PsdFactorization F = generate_rank_one(3, 3, one_zero ? std::vector<IndexPair>{{0, 0}} : std::vector<IndexPair>{}, seed);
        const RigidityReport base = classify(F);
        if (base.two_inf_rigid != Verdict::yes) continue;
        ++trials;
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.2, 2.0);
        const SymMat pd_a = SymMat::from_upper(2, {u(rng) + 1.0, 0.3, u(rng) + 1.0});
        const SymMat pd_b = SymMat::from_upper(2, {u(rng) + 1.0, -0.2, u(rng) + 1.0});
        if (classify(append_rank_two_factors(F, {pd_a}, {pd_b})).two_inf_rigid != Verdict::yes) ++flips;
        // add the rank-one factors of another rigid-certified factorization
        for (std::uint64_t other = seed + 100000;; ++other) {
            const PsdFactorization E = generate_rank_one(3, 3, {}, other);
            if (classify(E).two_inf_rigid != Verdict::yes) continue;
            PsdFactorization bigger = F;
            bigger.A.insert(bigger.A.end(), E.A.begin(), E.A.end());
            bigger.B.insert(bigger.B.end(), E.B.begin(), E.B.end());
            const RankOneProfile P = rank_one_profile(bigger);
            const std::size_t expected_zeros = one_zero ? 1 : 0;
            if (P.orth_pairs.size() != expected_zeros || !P.degenerate_a.empty() || !P.degenerate_b.empty()) continue;
            if (classify(bigger).two_inf_rigid != Verdict::yes) ++flips;
            break;
        }
    }
    out.require(flips == 0, "no flips");
    out.detail << trials << " trials, " << flips << " flips";
}

void criterion_11(Outcome& out) {
    int disagreements = 0, rigid = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const PsdFactorization F = generate_rank_one(3, 3, {}, 6000 + seed);
        const RigidityReport r = classify_no_orth(F);
        if (r.two_inf_rigid == Verdict::yes) ++rigid;
        for (int s : {1, 2}) {
            const bool nothing = !sample_motion_oracle(F, s, 10000, seed).found_nontrivial;
            if (nothing != (r.two_inf_rigid == Verdict::yes)) ++disagreements;
        }
    }
    out.require(disagreements == 0, "agreement");
    out.detail << rigid << "/50 rigid, " << disagreements << " disagreements";
}

}  // namespace

int main() {
    std::mt19937_64 rng(20240601);
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"rigid worked example", criterion_1},
        {"flexible worked example", criterion_2},
        {"derangement matrix", criterion_3},
        {"left-kernel formula vs minors", criterion_4},
        {"structured right kernels and ranks", criterion_5},
        {"trivial-motion suites", [&](Outcome& o) { criterion_6(o, rng); }},
        {"beta nonpositive on the alpha kernel", [&](Outcome& o) { criterion_7(o, rng); }},
        {"GL(2) equivariance", [&](Outcome& o) { criterion_8(o, rng); }},
        {"two-orthogonal-pair sweep", criterion_9},
        {"monotonicity and rank-2 invariance", criterion_10},
        {"classifier vs oracle", criterion_11},
    };
    const auto start = Clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        const auto t0 = Clock::now();
        try {
            criteria[i].second(out);
        } catch (const std::exception& err) {
            out.require(false, std::string("exception: ") + err.what());
        }
        if (!out.pass) ++failed;
        std::printf("[%s] %2zu %-40s %.3fs  %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    seconds_since(t0), out.detail.str().c_str());
    }
    std::printf("%d/%zu criteria passed in %.2fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
                seconds_since(start));
    return failed == 0 ? 0 : 1;
}
