#include "psdrigid/oracle.hpp"

#include "psdrigid/errors.hpp"
#include "psdrigid/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace psdrigid {

namespace {

constexpr int kDim = 9;

// Taylor data of one principal minor whose constant term vanishes: the
// t-coefficient as a linear functional of vec9(D) and, for 2x2 minors, the
// t^2-coefficient as a quadratic form.
struct MinorConstraint {
    Eigen::VectorXd linear;
    Eigen::MatrixXd quadratic;
    bool has_quadratic = false;
};

// velocity of X along the unit motion with a single 1 at flat position idx
Eigen::Matrix2d unit_velocity(const SymMat& X, bool a_side, int idx) {
    const double s2 = std::numbers::sqrt2;
    const Eigen::Vector3d vx(X(0, 0), X(1, 1), s2 * X(0, 1));
    const int r = idx / 3, c = idx % 3;
    Eigen::Vector3d w = Eigen::Vector3d::Zero();
    if (a_side) w(c) = vx(r);   // row vector times D
    else w(r) = -vx(c);         // minus D times column vector
    Eigen::Matrix2d V;
    V << w(0), w(2) / s2, w(2) / s2, w(1);
    return V;
}

std::vector<MinorConstraint> expand_constraints(const PsdFactorization& F, double tol) {
    std::vector<MinorConstraint> out;
    auto scan = [&](const SymMat& X, bool a_side) {
        const double scale = X.max_abs();
        if (scale == 0.0) return;
        std::array<Eigen::Matrix2d, kDim> V;
        for (int k = 0; k < kDim; ++k) V[k] = unit_velocity(X, a_side, k);
        const Eigen::Matrix2d Xd = X.dense();
        for (int i = 0; i < 2; ++i) {
            if (std::abs(Xd(i, i)) > tol * scale) continue;
            MinorConstraint mc;
            mc.linear.resize(kDim);
            for (int k = 0; k < kDim; ++k) mc.linear(k) = V[k](i, i);
            out.push_back(std::move(mc));
        }
        const double det = Xd(0, 0) * Xd(1, 1) - Xd(0, 1) * Xd(1, 0);
        if (std::abs(det) <= tol * scale * scale) {
            MinorConstraint mc;
            mc.linear.resize(kDim);
            for (int k = 0; k < kDim; ++k)
                mc.linear(k) = Xd(0, 0) * V[k](1, 1) + V[k](0, 0) * Xd(1, 1) - 2.0 * Xd(0, 1) * V[k](0, 1);
            mc.quadratic.resize(kDim, kDim);
            for (int k = 0; k < kDim; ++k)
                for (int l = 0; l < kDim; ++l)
                    mc.quadratic(k, l) =
                        0.5 * (V[k](0, 0) * V[l](1, 1) + V[l](0, 0) * V[k](1, 1)) - V[k](0, 1) * V[l](0, 1);
            mc.has_quadratic = true;
            out.push_back(std::move(mc));
        }
    };
    for (const auto& X : F.A) scan(X, true);
    for (const auto& X : F.B) scan(X, false);
    return out;
}

// Tangent directions of the GL(2) orbit, from central differences of the
// (quadratic) map S -> matrix of X -> S^T X S.
std::vector<Eigen::VectorXd> orbit_tangents() {
    const double s2 = std::numbers::sqrt2;
    auto induced = [&](const Eigen::Matrix2d& S) {
        Eigen::Matrix3d T;
        for (int r = 0; r < 3; ++r) {
            Eigen::Matrix2d E = Eigen::Matrix2d::Zero();
            if (r < 2) E(r, r) = 1.0;
            else E(0, 1) = E(1, 0) = 1.0 / s2;
            const Eigen::Matrix2d Y = S.transpose() * E * S;
            T.row(r) << Y(0, 0), Y(1, 1), s2 * Y(0, 1);
        }
        return T;
    };
    std::vector<Eigen::VectorXd> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Eigen::Matrix2d E = Eigen::Matrix2d::Zero();
            E(i, j) = 1.0;
            const Eigen::Matrix3d d =
                0.5 * (induced(Eigen::Matrix2d::Identity() + E) - induced(Eigen::Matrix2d::Identity() - E));
            Eigen::VectorXd flat(kDim);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) flat(r * 3 + c) = d(r, c);
            out.push_back(flat);
        }
    return out;
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& M, double rel = 1e-10) {
    if (M.cols() == 0) return Eigen::MatrixXd(M.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel * std::max(1e-300, s(0))) ++r;
    return svd.matrixU().leftCols(r);
}

// Basis of {y : R y = 0}.
Eigen::MatrixXd null_basis(const Eigen::MatrixXd& R, int n) {
    if (R.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * std::max(1.0, s(0))) ++r;
    return svd.matrixV().rightCols(n - r);
}

// maximize obj . (V y) subject to rows . (V y) >= 0 and |V y|_inf <= 1
lp::Result cone_direction_lp(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& V, const Eigen::VectorXd& obj) {
    const int d = static_cast<int>(V.cols());
    const int m = static_cast<int>(rows.rows());
    Eigen::MatrixXd A(m + 2 * kDim, d);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 2 * kDim);
    if (m > 0) A.topRows(m) = -(rows * V);
    A.middleRows(m, kDim) = V;
    A.bottomRows(kDim) = -V;
    b.tail(2 * kDim).setOnes();
    return lp::maximize_free(A, b, V.transpose() * obj);
}

// maximize t subject to rows . (V y) >= t, |V y|_inf <= 1, t <= 1
std::pair<double, Eigen::VectorXd> interior_lp(const Eigen::MatrixXd& rows, const Eigen::MatrixXd& V) {
    const int d = static_cast<int>(V.cols());
    const int m = static_cast<int>(rows.rows());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 2 * kDim + 1, d + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 2 * kDim + 1);
    if (m > 0) {
        A.topLeftCorner(m, d) = -(rows * V);
        A.block(0, d, m, 1).setOnes();
    }
    A.block(m, 0, kDim, d) = V;
    A.block(m + kDim, 0, kDim, d) = -V;
    b.segment(m, 2 * kDim).setOnes();
    A(m + 2 * kDim, d) = 1.0;
    b(m + 2 * kDim) = 1.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d + 1);
    c(d) = 1.0;
    const lp::Result r = lp::maximize_free(A, b, c);
    return {r.value, V * r.x.head(d)};
}

Eigen::MatrixXd stack_rows(const std::vector<Eigen::VectorXd>& rows) {
    Eigen::MatrixXd R(static_cast<int>(rows.size()), kDim);
    for (std::size_t i = 0; i < rows.size(); ++i) R.row(static_cast<int>(i)) = rows[i].transpose();
    return R;
}

struct Reduction {
    Eigen::MatrixXd V;                    // orthonormal basis of the forced subspace
    std::vector<Eigen::VectorXd> active;  // rows that are not forced to vanish
};

// Shrinks the search space to the subspace on which every s-infinitesimal
// motion must lie: first-order rows that vanish on the whole cone become
// equalities, and for s = 2 a vanishing t-coefficient forces the
// (negative semidefinite) t^2-coefficient to vanish as well.
Reduction reduce(const std::vector<MinorConstraint>& cons, int s) {
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(kDim, kDim);
    std::vector<Eigen::VectorXd> rows;
    for (const auto& c : cons) {
        const double n = c.linear.norm();
        rows.push_back(n > 0 ? Eigen::VectorXd(c.linear / n) : c.linear);
    }
    std::vector<bool> forced(cons.size(), false);
    for (int round = 0; round < kDim + 1; ++round) {
        const int before = static_cast<int>(V.cols());
        if (before == 0) break;
        std::vector<Eigen::VectorXd> live;
        std::vector<std::size_t> live_idx;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if ((rows[i].transpose() * V).norm() <= 1e-9) {
                forced[i] = true;
                continue;
            }
            live.push_back(rows[i]);
            live_idx.push_back(i);
        }
        const Eigen::MatrixXd L = stack_rows(live);
        std::vector<Eigen::VectorXd> eq;
        for (std::size_t n = 0; n < live.size(); ++n) {
            const lp::Result r = cone_direction_lp(L, V, live[n]);
            if (r.value <= 1e-9) {
                forced[live_idx[n]] = true;
                eq.push_back(live[n]);
            }
        }
        if (!eq.empty()) {
            const Eigen::MatrixXd E = stack_rows(eq) * V;
            V = orthonormal_columns(V * null_basis(E, static_cast<int>(V.cols())));
        }
        if (s >= 2) {
            for (std::size_t i = 0; i < cons.size() && V.cols() > 0; ++i) {
                if (!forced[i] || !cons[i].has_quadratic) continue;
                const Eigen::MatrixXd Q = V.transpose() * cons[i].quadratic * V;
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (Q + Q.transpose()));
                const auto& ev = eig.eigenvalues();
                const double top = std::max(1e-12, ev.cwiseAbs().maxCoeff());
                if (ev.maxCoeff() > 1e-9 * top) continue;  // not semidefinite: leave to sampling
                std::vector<int> keep;
                for (int k = 0; k < ev.size(); ++k)
                    if (std::abs(ev(k)) <= 1e-9 * top) keep.push_back(k);
                Eigen::MatrixXd K(V.cols(), static_cast<int>(keep.size()));
                for (std::size_t k = 0; k < keep.size(); ++k) K.col(static_cast<int>(k)) = eig.eigenvectors().col(keep[k]);
                V = orthonormal_columns(V * K);
            }
        }
        if (static_cast<int>(V.cols()) == before && eq.empty()) break;
    }
    Reduction red;
    red.V = V;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (V.cols() > 0 && (rows[i].transpose() * V).norm() > 1e-9) red.active.push_back(rows[i]);
    return red;
}

bool accept(const PsdFactorization& F, const MotionMatrix& D, int s, const std::vector<MotionMatrix>& trivial,
            double tol) {
    if (!D.D.allFinite() || D.D.norm() == 0.0) return false;
    return is_s_inf_motion(F, D, s, tol) && distance_from_span(D, trivial) > 1e-6;
}

}  // namespace

OracleVerdict sample_motion_oracle(const PsdFactorization& F, int s, int trials, std::uint64_t seed, double tol) {
    OracleVerdict verdict;
    verdict.seed = seed;
    const int n = sym_dim(F.k);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<MotionMatrix> trivial;
    if (F.k == 2 && s == 1) {
        for (const auto& t : orbit_tangents()) trivial.push_back(MotionMatrix::from_vec(t));
    } else {
        trivial.push_back(MotionMatrix::identity(n));
    }

    auto gaussian = [&] {
        Eigen::VectorXd g(n * n);
        for (int i = 0; i < g.size(); ++i) g(i) = normal(rng);
        return g;
    };

    if (F.k != 2) {
        // no cone machinery beyond k = 2: plain and near-scalar samples
        for (int t = 0; t < trials; ++t) {
            const Eigen::VectorXd g = gaussian();
            const MotionMatrix raw = MotionMatrix::from_vec(g);
            const MotionMatrix near(Eigen::MatrixXd::Identity(n, n) + 1e-3 * raw.D);
            for (const auto* D : {&raw, &near})
                if (accept(F, *D, s, trivial, tol)) {
                    verdict.found_nontrivial = true;
                    verdict.motion = *D;
                    verdict.trials_used = t + 1;
                    return verdict;
                }
        }
        verdict.trials_used = trials;
        return verdict;
    }

    const Reduction red = reduce(expand_constraints(F, tol), s);
    const Eigen::MatrixXd active = stack_rows(red.active);

    // projector onto the forced subspace with the trivial directions removed
    Eigen::MatrixXd T(kDim, static_cast<int>(trivial.size()));
    for (std::size_t i = 0; i < trivial.size(); ++i) T.col(static_cast<int>(i)) = trivial[i].vec();
    const Eigen::MatrixXd Tq = orthonormal_columns(T);
    Eigen::MatrixXd W = red.V - Tq * (Tq.transpose() * red.V);
    W = orthonormal_columns(W, 1e-8);
    const bool room = W.cols() > 0;

    std::optional<Eigen::VectorXd> interior;
    if (red.V.cols() > 0) {
        const auto [t, x] = interior_lp(active, red.V);
        if (t > 1e-9) interior = x;
    }
    if (interior && accept(F, MotionMatrix::from_vec(*interior), s, trivial, tol)) {
        verdict.found_nontrivial = true;
        verdict.motion = MotionMatrix::from_vec(*interior);
        verdict.trials_used = trials > 0 ? 1 : 0;
        return verdict;
    }

    for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXd g = gaussian();
        std::vector<MotionMatrix> candidates{MotionMatrix::from_vec(g)};
        if (room) {
            const Eigen::VectorXd dir = W * (W.transpose() * g);
            const lp::Result r = cone_direction_lp(active, red.V, dir);
            if (r.status == lp::Status::optimal && r.value > 1e-9) {
                const Eigen::VectorXd x = red.V * r.x;
                if (interior) candidates.push_back(MotionMatrix::from_vec(x + 0.5 * *interior));
                candidates.push_back(MotionMatrix::from_vec(x));
            }
        }
        for (const auto& D : candidates)
            if (accept(F, D, s, trivial, tol)) {
                verdict.found_nontrivial = true;
                verdict.motion = D;
                verdict.trials_used = t + 1;
                return verdict;
            }
    }
    verdict.trials_used = trials;
    return verdict;
}

bool verify_trivial_only(const PsdFactorization& F, int s, int trials, std::uint64_t seed, double tol) {
    return !sample_motion_oracle(F, s, trials, seed, tol).found_nontrivial;
}

KernelCrosscheck kernel_crosscheck(const RankOneProfile& profile, Variant variant) {
    const ConeSystem sys = build_cone_system(profile, variant);
    const KernelVector minors = left_kernel_minors(sys);
    KernelCrosscheck out;
    if (minors.rank_deficient) {
        out.rank_deficient = true;
        out.deviation = std::numeric_limits<double>::infinity();
        return out;
    }
    auto normalized = [](Eigen::VectorXd v) {
        Eigen::Index at = 0;
        v.cwiseAbs().maxCoeff(&at);
        if (v(at) < 0) v = -v;
        return Eigen::VectorXd(v / v.norm());
    };
    const Eigen::VectorXd f = normalized(left_kernel_formula(profile, variant));
    const Eigen::VectorXd m = normalized(minors.v);
    out.deviation = (f - m).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace psdrigid
