#include "psdrigid/motions.hpp"

#include "psdrigid/errors.hpp"
#include "psdrigid/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psdrigid {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// det((X + tV)_I) as coefficients of 1, t, ..., t^|I|.
std::vector<double> minor_poly(const Eigen::MatrixXd& X, const Eigen::MatrixXd& V, const std::vector<int>& I) {
    const int m = static_cast<int>(I.size());
    if (m == 1) return {X(I[0], I[0]), V(I[0], I[0])};
    if (m == 2) {
        const int i = I[0], j = I[1];
        return {X(i, i) * X(j, j) - X(i, j) * X(j, i),
                X(i, i) * V(j, j) + V(i, i) * X(j, j) - X(i, j) * V(j, i) - V(i, j) * X(j, i),
                V(i, i) * V(j, j) - V(i, j) * V(j, i)};
    }
    std::vector<double> total(static_cast<std::size_t>(m + 1), 0.0);
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) perm[r] = r;
    do {
        int inversions = 0;
        for (int r = 0; r < m; ++r)
            for (int c = r + 1; c < m; ++c)
                if (perm[r] > perm[c]) ++inversions;
        std::vector<double> term{1.0};
        for (int r = 0; r < m; ++r) {
            const double x = X(I[r], I[perm[r]]);
            const double v = V(I[r], I[perm[r]]);
            std::vector<double> next(term.size() + 1, 0.0);
            for (std::size_t d = 0; d < term.size(); ++d) {
                next[d] += term[d] * x;
                next[d + 1] += term[d] * v;
            }
            term = std::move(next);
        }
        const double sgn = (inversions % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t d = 0; d < term.size(); ++d) total[d] += sgn * term[d];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Eigen::MatrixXd orthonormal_span(const std::vector<Eigen::VectorXd>& vectors, int dim) {
    if (vectors.empty()) return Eigen::MatrixXd(dim, 0);
    Eigen::MatrixXd M(dim, static_cast<int>(vectors.size()));
    for (std::size_t c = 0; c < vectors.size(); ++c) M.col(static_cast<int>(c)) = vectors[c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-10 * s(0)) ++r;
    return svd.matrixU().leftCols(r);
}

Eigen::Matrix2d rotation_to_x_axis(const Vec2& a) {
    const Vec2 u = a / a.norm();
    Eigen::Matrix2d S;
    S << u(0), -u(1), u(1), u(0);
    return S;
}

// Nullspace of the stacked two-column system acting on (r1 - r2, r_off).
std::vector<Eigen::Vector2d> r_system_nullspace(const std::vector<Eigen::Vector2d>& rows) {
    std::vector<Eigen::Vector2d> null;
    if (rows.empty()) return {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
    Eigen::MatrixXd R(static_cast<int>(rows.size()), 2);
    for (std::size_t i = 0; i < rows.size(); ++i) R.row(static_cast<int>(i)) = rows[i].normalized().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * std::max(1.0, s(0))) ++rank;
    for (int c = rank; c < 2; ++c) null.push_back(svd.matrixV().col(c));
    return null;
}

// u * v1 + w * v4: the non-scalar part of the motions left after the
// first-order and pair conditions.
MotionMatrix r_motion(const Eigen::Vector2d& uw) {
    Eigen::VectorXd flat = Eigen::VectorXd::Zero(9);
    flat(0) = 2 * uw(0);
    flat(8) = uw(0);
    flat(5) = uw(1);
    flat(6) = uw(1);
    return MotionMatrix::from_vec(flat);
}

MotionSpace map_back(MotionSpace space, const Eigen::Matrix2d& S) {
    const Eigen::Matrix2d Sinv = S.inverse();
    for (auto& D : space.basis) D = conjugate_motion(D, Sinv);
    if (space.witness) space.witness = conjugate_motion(*space.witness, Sinv);
    return space;
}

void require_nondegenerate(const RankOneProfile& profile, const char* who) {
    std::vector<std::string> problems;
    for (const auto& d : profile.degenerate_a)
        problems.push_back(std::string(who) + ": det(a" + std::to_string(d.i + 1) + ", a" + std::to_string(d.j + 1) +
                           ") vanishes");
    for (const auto& d : profile.degenerate_b)
        problems.push_back(std::string(who) + ": det(b" + std::to_string(d.i + 1) + ", b" + std::to_string(d.j + 1) +
                           ") vanishes");
    if (!problems.empty()) throw PreconditionError(problems);
}

}  // namespace

MotionMatrix MotionMatrix::from_vec(const Eigen::VectorXd& flat) {
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(flat.size()))));
    if (n * n != flat.size()) throw std::invalid_argument("MotionMatrix::from_vec: length is not a square");
    Eigen::MatrixXd D(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) D(r, c) = flat(r * n + c);
    return MotionMatrix(D);
}

Eigen::VectorXd MotionMatrix::vec() const {
    const int n = size();
    Eigen::VectorXd flat(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) flat(r * n + c) = D(r, c);
    return flat;
}

std::vector<MotionMatrix> trivial_basis_k2() {
    Eigen::Matrix3d D1, D2, D3, D4;
    D1 << 2, 0, 0, 0, 0, 0, 0, 0, 1;
    D2 << 0, 0, 0, 0, 2, 0, 0, 0, 1;
    D3 << 0, 0, 0, 0, 0, kSqrt2, kSqrt2, 0, 0;
    D4 << 0, 0, kSqrt2, 0, 0, 0, 0, kSqrt2, 0;
    return {MotionMatrix(D1), MotionMatrix(D2), MotionMatrix(D3), MotionMatrix(D4)};
}

std::vector<MotionMatrix> trivial_basis_general(int k) {
    if (k < 2) throw std::invalid_argument("trivial_basis_general: k >= 2 required");
    const int n = sym_dim(k);
    std::vector<MotionMatrix> basis;
    for (int i = 0; i < k; ++i) {
        Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
        D(i, i) = 2;
        for (int l = 0; l < k; ++l)
            if (l != i) D(vec_index(k, i, l), vec_index(k, i, l)) = 1;
        basis.emplace_back(D);
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
            const int ij = vec_index(k, i, j);
            D(ij, vec_index(k, j, j)) = kSqrt2;
            D(vec_index(k, i, i), ij) = kSqrt2;
            for (int l = 0; l < k; ++l)
                if (l != i && l != j) D(vec_index(k, i, l), vec_index(k, j, l)) = 1;
            basis.emplace_back(D);
        }
    return basis;
}

Eigen::VectorXd alpha_row(const Vec2& v, Side side) {
    const double x = v(0), y = v(1);
    const double x2 = x * x, y2 = y * y;
    Eigen::VectorXd r(9);
    if (side == Side::A) {
        r << x2 * y2, x2 * x2, -kSqrt2 * x2 * x * y, y2 * y2, x2 * y2, -kSqrt2 * x * y2 * y, kSqrt2 * x * y2 * y,
            kSqrt2 * x2 * x * y, -2 * x2 * y2;
    } else {
        r << -x2 * y2, -y2 * y2, -kSqrt2 * x * y2 * y, -x2 * x2, -x2 * y2, -kSqrt2 * x2 * x * y,
            kSqrt2 * x2 * x * y, kSqrt2 * x * y2 * y, 2 * x2 * y2;
    }
    return r;
}

SymMat factor_velocity(const SymMat& X, Side side, const MotionMatrix& D) {
    const int k = X.dim();
    if (D.size() != sym_dim(k)) throw std::invalid_argument("factor_velocity: motion size does not match factor");
    const SymVec x = vec_sym(X);
    const SymVec v = side == Side::A ? SymVec(D.D.transpose() * x) : SymVec(-(D.D * x));
    return unvec_sym(v, k);
}

double beta_quadratic(const Vec2& v, Side side, const MotionMatrix& D) {
    const SymMat V = factor_velocity(SymMat::outer(v), side, D);
    return V(0, 0) * V(1, 1) - V(0, 1) * V(0, 1);
}

ConeSystem build_cone_system(const RankOneProfile& profile, Variant variant) {
    ConeSystem sys;
    sys.variant = variant;
    int skip_a = -1, skip_b = -1;
    if (variant == Variant::one_orth) {
        if (profile.orth_pairs.size() != 1)
            throw PreconditionError("one_orth cone system needs exactly one orthogonal pair");
        skip_a = profile.orth_pairs[0].i;
        skip_b = profile.orth_pairs[0].j;
        const Vec2& a = profile.a[skip_a];
        const Vec2& b = profile.b[skip_b];
        const double tol = profile.tol;
        if (!(a(0) > 0 && std::abs(a(1)) <= tol * a.norm() && b(1) > 0 && std::abs(b(0)) <= tol * b.norm()))
            throw PreconditionError("one_orth cone system needs the orthogonal pair normalized to (l,0), (0,m)");
    }
    std::vector<Eigen::VectorXd> rows;
    for (int i = 0; i < profile.p_bar(); ++i) {
        if (i == skip_a) continue;
        rows.push_back(alpha_row(profile.a[i], Side::A));
        sys.labels.push_back({Side::A, i});
    }
    sys.a_rows = static_cast<int>(rows.size());
    for (int j = 0; j < profile.q_bar(); ++j) {
        if (j == skip_b) continue;
        rows.push_back(alpha_row(profile.b[j], Side::B));
        sys.labels.push_back({Side::B, j});
    }
    const int cols = variant == Variant::full ? 9 : 6;
    sys.C.resize(static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < cols; ++c)
            sys.C(static_cast<int>(r), c) = variant == Variant::full ? rows[r](c) : rows[r](kOneOrthColumns[c]);
    return sys;
}

std::vector<Eigen::VectorXd> right_kernel_structured(Variant variant) {
    auto make = [](std::initializer_list<double> xs) {
        Eigen::VectorXd v(static_cast<int>(xs.size()));
        int i = 0;
        for (double x : xs) v(i++) = x;
        return v;
    };
    if (variant == Variant::full)
        return {make({2, 0, 0, 0, 0, 0, 0, 0, 1}), make({0, 0, 0, 0, 2, 0, 0, 0, 1}), make({0, 0, 1, 0, 0, 0, 0, 1, 0}),
                make({0, 0, 0, 0, 0, 1, 1, 0, 0})};
    return {make({2, 0, 0, 0, 0, 1}), make({0, 0, 2, 0, 0, 1}), make({0, 0, 0, 1, 1, 0})};
}

Eigen::VectorXd left_kernel_formula(const RankOneProfile& profile, Variant variant) {
    if (profile.p_bar() + profile.q_bar() != 6)
        throw PreconditionError("left_kernel_formula: needs exactly six rank-one vectors");
    std::vector<Vec2> as, bs;
    if (variant == Variant::full) {
        as = profile.a;
        bs = profile.b;
    } else {
        if (profile.orth_pairs.size() != 1)
            throw PreconditionError("left_kernel_formula: one_orth variant needs exactly one orthogonal pair");
        const int ia = profile.orth_pairs[0].i, jb = profile.orth_pairs[0].j;
        as.push_back(Vec2(1, 0));
        bs.push_back(Vec2(0, 1));
        for (int i = 0; i < profile.p_bar(); ++i)
            if (i != ia) as.push_back(profile.a[i]);
        for (int j = 0; j < profile.q_bar(); ++j)
            if (j != jb) bs.push_back(profile.b[j]);
    }
    const int pb = static_cast<int>(as.size()), qb = static_cast<int>(bs.size());
    std::vector<double> out;
    for (int k = 0; k < pb + qb; ++k) {  // k is the 0-based position of the omitted vector
        if (variant == Variant::one_orth && (k == 0 || k == pb)) continue;
        double prod = 1.0;
        for (int i = 0; i < pb; ++i)
            for (int j = i + 1; j < pb; ++j)
                if (i != k && j != k) prod *= det2(as[i], as[j]);
        for (int i = 0; i < qb; ++i)
            for (int j = i + 1; j < qb; ++j)
                if (pb + i != k && pb + j != k) prod *= det2(bs[i], bs[j]);
        for (int i = 0; i < pb; ++i)
            for (int j = 0; j < qb; ++j) {
                if (i == k || pb + j == k) continue;
                if (variant == Variant::one_orth && i == 0 && j == 0) continue;
                prod *= as[i].dot(bs[j]);
            }
        const int one_based = k + 1;
        const int exponent = one_based + (one_based >= pb + 1 ? 1 : 0);
        out.push_back(exponent % 2 == 0 ? prod : -prod);
    }
    return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<int>(out.size()));
}

KernelVector left_kernel_minors(const ConeSystem& system) {
    std::vector<int> cols;
    int expected_rows = 0;
    double global_sign = 1.0;
    if (system.variant == Variant::full) {
        cols = {0, 1, 2, 3, 5};
        expected_rows = 6;
        global_sign = (system.a_rows % 2 == 0) ? 1.0 : -1.0;
        if (system.C.cols() != 9) throw std::invalid_argument("left_kernel_minors: full system needs 9 columns");
    } else {
        cols = {0, 1, 4};
        expected_rows = 4;
        if (system.C.cols() != 6) throw std::invalid_argument("left_kernel_minors: one_orth system needs 6 columns");
    }
    if (system.C.rows() != expected_rows)
        throw PreconditionError("left_kernel_minors: needs " + std::to_string(expected_rows) + " rows");
    const int m = expected_rows;
    const int r = m - 1;
    Eigen::MatrixXd sub(m, r);
    for (int c = 0; c < r; ++c) sub.col(c) = system.C.col(cols[c]);

    KernelVector out;
    out.v = Eigen::VectorXd::Zero(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0 || s(r - 1) <= 1e-9 * s(0)) {
        out.rank_deficient = true;
        return out;
    }
    for (int i = 0; i < m; ++i) {
        Eigen::MatrixXd minor(r, r);
        for (int row = 0, dst = 0; row < m; ++row) {
            if (row == i) continue;
            minor.row(dst++) = sub.row(row);
        }
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        out.v(i) = global_sign * sign * minor.determinant();
    }
    return out;
}

ConeTest cone_full_dimensional(const Eigen::MatrixXd& C, double tol) {
    const int n = static_cast<int>(C.cols());
    ConeTest result;
    std::vector<int> kept;
    const double top = C.rows() > 0 ? C.rowwise().norm().maxCoeff() : 0.0;
    for (int r = 0; r < C.rows(); ++r)
        if (C.row(r).norm() > 1e-14 * std::max(1.0, top)) kept.push_back(r);
    if (kept.empty()) {
        result.full_dimensional = true;
        result.margin = 1.0;
        result.interior = Eigen::VectorXd::Zero(n);
        return result;
    }
    const int m = static_cast<int>(kept.size());
    Eigen::VectorXd norms(m);
    Eigen::MatrixXd R(m, n);
    for (int r = 0; r < m; ++r) {
        norms(r) = C.row(kept[r]).norm();
        R.row(r) = C.row(kept[r]) / norms(r);
    }
    // variables (D, t): -R D + t <= 0, |D_i| <= 1, t <= 1
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 2 * n + 1, n + 1);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 2 * n + 1);
    A.topLeftCorner(m, n) = -R;
    A.block(0, n, m, 1).setOnes();
    A.block(m, 0, n, n).setIdentity();
    A.block(m + n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
    b.segment(m, 2 * n).setOnes();
    A(m + 2 * n, n) = 1.0;
    b(m + 2 * n) = 1.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
    c(n) = 1.0;
    const lp::Result lpres = lp::maximize_free(A, b, c);
    if (lpres.status != lp::Status::optimal) throw NumericalError("cone_full_dimensional: LP did not reach an optimum");
    result.margin = lpres.value;
    result.full_dimensional = lpres.value > tol;
    if (!result.full_dimensional) {
        result.interior = Eigen::VectorXd::Zero(n);
        return result;
    }
    result.interior = lpres.x.head(n) / (lpres.value * norms.minCoeff());
    const Eigen::VectorXd check = C * result.interior;
    for (int r : kept)
        if (check(r) < 1.0 - 1e-9) throw NumericalError("cone_full_dimensional: interior certificate failed");
    return result;
}

ConeTest cone_full_dimensional(const ConeSystem& system, double tol) { return cone_full_dimensional(system.C, tol); }

namespace {

// first-nonzero-coefficient rule on c[0..deg]
// thr[j] bounds the rounding noise of c[j]
bool taylor_nonnegative(const double* c, const double* thr, int deg, int s) {
    for (int j = 0; j <= std::min(s, deg); ++j) {
        if (std::abs(c[j]) <= thr[j]) continue;
        return c[j] > 0;
    }
    return true;
}

// k = 2 without heap traffic; the oracle calls this in tight loops
bool factor_ok_k2(const SymMat& X, Side side, const Eigen::MatrixXd& D, int s, double tol) {
    const double x11 = X(0, 0), x12 = X(0, 1), x22 = X(1, 1);
    const double vx[3] = {x11, x22, kSqrt2 * x12};
    double w[3];
    for (int c = 0; c < 3; ++c) {
        if (side == Side::A) w[c] = vx[0] * D(0, c) + vx[1] * D(1, c) + vx[2] * D(2, c);
        else w[c] = -(D(c, 0) * vx[0] + D(c, 1) * vx[1] + D(c, 2) * vx[2]);
    }
    const double v11 = w[0], v22 = w[1], v12 = w[2] / kSqrt2;
    // the t^j coefficient of an m x m minor has degree m-j in X and j in V
    const double sx = std::max({std::abs(x11), std::abs(x12), std::abs(x22)});
    // V is bilinear in X and D, so its rounding noise is relative to |X| |D|
    const double sv = std::max({std::abs(v11), std::abs(v12), std::abs(v22), sx * D.cwiseAbs().maxCoeff()});
    const double thr1[2] = {tol * sx, tol * sv};
    const double thr2[3] = {tol * sx * sx, tol * sx * sv, tol * sv * sv};
    const double d1[2] = {x11, v11};
    const double d2[2] = {x22, v22};
    const double dd[3] = {x11 * x22 - x12 * x12, x11 * v22 + v11 * x22 - 2 * x12 * v12, v11 * v22 - v12 * v12};
    return taylor_nonnegative(d1, thr1, 1, s) && taylor_nonnegative(d2, thr1, 1, s) &&
           taylor_nonnegative(dd, thr2, 2, s);
}

}  // namespace

bool is_s_inf_motion(const PsdFactorization& F, const MotionMatrix& D, int s, double tol) {
    if (s < 1) throw std::invalid_argument("is_s_inf_motion: s >= 1 required");
    if (D.size() != sym_dim(F.k)) throw std::invalid_argument("is_s_inf_motion: motion size does not match k");
    if (F.k == 2) {
        for (const auto& X : F.A)
            if (!factor_ok_k2(X, Side::A, D.D, s, tol)) return false;
        for (const auto& X : F.B)
            if (!factor_ok_k2(X, Side::B, D.D, s, tol)) return false;
        return true;
    }
    const auto subsets = principal_index_sets(F.k);
    auto factor_ok = [&](const SymMat& X, Side side) {
        const SymMat V = factor_velocity(X, side, D);
        const double sx = X.max_abs(), sv = std::max(V.max_abs(), sx * D.D.cwiseAbs().maxCoeff());
        const Eigen::MatrixXd Xd = X.dense(), Vd = V.dense();
        std::vector<double> thr;
        for (const auto& I : subsets) {
            const auto c = minor_poly(Xd, Vd, I);
            const int m = static_cast<int>(I.size());
            thr.assign(m + 1, 0.0);
            for (int j = 0; j <= m; ++j) thr[j] = tol * std::pow(sx, m - j) * std::pow(sv, j);
            if (!taylor_nonnegative(c.data(), thr.data(), m, s)) return false;
        }
        return true;
    };
    for (const auto& X : F.A)
        if (!factor_ok(X, Side::A)) return false;
    for (const auto& X : F.B)
        if (!factor_ok(X, Side::B)) return false;
    return true;
}

Eigen::MatrixXd induced_matrix(const Eigen::MatrixXd& S) {
    const int k = static_cast<int>(S.rows());
    const int n = sym_dim(k);
    Eigen::MatrixXd out(n, n);
    for (int r = 0; r < n; ++r) {
        SymVec e = SymVec::Zero(n);
        e(r) = 1.0;
        const Eigen::MatrixXd E = unvec_sym(e, k).dense();
        out.row(r) = vec_sym(SymMat::from_dense(S.transpose() * E * S)).transpose();
    }
    return out;
}

MotionMatrix conjugate_motion(const MotionMatrix& D, const Eigen::MatrixXd& S) {
    const Eigen::MatrixXd T = induced_matrix(S);
    return MotionMatrix(T.inverse() * D.D * T);
}

double distance_from_span(const MotionMatrix& D, const std::vector<MotionMatrix>& span) {
    Eigen::VectorXd d = D.vec();
    const double nrm = d.norm();
    if (nrm == 0.0) return 0.0;
    d /= nrm;
    std::vector<Eigen::VectorXd> flats;
    for (const auto& E : span) flats.push_back(E.vec());
    const Eigen::MatrixXd Q = orthonormal_span(flats, static_cast<int>(d.size()));
    return (d - Q * (Q.transpose() * d)).norm();
}

MotionSpace solve_two_inf_no_orth(const RankOneProfile& profile) {
    if (!profile.orth_pairs.empty()) throw PreconditionError("solve_two_inf_no_orth: orthogonal pairs present");
    require_nondegenerate(profile, "solve_two_inf_no_orth");
    if (profile.p_bar() < 1) throw PreconditionError("solve_two_inf_no_orth: needs a rank-one A factor");
    // frame with a_1 = (1,0)
    const Vec2& a1 = profile.a[0];
    Eigen::Matrix2d frame;
    frame << a1(0), -a1(1), a1(1), a1(0);
    const Eigen::Matrix2d S = frame.inverse().transpose();
    const Eigen::Matrix2d Sinv = S.inverse();
    std::vector<Eigen::Vector2d> rows;
    for (int i = 1; i < profile.p_bar(); ++i) {
        const Vec2 a = S.transpose() * profile.a[i];
        rows.emplace_back(kSqrt2 * a(0), a(1));
    }
    for (int j = 0; j < profile.q_bar(); ++j) {
        const Vec2 b = Sinv * profile.b[j];
        rows.emplace_back(kSqrt2 * b(1), -b(0));
    }
    MotionSpace space;
    space.basis.push_back(MotionMatrix::identity(3));
    for (const auto& uw : r_system_nullspace(rows)) space.basis.push_back(r_motion(uw));
    space.kind = space.basis.size() == 1 ? MotionKind::trivial_only : MotionKind::affine_flex;
    if (space.kind != MotionKind::trivial_only) space.witness = space.basis[1];
    return map_back(space, S);
}

MotionSpace solve_two_inf_one_orth(const RankOneProfile& profile) {
    if (profile.orth_pairs.size() != 1) throw PreconditionError("solve_two_inf_one_orth: needs exactly one orthogonal pair");
    require_nondegenerate(profile, "solve_two_inf_one_orth");
    const int ia = profile.orth_pairs[0].i, jb = profile.orth_pairs[0].j;
    const Eigen::Matrix2d S = rotation_to_x_axis(profile.a[ia]);
    std::vector<Vec2> as, bs;
    for (const auto& a : profile.a) as.push_back(S.transpose() * a);
    for (const auto& b : profile.b) bs.push_back(S.transpose() * b);
    as[ia] = Vec2(profile.a[ia].norm(), 0.0);
    bs[jb] = Vec2(0.0, std::abs(det2(profile.a[ia].normalized(), profile.b[jb])));
    const RankOneProfile normalized = profile_from_vectors(as, bs, profile.tol);

    MotionSpace space;
    space.basis.push_back(MotionMatrix::identity(3));
    const ConeSystem sys = build_cone_system(normalized, Variant::one_orth);
    const ConeTest test = cone_full_dimensional(sys, profile.tol);
    if (test.full_dimensional) {
        Eigen::VectorXd flat = Eigen::VectorXd::Zero(9);
        for (int c = 0; c < 6; ++c) flat(kOneOrthColumns[c]) = test.interior(c);
        space.kind = MotionKind::cone_flex;
        space.witness = MotionMatrix::from_vec(flat);
        space.basis.push_back(*space.witness);
        return map_back(space, S);
    }
    std::vector<Eigen::Vector2d> rows;
    for (int i = 0; i < normalized.p_bar(); ++i)
        if (i != ia) rows.emplace_back(kSqrt2 * as[i](0), as[i](1));
    for (int j = 0; j < normalized.q_bar(); ++j)
        if (j != jb) rows.emplace_back(kSqrt2 * bs[j](1), -bs[j](0));
    for (const auto& uw : r_system_nullspace(rows)) space.basis.push_back(r_motion(uw));
    space.kind = space.basis.size() == 1 ? MotionKind::trivial_only : MotionKind::affine_flex;
    if (space.kind != MotionKind::trivial_only) space.witness = space.basis[1];
    return map_back(space, S);
}

MotionSpace solve_two_inf_two_orth(const RankOneProfile& profile) {
    if (profile.orth_pairs.size() < 2) throw PreconditionError("solve_two_inf_two_orth: needs two orthogonal pairs");
    require_nondegenerate(profile, "solve_two_inf_two_orth");
    const IndexPair first = profile.orth_pairs[0];
    const IndexPair second = profile.orth_pairs[1];
    Eigen::Matrix2d S = rotation_to_x_axis(profile.a[first.i]);
    Vec2 a2 = S.transpose() * profile.a[second.i];
    if (std::abs(a2(0)) < 1e-3 * a2.norm()) {
        // a shear fixing both axes of the first pair moves a_2 off the y-axis
        Eigen::Matrix2d shear;
        shear << 1, 0, 1, 1;
        S = S * shear;
        a2 = S.transpose() * profile.a[second.i];
    }
    const double ratio = a2(1) / a2(0);
    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(9), s2 = Eigen::VectorXd::Zero(9), s3 = Eigen::VectorXd::Zero(9);
    s1 << ratio * ratio, 0, 0, 1, 0, 0, -kSqrt2 * ratio, 0, 0;
    s2 << 1, 0, 0, 0, 1, 0, 0, 0, 1;
    s3 << -kSqrt2 * ratio, 0, 0, 0, 0, 1, 1, 0, -ratio / kSqrt2;

    MotionSpace space;
    space.basis.push_back(MotionMatrix::from_vec(s2));
    const bool many_a = profile.p_bar() >= 3, many_b = profile.q_bar() >= 3;
    if (many_a && many_b) {
        space.kind = MotionKind::trivial_only;
    } else if (!many_a && !many_b) {
        space.kind = MotionKind::affine_flex;
        space.basis.push_back(MotionMatrix::from_vec(s1));
        space.basis.push_back(MotionMatrix::from_vec(s3));
        space.witness = MotionMatrix::from_vec(s1 + s3);
    } else {
        // the extra vectors force s1 > 0 (extra a's) or s1 < 0 (extra b's)
        space.kind = MotionKind::cone_flex;
        space.basis.push_back(MotionMatrix::from_vec(s1));
        space.basis.push_back(MotionMatrix::from_vec(s3));
        space.witness = MotionMatrix::from_vec(many_a ? Eigen::VectorXd(s1) : Eigen::VectorXd(-s1));
    }
    return map_back(space, S);
}

PsdFactorization k_trivial_witness(int k) {
    if (k < 2) throw std::invalid_argument("k_trivial_witness: k >= 2 required");
    PsdFactorization F;
    F.k = k;
    for (int i = 0; i < k; ++i) {
        SymMat E(k);
        E.set(i, i, 1.0);
        F.A.push_back(E);
        F.B.push_back(E);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            SymMat A(k), B(k);
            A.set(i, i, 1.0);
            A.set(j, j, 1.0);
            A.set(i, j, -1.0);
            B.set(i, i, 1.0);
            B.set(j, j, 1.0);
            B.set(i, j, 1.0);
            F.A.push_back(A);
            F.B.push_back(B);
        }
    F.M = reconstruct(F);
    return F;
}

}  // namespace psdrigid
