#include "psdrigid/symcore.hpp"

#include "psdrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psdrigid {

PreconditionError::PreconditionError(std::vector<std::string> violations)
    : std::runtime_error([&] {
          std::string msg = "precondition violated";
          for (const auto& v : violations) msg += "; " + v;
          return msg;
      }()),
      violations_(std::move(violations)) {}

PreconditionError::PreconditionError(const std::string& single)
    : PreconditionError(std::vector<std::string>{single}) {}

int vec_index(int k, int i, int j) {
    if (i < 0 || j < 0 || i >= k || j >= k) throw std::out_of_range("vec_index: index out of range");
    if (i == j) return i;
    if (i > j) std::swap(i, j);
    // Off-diagonal pairs (0,1),(0,2),...,(0,k-1),(1,2),...
    int before = 0;
    for (int r = 0; r < i; ++r) before += k - 1 - r;
    return k + before + (j - i - 1);
}

std::pair<int, int> vec_pair(int k, int idx) {
    if (idx < 0 || idx >= sym_dim(k)) throw std::out_of_range("vec_pair: index out of range");
    if (idx < k) return {idx, idx};
    int rest = idx - k;
    for (int i = 0; i < k; ++i) {
        int row = k - 1 - i;
        if (rest < row) return {i, i + 1 + rest};
        rest -= row;
    }
    throw std::logic_error("vec_pair: unreachable");
}

SymMat::SymMat(int k) : k_(k), upper_(static_cast<std::size_t>(sym_dim(k)), 0.0) {
    if (k < 1) throw std::invalid_argument("SymMat: dimension must be positive");
}

SymMat SymMat::from_upper(int k, std::vector<double> upper) {
    if (static_cast<int>(upper.size()) != sym_dim(k))
        throw std::invalid_argument("SymMat::from_upper: wrong number of entries");
    SymMat X(k);
    X.upper_ = std::move(upper);
    return X;
}

SymMat SymMat::from_dense(const Eigen::MatrixXd& D) {
    if (D.rows() != D.cols()) throw std::invalid_argument("SymMat::from_dense: not square");
    const int k = static_cast<int>(D.rows());
    SymMat X(k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) X.set(i, j, 0.5 * (D(i, j) + D(j, i)));
    return X;
}

SymMat SymMat::outer(const Vec2& v) {
    return from_upper(2, {v(0) * v(0), v(0) * v(1), v(1) * v(1)});
}

SymMat SymMat::identity(int k) {
    SymMat X(k);
    for (int i = 0; i < k; ++i) X.set(i, i, 1.0);
    return X;
}

int SymMat::upper_index(int i, int j) const {
    if (i < 0 || j < 0 || i >= k_ || j >= k_) throw std::out_of_range("SymMat: index out of range");
    if (i > j) std::swap(i, j);
    // row-order upper triangle: row i starts after sum_{r<i} (k-r) entries
    return i * k_ - i * (i - 1) / 2 + (j - i);
}

double SymMat::operator()(int i, int j) const { return upper_[static_cast<std::size_t>(upper_index(i, j))]; }

void SymMat::set(int i, int j, double value) { upper_[static_cast<std::size_t>(upper_index(i, j))] = value; }

Eigen::MatrixXd SymMat::dense() const {
    Eigen::MatrixXd D(k_, k_);
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) D(i, j) = (*this)(i, j);
    return D;
}

double SymMat::max_abs() const {
    double m = 0.0;
    for (double x : upper_) m = std::max(m, std::abs(x));
    return m;
}

double SymMat::trace() const {
    double t = 0.0;
    for (int i = 0; i < k_; ++i) t += (*this)(i, i);
    return t;
}

SymVec vec_sym(const SymMat& X) {
    const int k = X.dim();
    SymVec v(sym_dim(k));
    for (int idx = 0; idx < sym_dim(k); ++idx) {
        auto [i, j] = vec_pair(k, idx);
        v(idx) = (i == j) ? X(i, i) : std::numbers::sqrt2 * X(i, j);
    }
    return v;
}

SymMat unvec_sym(const SymVec& v, int k) {
    if (v.size() != sym_dim(k)) throw std::invalid_argument("unvec_sym: wrong length");
    SymMat X(k);
    for (int idx = 0; idx < sym_dim(k); ++idx) {
        auto [i, j] = vec_pair(k, idx);
        X.set(i, j, (i == j) ? v(idx) : v(idx) / std::numbers::sqrt2);
    }
    return X;
}

double inner(const SymMat& X, const SymMat& Y) {
    if (X.dim() != Y.dim()) throw std::invalid_argument("inner: dimension mismatch");
    const int k = X.dim();
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
        s += X(i, i) * Y(i, i);
        for (int j = i + 1; j < k; ++j) s += 2.0 * X(i, j) * Y(i, j);
    }
    return s;
}

double principal_minor(const SymMat& X, const std::vector<int>& I) {
    if (I.empty()) throw std::invalid_argument("principal_minor: empty index set");
    for (int i : I)
        if (i < 0 || i >= X.dim()) throw std::out_of_range("principal_minor: index out of range");
    const int m = static_cast<int>(I.size());
    if (m == 1) return X(I[0], I[0]);
    if (m == 2) return X(I[0], I[0]) * X(I[1], I[1]) - X(I[0], I[1]) * X(I[0], I[1]);
    Eigen::MatrixXd sub(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) sub(r, c) = X(I[r], I[c]);
    return sub.determinant();
}

std::vector<std::vector<int>> principal_index_sets(int k) {
    std::vector<std::vector<int>> sets;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> I;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) I.push_back(i);
        sets.push_back(std::move(I));
    }
    std::stable_sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return sets;
}

PsdStatus psd_status(const SymMat& X, double tol) {
    if (tol < 0) throw std::invalid_argument("psd_status: negative tolerance");
    PsdStatus status;
    status.psd = true;
    for (const auto& I : principal_index_sets(X.dim()))
        if (principal_minor(X, I) < -tol) status.psd = false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X.dense(), Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
    for (int i = 0; i < eig.eigenvalues().size(); ++i)
        if (std::abs(eig.eigenvalues()(i)) > tol * std::max(1.0, top)) ++status.rank;
    return status;
}

Vec2 rank_one_vector(const SymMat& X, double tol) {
    if (X.dim() != 2) throw std::invalid_argument("rank_one_vector: 2x2 input required");
    const PsdStatus st = psd_status(X, tol);
    if (!st.psd) throw PreconditionError("rank_one_vector: matrix is not psd");
    if (st.rank != 1) throw PreconditionError("rank_one_vector: matrix rank is " + std::to_string(st.rank));
    return rank_one_root(X);
}

Vec2 rank_one_root(const SymMat& X) {
    Vec2 a;
    // take the square root of the larger diagonal entry for accuracy
    if (X(0, 0) <= 0.0 && X(1, 1) <= 0.0) return Vec2::Zero();
    if (X(0, 0) >= X(1, 1)) {
        const double r = std::sqrt(X(0, 0));
        a << r, X(0, 1) / r;
    } else {
        const double r = std::sqrt(X(1, 1));
        a << X(0, 1) / r, r;
    }
    if (a(0) < 0 || (a(0) == 0 && a(1) < 0)) a = -a;
    if (a(0) == 0.0) a(0) = 0.0;  // drop negative zero
    return a;
}

double det2(const Vec2& u, const Vec2& v) { return u(0) * v(1) - u(1) * v(0); }

int factor_rank(const SymMat& X, double tol) {
    if (X.dim() != 2) throw std::invalid_argument("factor_rank: 2x2 factor required");
    const double tr = X.trace();
    if (tr <= tol) return 0;
    const double det = X(0, 0) * X(1, 1) - X(0, 1) * X(0, 1);
    return det <= tol * tr * tr ? 1 : 2;
}

}  // namespace psdrigid
