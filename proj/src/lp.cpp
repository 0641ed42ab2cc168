#include "psdrigid/lp.hpp"

#include "psdrigid/errors.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace psdrigid::lp {

namespace {
constexpr double kPivotTol = 1e-11;
}

Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n) throw std::invalid_argument("lp::maximize: dimension mismatch");
    if (m > 0 && b.minCoeff() < 0) throw std::invalid_argument("lp::maximize: right-hand side must be nonnegative");

    // tableau columns: n structural, m slack, rhs
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    T.topLeftCorner(m, n) = A;
    T.block(0, n, m, m).setIdentity();
    T.col(n + m).head(m) = b;
    T.row(m).head(n) = -c.transpose();
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const int budget = 50 * (n + m + 10);
    for (int iter = 0; iter < budget; ++iter) {
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (T(m, j) < -kPivotTol) {
                enter = j;
                break;
            }
        if (enter < 0) {
            Result r;
            r.status = Status::optimal;
            r.x = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < m; ++i)
                if (basis[i] < n) r.x(basis[i]) = T(i, n + m);
            r.value = c.dot(r.x);
            return r;
        }
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (T(i, enter) <= kPivotTol) continue;
            const double ratio = T(i, n + m) / T(i, enter);
            if (leave < 0 || ratio < best - 1e-14) {
                best = ratio;
                leave = i;
            } else if (ratio <= best + 1e-14 && basis[i] < basis[leave]) {
                best = std::min(best, ratio);
                leave = i;
            }
        }
        if (leave < 0) {
            Result r;
            r.status = Status::unbounded;
            r.value = std::numeric_limits<double>::infinity();
            r.x = Eigen::VectorXd::Zero(n);
            return r;
        }
        T.row(leave) /= T(leave, enter);
        for (int i = 0; i <= m; ++i)
            if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
        basis[leave] = enter;
        for (int i = 0; i < m; ++i)
            if (T(i, n + m) < 0.0) T(i, n + m) = 0.0;  // rounding drift below zero
    }
    throw NumericalError("lp::maximize: pivot budget exhausted");
}

Result maximize_free(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const int n = static_cast<int>(A.cols());
    Eigen::MatrixXd split(A.rows(), 2 * n);
    split << A, -A;
    Eigen::VectorXd cs(2 * n);
    cs << c, -c;
    Result r = maximize(split, b, cs);
    if (r.status == Status::optimal) r.x = (r.x.head(n) - r.x.tail(n)).eval();
    else r.x = Eigen::VectorXd::Zero(n);
    return r;
}

}  // namespace psdrigid::lp
