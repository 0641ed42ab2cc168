#pragma once

#include <Eigen/Dense>

namespace psdrigid::lp {

enum class Status { optimal, unbounded };

struct Result {
    Status status = Status::optimal;
    double value = 0.0;
    Eigen::VectorXd x;
};

// maximize c^T x subject to A x <= b, x >= 0, where b >= 0 so that the origin
// is feasible. Dense tableau simplex with Bland's rule; throws NumericalError
// when the pivot budget is exhausted.
Result maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

// Same with unrestricted x (split into positive and negative parts).
Result maximize_free(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace psdrigid::lp
