#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace psdrigid {

using Vec2 = Eigen::Vector2d;
using SymVec = Eigen::VectorXd;

inline constexpr double kDefaultTol = 1e-9;

// Number of independent entries of a k x k symmetric matrix.
constexpr int sym_dim(int k) { return k * (k + 1) / 2; }

// Position of entry (i,j) in the half-vectorization: diagonals first, then
// off-diagonal pairs (i<j) in lexicographic order. Indices are 0-based.
int vec_index(int k, int i, int j);

// Inverse of vec_index: the (i,j) pair (i<=j) stored at position idx.
std::pair<int, int> vec_pair(int k, int idx);

// Real symmetric k x k matrix, upper triangle stored in row order.
class SymMat {
public:
    SymMat() = default;
    explicit SymMat(int k);

    static SymMat from_upper(int k, std::vector<double> upper);
    static SymMat from_dense(const Eigen::MatrixXd& X);
    static SymMat outer(const Vec2& v);
    static SymMat identity(int k);

    int dim() const { return k_; }
    double operator()(int i, int j) const;
    void set(int i, int j, double value);
    const std::vector<double>& upper() const { return upper_; }
    Eigen::MatrixXd dense() const;
    double max_abs() const;
    double trace() const;

    bool operator==(const SymMat& other) const = default;

private:
    int upper_index(int i, int j) const;

    int k_ = 0;
    std::vector<double> upper_;
};

SymVec vec_sym(const SymMat& X);
SymMat unvec_sym(const SymVec& v, int k);

double inner(const SymMat& X, const SymMat& Y);

// Determinant of the principal submatrix on the 0-based index set I.
double principal_minor(const SymMat& X, const std::vector<int>& I);

// All nonempty subsets of {0,..,k-1}, ordered by size then lexicographically.
std::vector<std::vector<int>> principal_index_sets(int k);

struct PsdStatus {
    int rank = 0;
    bool psd = false;
};

PsdStatus psd_status(const SymMat& X, double tol);

// Recovers a with a a^T = X for a rank-one psd 2x2 matrix; the first nonzero
// coordinate of the result is positive.
Vec2 rank_one_vector(const SymMat& X, double tol);

// The same extraction without the rank check, for callers that have already
// classified X as rank one under their own rule.
Vec2 rank_one_root(const SymMat& X);

double det2(const Vec2& u, const Vec2& v);

// Rank of a psd 2x2 factor under the scale-aware rule: rank one iff
// det <= tol*trace^2 and trace > tol.
int factor_rank(const SymMat& X, double tol);

}  // namespace psdrigid
