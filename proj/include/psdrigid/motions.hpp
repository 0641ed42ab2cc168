#pragma once

#include "psdrigid/factorization.hpp"
#include "psdrigid/symcore.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace psdrigid {

enum class Side { A, B };
enum class Variant { full, one_orth };

// Infinitesimal motion: vec(dA) = vec(A) * D, vec(dB) = -D * vec(B).
struct MotionMatrix {
    Eigen::MatrixXd D;

    MotionMatrix() = default;
    explicit MotionMatrix(Eigen::MatrixXd d) : D(std::move(d)) {}

    static MotionMatrix identity(int n) { return MotionMatrix(Eigen::MatrixXd::Identity(n, n)); }
    // row-major flattening (D11, D12, ..., Dnn)
    static MotionMatrix from_vec(const Eigen::VectorXd& flat);
    Eigen::VectorXd vec() const;
    int size() const { return static_cast<int>(D.rows()); }
};

// Columns of the 9-vector kept in the one-orthogonal-pair frame:
// D11, D21, D22, D23, D31, D33.
inline constexpr std::array<int, 6> kOneOrthColumns = {0, 3, 4, 5, 6, 8};

std::vector<MotionMatrix> trivial_basis_k2();
// k diagonal generators (i = 1..k) followed by k(k-1) generators for ordered
// pairs (i,j), i != j, in lexicographic order.
std::vector<MotionMatrix> trivial_basis_general(int k);

Eigen::VectorXd alpha_row(const Vec2& v, Side side);
double beta_quadratic(const Vec2& v, Side side, const MotionMatrix& D);

// The velocity of factor X under D.
SymMat factor_velocity(const SymMat& X, Side side, const MotionMatrix& D);

struct RowLabel {
    Side side = Side::A;
    int index = 0;  // profile-local vector index
};

struct ConeSystem {
    Eigen::MatrixXd C;
    std::vector<RowLabel> labels;
    Variant variant = Variant::full;
    int a_rows = 0;
};

// For the one_orth variant the profile must carry exactly one orthogonal pair
// normalized to a = (lambda,0), b = (0,mu); its two rows are omitted.
ConeSystem build_cone_system(const RankOneProfile& profile, Variant variant);

std::vector<Eigen::VectorXd> right_kernel_structured(Variant variant);

// Closed-form left-kernel generator; needs six rank-one vectors (full) or
// six including the normalized orthogonal pair (one_orth).
Eigen::VectorXd left_kernel_formula(const RankOneProfile& profile, Variant variant);

struct KernelVector {
    Eigen::VectorXd v;
    bool rank_deficient = false;
};

// Left-kernel vector from signed maximal minors of a column subset.
KernelVector left_kernel_minors(const ConeSystem& system);

struct ConeTest {
    bool full_dimensional = false;
    double margin = 0.0;        // LP optimum of t (rows normalized, |D| <= 1)
    Eigen::VectorXd interior;   // C * interior >= 1 when full dimensional
};

ConeTest cone_full_dimensional(const Eigen::MatrixXd& C, double tol = kDefaultTol);
ConeTest cone_full_dimensional(const ConeSystem& system, double tol = kDefaultTol);

// Taylor-sign test of every principal minor of every factor, truncated at
// order s. Works for any k.
bool is_s_inf_motion(const PsdFactorization& F, const MotionMatrix& D, int s, double tol = kDefaultTol);

// Matrix of X -> S^T X S on half-vectorizations: vec(S^T X S) = vec(X) * result.
Eigen::MatrixXd induced_matrix(const Eigen::MatrixXd& S);
// The motion of gl_act(F,S) corresponding to D.
MotionMatrix conjugate_motion(const MotionMatrix& D, const Eigen::MatrixXd& S);

// Distance of D / |D|_F from the span of the given motions.
double distance_from_span(const MotionMatrix& D, const std::vector<MotionMatrix>& span);

enum class MotionKind { trivial_only, affine_flex, cone_flex };

struct MotionSpace {
    std::vector<MotionMatrix> basis;       // linear hull of the solution set
    MotionKind kind = MotionKind::trivial_only;
    std::optional<MotionMatrix> witness;   // a nontrivial 2-infinitesimal motion, when flexible
};

MotionSpace solve_two_inf_no_orth(const RankOneProfile& profile);
MotionSpace solve_two_inf_one_orth(const RankOneProfile& profile);
MotionSpace solve_two_inf_two_orth(const RankOneProfile& profile);

PsdFactorization k_trivial_witness(int k);

}  // namespace psdrigid
