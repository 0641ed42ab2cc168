#pragma once

#include "psdrigid/exact.hpp"
#include "psdrigid/symcore.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace psdrigid {

// Rational upper-triangle entries of every factor, kept when the input was
// given with rational literals.
struct ExactFactors {
    std::vector<std::vector<Rational>> A;
    std::vector<std::vector<Rational>> B;

    bool operator==(const ExactFactors&) const = default;
};

struct PsdFactorization {
    int k = 2;
    std::vector<SymMat> A;
    std::vector<SymMat> B;
    std::optional<Eigen::MatrixXd> M;
    std::optional<ExactFactors> exact;

    int p() const { return static_cast<int>(A.size()); }
    int q() const { return static_cast<int>(B.size()); }
};

enum class Arithmetic { floating, exact };

struct ValidationReport {
    bool dimensions_ok = true;
    std::vector<int> psd_failures_A;
    std::vector<int> psd_failures_B;
    double max_product_mismatch = 0.0;  // max |inner(A_i,B_j) - M_ij|, 0 when M absent
    bool mismatch_ok = true;
    std::vector<std::string> messages;

    bool valid() const {
        return dimensions_ok && psd_failures_A.empty() && psd_failures_B.empty() && mismatch_ok;
    }
};

ValidationReport validate(const PsdFactorization& F, double tol = kDefaultTol);

Eigen::MatrixXd reconstruct(const PsdFactorization& F);

// Numerical rank of M with singular values measured relative to the largest.
int matrix_rank(const Eigen::MatrixXd& M, double tol);
// Rank of the reconstructed matrix; exact when F carries rational data and
// exact arithmetic is requested.
int factorization_rank(const PsdFactorization& F, double tol, Arithmetic mode = Arithmetic::floating);

// A -> S^T A S, B -> S^{-1} B S^{-T}. Drops rational data.
PsdFactorization gl_act(const PsdFactorization& F, const Eigen::Matrix2d& S);

// Rotation S with S^T a_i = (lambda,0) and S^{-1} b_j proportional to (0,1).
// Indices refer to factor positions (0-based).
std::pair<PsdFactorization, Eigen::Matrix2d> normalize_orthogonal_pair(const PsdFactorization& F, int i, int j,
                                                                        double tol = kDefaultTol);

struct IndexPair {
    int i = 0;
    int j = 0;
    bool operator==(const IndexPair&) const = default;
    auto operator<=>(const IndexPair&) const = default;
};

struct ExactVec2 {
    std::array<SignedRoot, 2> coords;
};

// The rank-one part of a factorization. Vector indices are profile-local;
// a_source/b_source map them back to factor positions.
struct RankOneProfile {
    std::vector<Vec2> a;
    std::vector<Vec2> b;
    std::vector<int> a_source;
    std::vector<int> b_source;
    std::vector<IndexPair> orth_pairs;    // (a index, b index)
    std::vector<IndexPair> degenerate_a;  // det2(a_i, a_j) = 0, i < j
    std::vector<IndexPair> degenerate_b;
    // sign tables computed once, either exactly or at tolerance
    std::vector<std::vector<int>> det_a_sign;
    std::vector<std::vector<int>> det_b_sign;
    std::vector<std::vector<int>> dot_sign;  // sign <a_i, b_j>
    double tol = kDefaultTol;
    Arithmetic mode = Arithmetic::floating;

    int p_bar() const { return static_cast<int>(a.size()); }
    int q_bar() const { return static_cast<int>(b.size()); }
};

RankOneProfile rank_one_profile(const PsdFactorization& F, double tol = kDefaultTol,
                                Arithmetic mode = Arithmetic::floating);

// Sign of a real value at a tolerance scaled by the given magnitude.
int tolerant_sign(double value, double scale, double tol);

struct GeneratorShape {
    int rank_one_a = 3;
    int rank_one_b = 3;
    int full_rank_a = 0;  // positive definite factors appended after the rank-one ones
    int full_rank_b = 0;
};

// Random factorization with rank-one vectors on the unit circle (scaled by
// random magnitudes) and prescribed orthogonal pairs among the rank-one
// vectors. The result has rank-3 M, no unintended zeros and no parallel
// pairs. Pairs are 0-based (a index, b index).
PsdFactorization generate_factorization(const GeneratorShape& shape, const std::vector<IndexPair>& zero_pattern,
                                        std::uint64_t seed);

PsdFactorization generate_rank_one(int p, int q, const std::vector<IndexPair>& zero_pattern, std::uint64_t seed);

PsdFactorization append_rank_two_factors(const PsdFactorization& F, const std::vector<SymMat>& extra_A,
                                         const std::vector<SymMat>& extra_B, double tol = kDefaultTol);

// Factorization whose factors are the outer products of the given vectors.
PsdFactorization from_vectors(const std::vector<Vec2>& a, const std::vector<Vec2>& b);

// Profile of the outer products of the given nonzero vectors.
RankOneProfile profile_from_vectors(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                                    double tol = kDefaultTol);

}  // namespace psdrigid
