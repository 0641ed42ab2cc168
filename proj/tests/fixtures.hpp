#pragma once

#include "psdrigid/factorization.hpp"

#include <cmath>
#include <random>

namespace fixtures {

using psdrigid::PsdFactorization;
using psdrigid::SymMat;
using psdrigid::Vec2;

inline PsdFactorization rigid_example() {
    PsdFactorization F;
    F.A = {SymMat::from_upper(2, {1.0, 0.0, 0.0}), SymMat::from_upper(2, {0.25, -0.25, 0.25}),
           SymMat::from_upper(2, {0.0, 0.0, 1.0})};
    F.B = {SymMat::from_upper(2, {0.25, 0.75, 2.25}), SymMat::from_upper(2, {0.25, -0.25, 0.25}),
           SymMat::from_upper(2, {1.0, 0.25, 1.0 / 16.0})};
    return F;
}

inline PsdFactorization flexible_example() {
    return psdrigid::from_vectors({Vec2(1, 2), Vec2(1, 3), Vec2(1, 4)}, {Vec2(1, 5), Vec2(1, 6), Vec2(1, 7)});
}

inline PsdFactorization derangement() {
    return psdrigid::from_vectors({Vec2(1, 0), Vec2(0, 1), Vec2(1, -1)}, {Vec2(0, 1), Vec2(1, 0), Vec2(1, 1)});
}

inline Eigen::Matrix2d random_invertible(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    for (;;) {
        Eigen::Matrix2d S;
        S << n(rng), n(rng), n(rng), n(rng);
        if (std::abs(S.determinant()) > 0.2) return S;
    }
}

inline Eigen::Matrix2d random_orthogonal(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    const double t = u(rng);
    Eigen::Matrix2d S;
    S << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    if (rng() % 2 == 1) S.col(1) *= -1.0;
    return S;
}

}  // namespace fixtures
