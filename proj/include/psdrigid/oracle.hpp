#pragma once

#include "psdrigid/factorization.hpp"
#include "psdrigid/motions.hpp"

#include <cstdint>
#include <optional>

namespace psdrigid {

struct OracleVerdict {
    bool found_nontrivial = false;
    std::optional<MotionMatrix> motion;
    int trials_used = 0;
    std::uint64_t seed = 0;
};

// Randomized search for a nontrivial s-infinitesimal motion. Candidates are
// raw Gaussian matrices and LP projections of Gaussian directions onto the
// first-order cone restricted to its forced-equality subspace; every
// reported motion passes is_s_inf_motion and is away from the trivial span.
OracleVerdict sample_motion_oracle(const PsdFactorization& F, int s, int trials, std::uint64_t seed,
                                   double tol = kDefaultTol);

bool verify_trivial_only(const PsdFactorization& F, int s, int trials, std::uint64_t seed, double tol = kDefaultTol);

struct KernelCrosscheck {
    double deviation = 0.0;
    bool rank_deficient = false;
};

// Max coordinate deviation between the closed-form and the minor-based
// left-kernel vectors, each scaled to unit length with its largest entry positive.
KernelCrosscheck kernel_crosscheck(const RankOneProfile& profile, Variant variant);

}  // namespace psdrigid
