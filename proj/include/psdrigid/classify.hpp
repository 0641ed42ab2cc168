#pragma once

#include "psdrigid/factorization.hpp"
#include "psdrigid/motions.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace psdrigid {

enum class Verdict { yes, no, not_applicable, unknown };

std::string to_string(Verdict v);

enum class Regime { no_orth, one_orth };

// strict: every factor nonzero and the signed product positive.
// non_strict: numerators and denominators swapped, zero numerators allowed.
enum class Strictness { strict, non_strict };

// Triple of rank-one vectors (profile-local indices) certifying rigidity.
struct WitnessTriple {
    std::array<int, 3> a{};
    std::array<int, 3> b{};
    bool operator==(const WitnessTriple&) const = default;
};

struct RigidityReport {
    Verdict one_inf_rigid = Verdict::unknown;
    Verdict two_inf_rigid = Verdict::unknown;
    Verdict locally_rigid = Verdict::unknown;
    Verdict globally_rigid = Verdict::unknown;
    std::optional<WitnessTriple> witness_triple;  // factor indices (0-based)
    std::optional<MotionMatrix> motion;           // nontrivial 2-infinitesimal motion
    int zero_count = 0;
    int p_bar = 0;
    int q_bar = 0;
    bool preconditions_met = true;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    double tolerance = kDefaultTol;
};

struct ClassifyOptions {
    double tol = kDefaultTol;
    Arithmetic arithmetic = Arithmetic::floating;
};

std::optional<WitnessTriple> triple_search(const RankOneProfile& profile, Regime regime,
                                           Strictness strictness = Strictness::strict);

RigidityReport classify_no_orth(const PsdFactorization& F, const ClassifyOptions& opts = {},
                                Strictness strictness = Strictness::strict);
RigidityReport classify_one_orth(const PsdFactorization& F, const ClassifyOptions& opts = {});
RigidityReport classify_two_orth(const PsdFactorization& F, const ClassifyOptions& opts = {});

// Dispatch on the number of orthogonal pairs.
RigidityReport classify(const PsdFactorization& F, const ClassifyOptions& opts = {});

// Uniqueness up to the GL(2) action for a rank-3 matrix.
RigidityReport uniqueness(const PsdFactorization& F, const ClassifyOptions& opts = {});

enum class BoundaryVerdict { interior_certificate, boundary_consistent, inconclusive };

std::string to_string(BoundaryVerdict v);

struct BoundaryReport {
    BoundaryVerdict verdict = BoundaryVerdict::inconclusive;
    std::string evidence;
};

BoundaryReport boundary_report(const PsdFactorization& F, const ClassifyOptions& opts = {});

}  // namespace psdrigid
