#include "psdrigid/classify.hpp"

#include "psdrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psdrigid {

namespace {

enum class Kind { det_a, det_b, dot };

// One sign factor; positions refer to the triple (0..2).
struct Term {
    Kind kind;
    int x;
    int y;
};

struct Condition {
    int lead;
    std::vector<Term> numerator;
    std::vector<Term> denominator;
};

// ratio conditions of the 3+3 left-kernel generator: entry k over the last
// entry is positive for k = 1..5
const std::vector<Condition>& full_conditions() {
    static const std::vector<Condition> conds = {
        {+1,
         {{Kind::det_b, 0, 2}, {Kind::det_b, 1, 2}, {Kind::dot, 1, 2}, {Kind::dot, 2, 2}},
         {{Kind::det_a, 0, 1}, {Kind::det_a, 0, 2}, {Kind::dot, 0, 0}, {Kind::dot, 0, 1}}},
        {-1,
         {{Kind::det_b, 0, 2}, {Kind::det_b, 1, 2}, {Kind::dot, 0, 2}, {Kind::dot, 2, 2}},
         {{Kind::det_a, 0, 1}, {Kind::det_a, 1, 2}, {Kind::dot, 1, 0}, {Kind::dot, 1, 1}}},
        {+1,
         {{Kind::det_b, 0, 2}, {Kind::det_b, 1, 2}, {Kind::dot, 0, 2}, {Kind::dot, 1, 2}},
         {{Kind::det_a, 0, 2}, {Kind::det_a, 1, 2}, {Kind::dot, 2, 0}, {Kind::dot, 2, 1}}},
        {+1,
         {{Kind::det_b, 1, 2}, {Kind::dot, 0, 2}, {Kind::dot, 1, 2}, {Kind::dot, 2, 2}},
         {{Kind::det_b, 0, 1}, {Kind::dot, 0, 0}, {Kind::dot, 1, 0}, {Kind::dot, 2, 0}}},
        {-1,
         {{Kind::det_b, 0, 2}, {Kind::dot, 0, 2}, {Kind::dot, 1, 2}, {Kind::dot, 2, 2}},
         {{Kind::det_b, 0, 1}, {Kind::dot, 0, 1}, {Kind::dot, 1, 1}, {Kind::dot, 2, 1}}},
    };
    return conds;
}

// with the orthogonal pair at position (0,0) only the conditions free of
// <a_1,b_1> remain
const std::vector<Condition>& one_orth_conditions() {
    static const std::vector<Condition> conds = {full_conditions()[1], full_conditions()[2], full_conditions()[4]};
    return conds;
}

int term_sign(const RankOneProfile& P, const Term& t, const std::array<int, 3>& ia, const std::array<int, 3>& jb) {
    switch (t.kind) {
        case Kind::det_a: return P.det_a_sign[ia[t.x]][ia[t.y]];
        case Kind::det_b: return P.det_b_sign[jb[t.x]][jb[t.y]];
        case Kind::dot: return P.dot_sign[ia[t.x]][jb[t.y]];
    }
    return 0;
}

bool condition_holds(const RankOneProfile& P, const Condition& c, const std::array<int, 3>& ia,
                     const std::array<int, 3>& jb, Strictness strictness) {
    int num = 1, den = 1;
    for (const auto& t : c.numerator) num *= term_sign(P, t, ia, jb);
    for (const auto& t : c.denominator) den *= term_sign(P, t, ia, jb);
    if (strictness == Strictness::strict) return num != 0 && den != 0 && c.lead * num * den > 0;
    // reciprocal form: denominator of the original becomes the numerator
    if (num == 0) return false;
    if (den == 0) return true;
    return c.lead * num * den > 0;
}

std::vector<std::array<int, 2>> pairs_of(const std::vector<int>& idx) {
    std::vector<std::array<int, 2>> out;
    for (std::size_t x = 0; x < idx.size(); ++x)
        for (std::size_t y = x + 1; y < idx.size(); ++y) out.push_back({idx[x], idx[y]});
    return out;
}

bool triple_nondegenerate(const RankOneProfile& P, const std::array<int, 3>& ia, const std::array<int, 3>& jb) {
    for (int x = 0; x < 3; ++x)
        for (int y = x + 1; y < 3; ++y)
            if (P.det_a_sign[ia[x]][ia[y]] == 0 || P.det_b_sign[jb[x]][jb[y]] == 0) return false;
    return true;
}

std::string a_name(const RankOneProfile& P, int i) { return "a" + std::to_string(P.a_source[i] + 1); }
std::string b_name(const RankOneProfile& P, int j) { return "b" + std::to_string(P.b_source[j] + 1); }

std::vector<std::string> degeneracy_violations(const RankOneProfile& P) {
    std::vector<std::string> v;
    for (const auto& d : P.degenerate_a) v.push_back("det(" + a_name(P, d.i) + ", " + a_name(P, d.j) + ") = 0");
    for (const auto& d : P.degenerate_b) v.push_back("det(" + b_name(P, d.i) + ", " + b_name(P, d.j) + ") = 0");
    return v;
}

std::vector<std::string> zero_factor_violations(const PsdFactorization& F, double tol) {
    std::vector<std::string> v;
    for (int i = 0; i < F.p(); ++i)
        if (F.A[i].trace() <= tol) v.push_back("A factor " + std::to_string(i + 1) + " is zero");
    for (int j = 0; j < F.q(); ++j)
        if (F.B[j].trace() <= tol) v.push_back("B factor " + std::to_string(j + 1) + " is zero");
    return v;
}

WitnessTriple to_sources(const RankOneProfile& P, const WitnessTriple& w) {
    WitnessTriple out;
    for (int x = 0; x < 3; ++x) {
        out.a[x] = P.a_source[w.a[x]];
        out.b[x] = P.b_source[w.b[x]];
    }
    return out;
}

void check_witness(const PsdFactorization& F, const MotionMatrix& D, const std::vector<MotionMatrix>& trivial,
                   double tol, const char* who) {
    if (!is_s_inf_motion(F, D, 2, tol))
        throw NumericalError(std::string(who) + ": witness motion fails the Taylor-sign test");
    if (distance_from_span(D, trivial) <= 1e-6)
        throw NumericalError(std::string(who) + ": witness motion is trivial");
}

bool rank_is_three(const PsdFactorization& F, const ClassifyOptions& opts) {
    return factorization_rank(F, opts.tol, opts.arithmetic) == 3;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "true";
        case Verdict::no: return "false";
        case Verdict::not_applicable: return "not_applicable";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

std::string to_string(BoundaryVerdict v) {
    switch (v) {
        case BoundaryVerdict::interior_certificate: return "interior_certificate";
        case BoundaryVerdict::boundary_consistent: return "boundary_consistent";
        case BoundaryVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::optional<WitnessTriple> triple_search(const RankOneProfile& P, Regime regime, Strictness strictness) {
    if (P.p_bar() < 3 || P.q_bar() < 3)
        throw PreconditionError("triple_search: fewer than three rank-one vectors on one side");
    const std::size_t expected = regime == Regime::no_orth ? 0 : 1;
    if (P.orth_pairs.size() != expected)
        throw PreconditionError("triple_search: regime does not match the number of orthogonal pairs");

    if (regime == Regime::no_orth) {
        std::vector<int> all_a(P.p_bar()), all_b(P.q_bar());
        for (int i = 0; i < P.p_bar(); ++i) all_a[i] = i;
        for (int j = 0; j < P.q_bar(); ++j) all_b[j] = j;
        for (int i1 = 0; i1 < P.p_bar(); ++i1)
            for (int i2 = i1 + 1; i2 < P.p_bar(); ++i2)
                for (int i3 = i2 + 1; i3 < P.p_bar(); ++i3)
                    for (int j1 = 0; j1 < P.q_bar(); ++j1)
                        for (int j2 = j1 + 1; j2 < P.q_bar(); ++j2)
                            for (int j3 = j2 + 1; j3 < P.q_bar(); ++j3) {
                                const std::array<int, 3> ia{i1, i2, i3}, jb{j1, j2, j3};
                                if (!triple_nondegenerate(P, ia, jb)) continue;
                                const auto& conds = full_conditions();
                                if (std::all_of(conds.begin(), conds.end(), [&](const Condition& c) {
                                        return condition_holds(P, c, ia, jb, strictness);
                                    }))
                                    return WitnessTriple{ia, jb};
                            }
        return std::nullopt;
    }

    const int oa = P.orth_pairs[0].i, ob = P.orth_pairs[0].j;
    std::vector<int> rest_a, rest_b;
    for (int i = 0; i < P.p_bar(); ++i)
        if (i != oa) rest_a.push_back(i);
    for (int j = 0; j < P.q_bar(); ++j)
        if (j != ob) rest_b.push_back(j);
    for (const auto& pa : pairs_of(rest_a))
        for (const auto& pb : pairs_of(rest_b)) {
            const std::array<int, 3> ia{oa, pa[0], pa[1]}, jb{ob, pb[0], pb[1]};
            if (!triple_nondegenerate(P, ia, jb)) continue;
            const auto& conds = one_orth_conditions();
            if (std::all_of(conds.begin(), conds.end(),
                            [&](const Condition& c) { return condition_holds(P, c, ia, jb, strictness); }))
                return WitnessTriple{ia, jb};
        }
    return std::nullopt;
}

RigidityReport classify_no_orth(const PsdFactorization& F, const ClassifyOptions& opts, Strictness strictness) {
    const RankOneProfile P = rank_one_profile(F, opts.tol, opts.arithmetic);
    std::vector<std::string> violations = zero_factor_violations(F, opts.tol);
    for (const auto& z : P.orth_pairs) violations.push_back("<" + a_name(P, z.i) + ", " + b_name(P, z.j) + "> = 0");
    for (auto& v : degeneracy_violations(P)) violations.push_back(std::move(v));
    if (!violations.empty()) throw PreconditionError(violations);

    RigidityReport rep;
    rep.tolerance = opts.tol;
    rep.p_bar = P.p_bar();
    rep.q_bar = P.q_bar();
    rep.zero_count = 0;
    std::optional<WitnessTriple> triple;
    if (P.p_bar() >= 3 && P.q_bar() >= 3) triple = triple_search(P, Regime::no_orth, strictness);
    else rep.notes.push_back("fewer than three rank-one factors on one side: the first-order cone is full dimensional");

    const bool full_rank = rank_is_three(F, opts);
    if (triple) {
        rep.witness_triple = to_sources(P, *triple);
        rep.one_inf_rigid = rep.two_inf_rigid = Verdict::yes;
        rep.locally_rigid = rep.globally_rigid = full_rank ? Verdict::yes : Verdict::unknown;
    } else {
        rep.one_inf_rigid = rep.two_inf_rigid = Verdict::no;
        rep.locally_rigid = rep.globally_rigid = full_rank ? Verdict::no : Verdict::unknown;
        const ConeSystem sys = build_cone_system(P, Variant::full);
        const ConeTest test = cone_full_dimensional(sys, opts.tol);
        if (!test.full_dimensional)
            throw NumericalError("classify_no_orth: no certifying triple but the first-order cone is not full dimensional");
        MotionMatrix D = MotionMatrix::from_vec(test.interior);
        if (distance_from_span(D, trivial_basis_k2()) <= 1e-6) {
            // only possible without constraining rows: any non-trivial direction works
            Eigen::VectorXd flat = Eigen::VectorXd::Zero(9);
            flat(1) = 1.0;
            D = MotionMatrix::from_vec(flat);
        }
        check_witness(F, D, {MotionMatrix::identity(3)}, opts.tol, "classify_no_orth");
        rep.motion = D;
    }
    if (!full_rank) rep.notes.push_back("rank(M) != 3: local and global rigidity are not decided");
    return rep;
}

RigidityReport classify_one_orth(const PsdFactorization& F, const ClassifyOptions& opts) {
    const RankOneProfile P = rank_one_profile(F, opts.tol, opts.arithmetic);
    std::vector<std::string> violations = zero_factor_violations(F, opts.tol);
    if (P.orth_pairs.size() != 1)
        violations.push_back("expected exactly one orthogonal pair, found " + std::to_string(P.orth_pairs.size()));
    for (auto& v : degeneracy_violations(P)) violations.push_back(std::move(v));
    if (!violations.empty()) throw PreconditionError(violations);

    RigidityReport rep;
    rep.tolerance = opts.tol;
    rep.p_bar = P.p_bar();
    rep.q_bar = P.q_bar();
    rep.zero_count = 1;
    rep.one_inf_rigid = Verdict::not_applicable;
    std::optional<WitnessTriple> triple;
    if (P.p_bar() >= 3 && P.q_bar() >= 3) triple = triple_search(P, Regime::one_orth);
    if (triple) {
        rep.witness_triple = to_sources(P, *triple);
        rep.two_inf_rigid = Verdict::yes;
        rep.locally_rigid = rep.globally_rigid = Verdict::unknown;
        rep.notes.push_back("with one zero, uniqueness of a 2-infinitesimally rigid factorization is conjectured, not proven");
    } else {
        const MotionSpace space = solve_two_inf_one_orth(P);
        if (!space.witness)
            throw NumericalError("classify_one_orth: no certifying triple but the motion solver found only trivial motions");
        check_witness(F, *space.witness, {MotionMatrix::identity(3)}, opts.tol, "classify_one_orth");
        rep.motion = *space.witness;
        rep.two_inf_rigid = Verdict::no;
        rep.locally_rigid = rep.globally_rigid = Verdict::no;
    }
    return rep;
}

RigidityReport classify_two_orth(const PsdFactorization& F, const ClassifyOptions& opts) {
    const RankOneProfile P = rank_one_profile(F, opts.tol, opts.arithmetic);
    std::vector<std::string> violations = zero_factor_violations(F, opts.tol);
    if (P.orth_pairs.size() < 2)
        violations.push_back("expected at least two orthogonal pairs, found " + std::to_string(P.orth_pairs.size()));
    for (auto& v : degeneracy_violations(P)) violations.push_back(std::move(v));
    if (!violations.empty()) throw PreconditionError(violations);

    RigidityReport rep;
    rep.tolerance = opts.tol;
    rep.p_bar = P.p_bar();
    rep.q_bar = P.q_bar();
    rep.zero_count = static_cast<int>(P.orth_pairs.size());
    rep.one_inf_rigid = Verdict::not_applicable;
    rep.locally_rigid = rep.globally_rigid = Verdict::unknown;
    if (P.p_bar() >= 3 && P.q_bar() >= 3) {
        rep.two_inf_rigid = Verdict::yes;
        rep.notes.push_back("at least three rank-one factors on each side");
    } else {
        const MotionSpace space = solve_two_inf_two_orth(P);
        check_witness(F, *space.witness, {MotionMatrix::identity(3)}, opts.tol, "classify_two_orth");
        rep.motion = *space.witness;
        rep.two_inf_rigid = Verdict::no;
    }
    return rep;
}

RigidityReport classify(const PsdFactorization& F, const ClassifyOptions& opts) {
    const RankOneProfile P = rank_one_profile(F, opts.tol, opts.arithmetic);
    switch (P.orth_pairs.size()) {
        case 0: return classify_no_orth(F, opts);
        case 1: return classify_one_orth(F, opts);
        default: return classify_two_orth(F, opts);
    }
}

RigidityReport uniqueness(const PsdFactorization& F, const ClassifyOptions& opts) {
    const ValidationReport val = validate(F, opts.tol);
    if (!val.valid()) throw PreconditionError(val.messages);
    const int r = factorization_rank(F, opts.tol, opts.arithmetic);
    if (r != 3) throw PreconditionError("rank(M) = " + std::to_string(r) + ", expected 3");
    const RankOneProfile P = rank_one_profile(F, opts.tol, opts.arithmetic);
    switch (P.orth_pairs.size()) {
        case 0: return classify_no_orth(F, opts, Strictness::non_strict);
        case 1: return classify_one_orth(F, opts);
        default: return classify_two_orth(F, opts);
    }
}

BoundaryReport boundary_report(const PsdFactorization& F, const ClassifyOptions& opts) {
    const Eigen::MatrixXd M = reconstruct(F);
    const double scale = std::max(1e-300, M.cwiseAbs().maxCoeff());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            if (M(i, j) <= opts.tol * scale)
                throw PreconditionError("M has a zero at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                        "): it lies on the boundary for that reason alone");
    const RankOneProfile P = rank_one_profile(F, opts.tol, opts.arithmetic);
    bool all_full = true;
    for (const auto* side : {&F.A, &F.B})
        for (const auto& X : *side)
            if (factor_rank(X, opts.tol) != 2) all_full = false;
    BoundaryReport rep;
    if (all_full) {
        rep.verdict = BoundaryVerdict::interior_certificate;
        rep.evidence = "every factor has rank two, so M is not on the boundary";
    } else if (P.p_bar() >= 3 && P.q_bar() >= 3) {
        rep.verdict = BoundaryVerdict::boundary_consistent;
        rep.evidence = "this factorization has " + std::to_string(P.p_bar()) + " rank-one A factors and " +
                       std::to_string(P.q_bar()) + " rank-one B factors, as every factorization of a boundary matrix must";
    } else {
        rep.verdict = BoundaryVerdict::inconclusive;
        rep.evidence = "rank-deficient factors present but fewer than three rank-one factors on one side";
    }
    return rep;
}

}  // namespace psdrigid
