#include "psdrigid/factorization.hpp"

#include "psdrigid/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace psdrigid {

namespace {

bool psd_scaled(const SymMat& X, double tol) {
    const double s = std::max(1.0, X.max_abs());
    for (const auto& I : principal_index_sets(X.dim()))
        if (principal_minor(X, I) < -tol * std::pow(s, static_cast<double>(I.size()))) return false;
    return true;
}

SymMat transform(const SymMat& X, const Eigen::Matrix2d& L) {
    // L^T X L
    return SymMat::from_dense(L.transpose() * X.dense() * L);
}

std::vector<Rational> exact_entries(const SymMat& X) {
    std::vector<Rational> r;
    for (double v : X.upper()) r.push_back(rational_from_double(v));
    return r;
}

ExactFactors exact_view(const PsdFactorization& F) {
    if (F.exact) return *F.exact;
    ExactFactors E;
    for (const auto& X : F.A) E.A.push_back(exact_entries(X));
    for (const auto& X : F.B) E.B.push_back(exact_entries(X));
    return E;
}

Rational exact_inner(const std::vector<Rational>& x, const std::vector<Rational>& y) {
    return x[0] * y[0] + 2 * x[1] * y[1] + x[2] * y[2];
}

int exact_factor_rank(const std::vector<Rational>& x, bool& psd) {
    const Rational det = x[0] * x[2] - x[1] * x[1];
    psd = x[0] >= 0 && x[2] >= 0 && det >= 0;
    if (x[0] == 0 && x[2] == 0) return 0;
    return det == 0 ? 1 : 2;
}

Vec2 unit_at(double angle) { return Vec2(std::cos(angle), std::sin(angle)); }

}  // namespace

int tolerant_sign(double value, double scale, double tol) {
    if (std::abs(value) <= tol * scale) return 0;
    return value > 0 ? 1 : -1;
}

ValidationReport validate(const PsdFactorization& F, double tol) {
    ValidationReport rep;
    for (const auto* side : {&F.A, &F.B})
        for (const auto& X : *side)
            if (X.dim() != F.k) rep.dimensions_ok = false;
    if (F.M && (F.M->rows() != F.p() || F.M->cols() != F.q())) rep.dimensions_ok = false;
    if (!rep.dimensions_ok) {
        rep.messages.push_back("factor or matrix dimensions are inconsistent");
        return rep;
    }
    for (int i = 0; i < F.p(); ++i)
        if (!psd_scaled(F.A[i], tol)) {
            rep.psd_failures_A.push_back(i);
            rep.messages.push_back("A factor " + std::to_string(i + 1) + " is not psd");
        }
    for (int j = 0; j < F.q(); ++j)
        if (!psd_scaled(F.B[j], tol)) {
            rep.psd_failures_B.push_back(j);
            rep.messages.push_back("B factor " + std::to_string(j + 1) + " is not psd");
        }
    if (F.M && F.p() > 0 && F.q() > 0) {
        const Eigen::MatrixXd R = reconstruct(F);
        const double scale = std::max(1.0, F.M->cwiseAbs().maxCoeff());
        rep.max_product_mismatch = (R - *F.M).cwiseAbs().maxCoeff();
        rep.mismatch_ok = rep.max_product_mismatch <= tol * scale;
        if (!rep.mismatch_ok) rep.messages.push_back("stored M differs from the factor products");
    }
    return rep;
}

Eigen::MatrixXd reconstruct(const PsdFactorization& F) {
    if (F.A.empty() || F.B.empty()) throw PreconditionError("reconstruct: empty factor list");
    Eigen::MatrixXd M(F.p(), F.q());
    for (int i = 0; i < F.p(); ++i)
        for (int j = 0; j < F.q(); ++j) M(i, j) = inner(F.A[i], F.B[j]);
    return M;
}

int matrix_rank(const Eigen::MatrixXd& M, double tol) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& s = svd.singularValues();
    if (s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++r;
    return r;
}

int factorization_rank(const PsdFactorization& F, double tol, Arithmetic mode) {
    if (mode == Arithmetic::floating || F.k != 2) return matrix_rank(reconstruct(F), tol);
    const ExactFactors E = exact_view(F);
    std::vector<std::vector<Rational>> rows;
    for (const auto& x : E.A) {
        std::vector<Rational> row;
        for (const auto& y : E.B) row.push_back(exact_inner(x, y));
        rows.push_back(std::move(row));
    }
    return exact_rank(std::move(rows));
}

PsdFactorization gl_act(const PsdFactorization& F, const Eigen::Matrix2d& S) {
    if (F.k != 2) throw std::invalid_argument("gl_act: k = 2 required");
    if (std::abs(S.determinant()) <= kDefaultTol) throw PreconditionError("gl_act: S is singular");
    const Eigen::Matrix2d Sinv_t = S.inverse().transpose();
    PsdFactorization G;
    G.k = 2;
    for (const auto& X : F.A) G.A.push_back(transform(X, S));
    for (const auto& X : F.B) G.B.push_back(transform(X, Sinv_t));
    G.M = F.M;
    return G;
}

std::pair<PsdFactorization, Eigen::Matrix2d> normalize_orthogonal_pair(const PsdFactorization& F, int i, int j,
                                                                        double tol) {
    if (i < 0 || i >= F.p() || j < 0 || j >= F.q()) throw std::out_of_range("normalize_orthogonal_pair: index");
    if (factor_rank(F.A[i], tol) != 1 || factor_rank(F.B[j], tol) != 1)
        throw PreconditionError("normalize_orthogonal_pair: factors are not both rank one");
    const Vec2 a = rank_one_root(F.A[i]);
    const Vec2 b = rank_one_root(F.B[j]);
    if (tolerant_sign(a.dot(b), a.norm() * b.norm(), tol) != 0)
        throw PreconditionError("normalize_orthogonal_pair: vectors are not orthogonal");
    const Vec2 u = a / a.norm();
    Eigen::Matrix2d S;
    S << u(0), -u(1), u(1), u(0);  // S^T u = (1,0)
    PsdFactorization G = gl_act(F, S);
    // write the normalized pair exactly
    const double lambda = a.norm();
    const double mu = std::abs(det2(u, b));
    G.A[i] = SymMat::from_upper(2, {lambda * lambda, 0.0, 0.0});
    G.B[j] = SymMat::from_upper(2, {0.0, 0.0, mu * mu});
    return {G, S};
}

RankOneProfile rank_one_profile(const PsdFactorization& F, double tol, Arithmetic mode) {
    if (F.k != 2) throw std::invalid_argument("rank_one_profile: k = 2 required");
    RankOneProfile P;
    P.tol = tol;
    P.mode = mode;
    std::vector<ExactVec2> ea, eb;
    std::vector<std::string> problems;

    if (mode == Arithmetic::exact) {
        const ExactFactors E = exact_view(F);
        auto scan = [&](const std::vector<std::vector<Rational>>& side, const std::vector<SymMat>& dbl, char label,
                        std::vector<Vec2>& vecs, std::vector<int>& src, std::vector<ExactVec2>& ex) {
            for (std::size_t n = 0; n < side.size(); ++n) {
                bool psd = false;
                const int r = exact_factor_rank(side[n], psd);
                if (!psd) problems.push_back(std::string(1, label) + " factor " + std::to_string(n + 1) + " is not psd");
                if (psd && r == 1) {
                    vecs.push_back(rank_one_root(dbl[n]));
                    src.push_back(static_cast<int>(n));
                    ex.push_back({exact_rank_one_vector({side[n][0], side[n][1], side[n][2]})});
                }
            }
        };
        scan(E.A, F.A, 'A', P.a, P.a_source, ea);
        scan(E.B, F.B, 'B', P.b, P.b_source, eb);
    } else {
        auto scan = [&](const std::vector<SymMat>& side, char label, std::vector<Vec2>& vecs, std::vector<int>& src) {
            for (std::size_t n = 0; n < side.size(); ++n) {
                if (!psd_scaled(side[n], tol))
                    problems.push_back(std::string(1, label) + " factor " + std::to_string(n + 1) + " is not psd");
                else if (factor_rank(side[n], tol) == 1) {
                    vecs.push_back(rank_one_root(side[n]));
                    src.push_back(static_cast<int>(n));
                }
            }
        };
        scan(F.A, 'A', P.a, P.a_source);
        scan(F.B, 'B', P.b, P.b_source);
    }
    if (!problems.empty()) throw PreconditionError(problems);

    const int pb = P.p_bar(), qb = P.q_bar();
    const bool ex = mode == Arithmetic::exact;
    P.det_a_sign.assign(pb, std::vector<int>(pb, 0));
    P.det_b_sign.assign(qb, std::vector<int>(qb, 0));
    P.dot_sign.assign(pb, std::vector<int>(qb, 0));
    for (int i = 0; i < pb; ++i)
        for (int j = 0; j < pb; ++j)
            if (i != j)
                P.det_a_sign[i][j] = ex ? exact_det2_sign(ea[i].coords, ea[j].coords)
                                        : tolerant_sign(det2(P.a[i], P.a[j]), P.a[i].norm() * P.a[j].norm(), tol);
    for (int i = 0; i < qb; ++i)
        for (int j = 0; j < qb; ++j)
            if (i != j)
                P.det_b_sign[i][j] = ex ? exact_det2_sign(eb[i].coords, eb[j].coords)
                                        : tolerant_sign(det2(P.b[i], P.b[j]), P.b[i].norm() * P.b[j].norm(), tol);
    for (int i = 0; i < pb; ++i)
        for (int j = 0; j < qb; ++j)
            P.dot_sign[i][j] = ex ? exact_dot_sign(ea[i].coords, eb[j].coords)
                                  : tolerant_sign(P.a[i].dot(P.b[j]), P.a[i].norm() * P.b[j].norm(), tol);

    for (int i = 0; i < pb; ++i)
        for (int j = 0; j < qb; ++j)
            if (P.dot_sign[i][j] == 0) P.orth_pairs.push_back({i, j});
    for (int i = 0; i < pb; ++i)
        for (int j = i + 1; j < pb; ++j)
            if (P.det_a_sign[i][j] == 0) P.degenerate_a.push_back({i, j});
    for (int i = 0; i < qb; ++i)
        for (int j = i + 1; j < qb; ++j)
            if (P.det_b_sign[i][j] == 0) P.degenerate_b.push_back({i, j});
    return P;
}

PsdFactorization generate_factorization(const GeneratorShape& shape, const std::vector<IndexPair>& zero_pattern,
                                        std::uint64_t seed) {
    const int pa = shape.rank_one_a, qb = shape.rank_one_b;
    if (pa < 0 || qb < 0 || shape.full_rank_a < 0 || shape.full_rank_b < 0)
        throw std::invalid_argument("generate_factorization: negative count");
    if (pa + shape.full_rank_a < 3 || qb + shape.full_rank_b < 3)
        throw PreconditionError("generator: p and q must be at least 3 for a rank-3 matrix");
    std::set<int> used_a, used_b;
    for (const auto& z : zero_pattern) {
        if (z.i < 0 || z.i >= pa || z.j < 0 || z.j >= qb)
            throw PreconditionError("generator: zero (" + std::to_string(z.i + 1) + "," + std::to_string(z.j + 1) +
                                    ") is outside the rank-one block");
        // two zeros sharing a vector would force a parallel pair on the other side
        if (!used_a.insert(z.i).second || !used_b.insert(z.j).second)
            throw PreconditionError("generator: zero pattern is not realizable without parallel vectors");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> magnitude(0.5, 2.0);
    std::bernoulli_distribution coin(0.5);
    constexpr double margin = 0.05;

    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<Vec2> a(pa), b(qb);
        std::vector<Vec2> a_unit(pa), b_unit(qb);
        for (int i = 0; i < pa; ++i) a_unit[i] = unit_at(angle(rng));
        std::vector<int> partner(qb, -1);
        for (const auto& z : zero_pattern) partner[z.j] = z.i;
        for (int j = 0; j < qb; ++j) {
            if (partner[j] >= 0) {
                const Vec2& u = a_unit[partner[j]];
                b_unit[j] = coin(rng) ? Vec2(-u(1), u(0)) : Vec2(u(1), -u(0));
            } else {
                b_unit[j] = unit_at(angle(rng));
            }
        }
        for (int i = 0; i < pa; ++i) a[i] = a_unit[i] * magnitude(rng);
        for (int j = 0; j < qb; ++j) b[j] = b_unit[j] * magnitude(rng);

        PsdFactorization F = from_vectors(a, b);
        auto random_pd = [&] {
            const double th = angle(rng);
            Eigen::Matrix2d R;
            R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
            const Eigen::Vector2d lam(magnitude(rng), magnitude(rng));
            return SymMat::from_dense(R * lam.asDiagonal() * R.transpose());
        };
        for (int n = 0; n < shape.full_rank_a; ++n) F.A.push_back(random_pd());
        for (int n = 0; n < shape.full_rank_b; ++n) F.B.push_back(random_pd());

        bool ok = true;
        for (int i = 0; i < pa && ok; ++i)
            for (int j = i + 1; j < pa && ok; ++j) ok = std::abs(det2(a_unit[i], a_unit[j])) >= margin;
        for (int i = 0; i < qb && ok; ++i)
            for (int j = i + 1; j < qb && ok; ++j) ok = std::abs(det2(b_unit[i], b_unit[j])) >= margin;
        for (int i = 0; i < pa && ok; ++i)
            for (int j = 0; j < qb && ok; ++j)
                if (partner[j] != i) ok = std::abs(a_unit[i].dot(b_unit[j])) >= margin;
        if (!ok) continue;
        const Eigen::MatrixXd M = reconstruct(F);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        const auto& s = svd.singularValues();
        if (s.size() < 3 || s(2) < 1e-6 * s(0)) continue;
        F.M = M;
        return F;
    }
    throw PreconditionError("generator: no admissible instance after 100 attempts");
}

PsdFactorization generate_rank_one(int p, int q, const std::vector<IndexPair>& zero_pattern, std::uint64_t seed) {
    if (p < 3 || q < 3) throw PreconditionError("generate_rank_one: p and q must be at least 3 for a rank-3 matrix");
    return generate_factorization({p, q, 0, 0}, zero_pattern, seed);
}

PsdFactorization append_rank_two_factors(const PsdFactorization& F, const std::vector<SymMat>& extra_A,
                                         const std::vector<SymMat>& extra_B, double tol) {
    std::vector<std::string> problems;
    auto check = [&](const std::vector<SymMat>& xs, char label) {
        for (std::size_t n = 0; n < xs.size(); ++n)
            if (xs[n].dim() != F.k || !psd_scaled(xs[n], tol) ||
                (F.k == 2 ? factor_rank(xs[n], tol) != 2 : psd_status(xs[n], tol).rank != F.k))
                problems.push_back(std::string("extra ") + label + " factor " + std::to_string(n + 1) +
                                   " is not positive definite");
    };
    check(extra_A, 'A');
    check(extra_B, 'B');
    if (!problems.empty()) throw PreconditionError(problems);
    PsdFactorization G = F;
    G.A.insert(G.A.end(), extra_A.begin(), extra_A.end());
    G.B.insert(G.B.end(), extra_B.begin(), extra_B.end());
    if (G.exact) {
        for (const auto& X : extra_A) G.exact->A.push_back(exact_entries(X));
        for (const auto& X : extra_B) G.exact->B.push_back(exact_entries(X));
    }
    G.M = reconstruct(G);
    return G;
}

PsdFactorization from_vectors(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    PsdFactorization F;
    F.k = 2;
    for (const auto& v : a) F.A.push_back(SymMat::outer(v));
    for (const auto& v : b) F.B.push_back(SymMat::outer(v));
    if (!a.empty() && !b.empty()) F.M = reconstruct(F);
    return F;
}

RankOneProfile profile_from_vectors(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double tol) {
    PsdFactorization F;
    F.k = 2;
    for (const auto& v : a) F.A.push_back(SymMat::outer(v));
    for (const auto& v : b) F.B.push_back(SymMat::outer(v));
    RankOneProfile P = rank_one_profile(F, tol);
    if (P.p_bar() != static_cast<int>(a.size()) || P.q_bar() != static_cast<int>(b.size()))
        throw PreconditionError("profile_from_vectors: zero vector");
    return P;
}

}  // namespace psdrigid
