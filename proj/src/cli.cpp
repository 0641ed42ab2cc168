#include "psdrigid/cli.hpp"

#include "psdrigid/classify.hpp"
#include "psdrigid/errors.hpp"
#include "psdrigid/io.hpp"
#include "psdrigid/motions.hpp"
#include "psdrigid/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace psdrigid {

using nlohmann::json;

namespace {

// Thrown for unreadable or unwritable files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

json vectors_to_json(const std::vector<Eigen::VectorXd>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    return out;
}

std::string kind_name(MotionKind kind) {
    switch (kind) {
        case MotionKind::trivial_only: return "trivial_only";
        case MotionKind::affine_flex: return "affine_flex";
        case MotionKind::cone_flex: return "cone_flex";
    }
    return "trivial_only";
}

json motion_space_to_json(const MotionSpace& space) {
    json out;
    out["kind"] = kind_name(space.kind);
    json basis = json::array();
    for (const auto& D : space.basis) basis.push_back(matrix_to_json(D.D));
    out["basis"] = basis;
    out["witness"] = space.witness ? matrix_to_json(space.witness->D) : json(nullptr);
    return out;
}

json cone_to_json(const ConeSystem& sys, const RankOneProfile& P) {
    json out;
    out["variant"] = sys.variant == Variant::full ? "full" : "one_orth";
    out["C"] = matrix_to_json(sys.C);
    out["right_kernel"] = vectors_to_json(right_kernel_structured(sys.variant));
    const KernelVector minors = left_kernel_minors(sys);
    out["left_kernel_minors"] = std::vector<double>(minors.v.data(), minors.v.data() + minors.v.size());
    out["left_kernel_rank_deficient"] = minors.rank_deficient;
    if (!minors.rank_deficient) {
        const Eigen::VectorXd f = left_kernel_formula(P, sys.variant);
        out["left_kernel_formula"] = std::vector<double>(f.data(), f.data() + f.size());
    }
    const ConeTest test = cone_full_dimensional(sys, P.tol);
    out["full_dimensional"] = test.full_dimensional;
    out["lp_margin"] = test.margin;
    if (test.full_dimensional)
        out["interior"] = std::vector<double>(test.interior.data(), test.interior.data() + test.interior.size());
    return out;
}

json motions_report(const PsdFactorization& F, double tol, Arithmetic mode) {
    json out;
    json trivial = json::array();
    const auto basis = F.k == 2 ? trivial_basis_k2() : trivial_basis_general(F.k);
    for (const auto& D : basis) trivial.push_back(matrix_to_json(D.D));
    out["trivial_basis"] = trivial;
    if (F.k != 2) return out;

    const RankOneProfile P = rank_one_profile(F, tol, mode);
    out["p_bar"] = P.p_bar();
    out["q_bar"] = P.q_bar();
    out["zero_count"] = static_cast<int>(P.orth_pairs.size());
    const bool degenerate = !P.degenerate_a.empty() || !P.degenerate_b.empty();
    if (degenerate) {
        out["notes"] = json::array({"parallel rank-one vectors; cone system not built"});
        return out;
    }
    if (P.orth_pairs.empty()) {
        out["cone"] = cone_to_json(build_cone_system(P, Variant::full), P);
        out["two_inf_motions"] = motion_space_to_json(solve_two_inf_no_orth(P));
    } else if (P.orth_pairs.size() == 1) {
        const IndexPair z = P.orth_pairs.front();
        const auto [G, S] = normalize_orthogonal_pair(F, P.a_source[z.i], P.b_source[z.j], tol);
        const RankOneProfile Q = rank_one_profile(G, tol);
        out["normalizing_rotation"] = matrix_to_json(S);
        out["cone"] = cone_to_json(build_cone_system(Q, Variant::one_orth), Q);
        out["two_inf_motions"] = motion_space_to_json(solve_two_inf_one_orth(P));
    } else {
        out["two_inf_motions"] = motion_space_to_json(solve_two_inf_two_orth(P));
    }
    return out;
}

void require_seed(const JobConfig& config) {
    if (!config.seed) throw PreconditionError(config.subcommand + " requires --seed");
}

json run_subcommand(const JobConfig& config) {
    ClassifyOptions opts;
    opts.tol = config.tolerance;
    opts.arithmetic = config.exact ? Arithmetic::exact : Arithmetic::floating;

    if (config.subcommand == "generate") {
        require_seed(config);
        if (config.output_path.empty()) throw PreconditionError("generate requires --out DIR");
        const auto files = emit_corpus(config.p, config.q, config.zero_pattern, config.count, *config.seed,
                                       config.output_path, config.tolerance);
        const json manifest = json::parse(read_file((std::filesystem::path(config.output_path) / "manifest.json").string()));
        int rigid = 0;
        for (const auto& entry : manifest)
            if (entry["verdicts"]["two_inf_rigid"] == true) ++rigid;
        json out;
        out["files"] = files;
        out["manifest"] = "manifest.json";
        out["rigid"] = rigid;
        out["flexible"] = static_cast<int>(files.size()) - rigid;
        out["seed"] = *config.seed;
        return out;
    }

    const PsdFactorization F = parse_factorization(read_file(config.input_path));
    if (config.exact && !F.exact) throw PreconditionError("--exact needs rational \"num/den\" factor entries");

    if (config.subcommand == "classify") return report_to_json(classify(F, opts));
    if (config.subcommand == "uniqueness") return report_to_json(uniqueness(F, opts));
    if (config.subcommand == "validate") {
        const ValidationReport v = validate(F, config.tolerance);
        json out;
        out["valid"] = v.valid();
        out["psd_failures_A"] = v.psd_failures_A;
        out["psd_failures_B"] = v.psd_failures_B;
        out["max_product_mismatch"] = v.max_product_mismatch;
        out["messages"] = v.messages;
        out["rank"] = F.p() > 0 && F.q() > 0 ? factorization_rank(F, config.tolerance, opts.arithmetic) : 0;
        out["tolerance"] = config.tolerance;
        return out;
    }
    if (config.subcommand == "boundary") {
        const BoundaryReport b = boundary_report(F, opts);
        json out;
        out["verdict"] = to_string(b.verdict);
        out["evidence"] = b.evidence;
        out["tolerance"] = config.tolerance;
        return out;
    }
    if (config.subcommand == "motions") {
        json out = motions_report(F, config.tolerance, opts.arithmetic);
        out["tolerance"] = config.tolerance;
        return out;
    }
    if (config.subcommand == "oracle") {
        require_seed(config);
        const OracleVerdict v = sample_motion_oracle(F, config.order, config.trials, *config.seed, config.tolerance);
        json out;
        out["found_nontrivial"] = v.found_nontrivial;
        out["motion"] = v.motion ? matrix_to_json(v.motion->D) : json(nullptr);
        out["order"] = config.order;
        out["trials_used"] = v.trials_used;
        out["seed"] = v.seed;
        out["tolerance"] = config.tolerance;
        return out;
    }
    throw SchemaError("unknown subcommand '" + config.subcommand + "'");
}

std::string render(const json& report, OutputFormat format) {
    return format == OutputFormat::json ? report.dump(2) + "\n" : render_text(report);
}

}  // namespace

JobResult run(const JobConfig& config) {
    JobResult result;
    try {
        if (!(config.tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
        result.output = render(run_subcommand(config), config.format);
        if (!config.output_path.empty() && config.subcommand != "generate") write_file(config.output_path, result.output);
    } catch (const PreconditionError& err) {
        json out;
        out["error"] = "precondition";
        out["violations"] = err.violations();
        result.exit_code = 2;
        result.output = render(out, config.format);
        result.error = err.what();
    } catch (const SchemaError& err) {
        result.exit_code = 1;
        result.error = err.what();
    } catch (const IoError& err) {
        result.exit_code = 1;
        result.error = err.what();
    } catch (const NumericalError& err) {
        result.exit_code = 1;
        result.error = err.what();
    } catch (const std::filesystem::filesystem_error& err) {
        result.exit_code = 1;
        result.error = err.what();
    }
    return result;
}

std::vector<std::string> emit_corpus(int p, int q, const std::vector<IndexPair>& zero_pattern, int count,
                                     std::uint64_t seed, const std::string& output_dir, double tol) {
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    std::vector<std::string> files;
    json manifest = json::array();
    for (int n = 0; n < count; ++n) {
        const PsdFactorization F = generate_rank_one(p, q, zero_pattern, seed + static_cast<std::uint64_t>(n));
        std::ostringstream name;
        name << "instance_" << std::setw(4) << std::setfill('0') << n << ".json";
        write_file((fs::path(output_dir) / name.str()).string(), serialize_factorization(F) + "\n");
        ClassifyOptions opts;
        opts.tol = tol;
        const RigidityReport r = classify(F, opts);
        json entry;
        entry["file"] = name.str();
        entry["zero_count"] = r.zero_count;
        entry["verdicts"] = verdicts_to_json(r);
        manifest.push_back(std::move(entry));
        files.push_back(name.str());
    }
    write_file((fs::path(output_dir) / "manifest.json").string(), manifest.dump(2) + "\n");
    return files;
}

}  // namespace psdrigid
