#include "psdrigid/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

// "i,j" with 1-based indices.
psdrigid::IndexPair parse_zero(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--zero", "expected i,j");
    const int i = std::stoi(text.substr(0, comma));
    const int j = std::stoi(text.substr(comma + 1));
    if (i < 1 || j < 1) throw CLI::ValidationError("--zero", "indices start at 1");
    return {i - 1, j - 1};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rigidity and uniqueness of size-2 psd factorizations"};
    app.require_subcommand(1);

    psdrigid::JobConfig config;
    std::string format = "json";
    std::uint64_t seed = 0;
    std::vector<std::string> zeros;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        sub->add_option("--tol", config.tolerance, "Tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", config.output_path, "Output path");
        sub->add_flag("--exact", config.exact, "Exact rational arithmetic");
        if (needs_input) sub->add_option("INPUT", config.input_path, "Factorization JSON")->required();
    };

    for (const char* name : {"classify", "uniqueness", "validate", "boundary", "motions"})
        add_common(app.add_subcommand(name), true);
    CLI::App* oracle = app.add_subcommand("oracle", "Randomized motion search");
    add_common(oracle, true);
    oracle->add_option("--order", config.order, "Taylor order s")->check(CLI::Range(1, 8));
    oracle->add_option("--trials", config.trials, "Sample budget")->check(CLI::NonNegativeNumber);

    CLI::App* generate = app.add_subcommand("generate", "Seeded corpus of rank-one factorizations");
    add_common(generate, false);
    generate->add_option("-p", config.p, "Number of A factors")->check(CLI::PositiveNumber);
    generate->add_option("-q", config.q, "Number of B factors")->check(CLI::PositiveNumber);
    generate->add_option("--count", config.count, "Number of instances")->check(CLI::NonNegativeNumber);
    generate->add_option("--zero", zeros, "Prescribed zero i,j (1-based), repeatable");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.format = format == "text" ? psdrigid::OutputFormat::text : psdrigid::OutputFormat::json;
    if (app.get_subcommands().front()->count("--seed") > 0) config.seed = seed;
    try {
        for (const auto& z : zeros) config.zero_pattern.push_back(parse_zero(z));
    } catch (const std::exception& err) {
        std::cerr << "error: bad --zero value: " << err.what() << "\n";
        return 1;
    }

    const psdrigid::JobResult result = psdrigid::run(config);
    if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
    std::cout << result.output;
    return result.exit_code;
}
