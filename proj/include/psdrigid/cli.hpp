#pragma once

#include "psdrigid/factorization.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psdrigid {

enum class OutputFormat { json, text };

struct JobConfig {
    std::string subcommand;  // classify, uniqueness, validate, generate, boundary, motions, oracle
    std::string input_path;
    std::string output_path;  // report file, or the corpus directory for generate
    double tolerance = kDefaultTol;
    std::optional<std::uint64_t> seed;
    OutputFormat format = OutputFormat::json;
    bool exact = false;
    // generate
    int p = 3;
    int q = 3;
    std::vector<IndexPair> zero_pattern;  // 0-based
    int count = 1;
    // oracle
    int order = 2;
    int trials = 10000;
};

struct JobResult {
    int exit_code = 0;   // 0 done, 2 precondition refused, 1 I/O, schema or numerical failure
    std::string output;  // serialized report (also written to output_path when set)
    std::string error;
};

JobResult run(const JobConfig& config);

// Writes count instance files and manifest.json into output_dir and returns
// the instance file names. Manifest entries: {file, zero_count, verdicts}.
std::vector<std::string> emit_corpus(int p, int q, const std::vector<IndexPair>& zero_pattern, int count,
                                     std::uint64_t seed, const std::string& output_dir,
                                     double tol = kDefaultTol);

}  // namespace psdrigid
