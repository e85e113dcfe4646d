// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/report.hpp"

namespace hqec::cli {

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchOptions {
    std::size_t jobs = 1;
    double timeout_s = 600;
    bool timing = true;
    bool structural_shortcut = true;
};

struct BenchOutcome {
    Report report;
    std::vector<std::string> mismatches;  // names of records whose expectation failed
};

/// Runs every challenge of a manifest; files resolve relative to dir.
/// Throws Error on manifest problems.
BenchOutcome run_bench(const std::filesystem::path& dir, const std::filesystem::path& manifest,
                       const BenchOptions& opt);

}  // namespace hqec::cli
