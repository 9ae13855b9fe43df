#pragma once

#include "udr/problem_io.hpp"
#include "udr/solver.hpp"
#include "udr/trace_io.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace udr {

enum ExitCode : int { kExitSuccess = 0, kExitNotConverged = 1, kExitInputError = 2 };

/// Runs the scheme named in the config.
IterationTrace execute(const FeasibilityProblem& problem, const RunConfig& config);

/**
 * Diagnostics over every operator a run of this config would build: each
 * set's projection, reflection and relaxed projections; S_0, ..., S_{j_f}
 * and their composite reflections; Q; the product operators and the
 * certifier. With a declared interior point the DR operators are also tested
 * for quasi-nonexpansiveness around it.
 */
std::vector<LabelledReport> run_checks(const FeasibilityProblem& problem, const RunConfig& config);

/// Default trace location next to the document: `<stem>.trace.csv`.
std::filesystem::path default_trace_path(const std::filesystem::path& document);

int run_document(const std::filesystem::path& document, const std::optional<std::filesystem::path>& trace_override,
                 std::ostream& out, std::ostream& err);

int check_document(const std::filesystem::path& document, std::ostream& out, std::ostream& err);

/// Runs every `*.json` document in `dir` concurrently; output is reported in
/// file-name order. Returns the worst exit code.
int run_batch(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

std::string read_file(const std::filesystem::path& path);

} // namespace udr
