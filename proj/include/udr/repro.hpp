#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace udr::repro {

struct Document {
  std::string name; // file stem, e.g. "ac2_three_balls"
  std::string text; // full problem + run document
};

struct CriterionResult {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
};

/// "AC-1", ..., "AC-9".
std::vector<std::string> experiment_ids();

/// Problem documents that fully specify the experiment. Empty for the
/// control-law suite, which needs no sets.
std::vector<Document> documents(const std::string& id);

/// Catalog instance with one set of each kind in R^dim, drawn from `seed`.
std::string catalog_document(std::size_t dim, std::uint64_t seed);

/// Runs one experiment. Traces are written under `workdir`.
std::vector<CriterionResult> run(const std::string& id, const std::filesystem::path& workdir);

} // namespace udr::repro
