// Command-line front end: run / check / repro / batch.

#include "udr/harness.hpp"
#include "udr/repro.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

int repro_command(const std::string& id, const fs::path& workdir, bool emit) {
  const auto ids = udr::repro::experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    std::cerr << "unknown experiment '" << id << "'; known:";
    for (const auto& k : ids) std::cerr << ' ' << k;
    std::cerr << '\n';
    return udr::kExitInputError;
  }
  if (emit) {
    fs::create_directories(workdir);
    for (const auto& doc : udr::repro::documents(id)) {
      const fs::path p = workdir / (doc.name + ".json");
      std::ofstream(p, std::ios::binary) << doc.text;
      std::cout << p.string() << '\n';
    }
    return udr::kExitSuccess;
  }
  bool all = true;
  for (const auto& r : udr::repro::run(id, workdir)) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.description;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
    std::cout << '\n';
    all = all && r.pass;
  }
  return all ? udr::kExitSuccess : udr::kExitNotConverged;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unrestricted Douglas-Rachford solvers for convex feasibility problems"};
  app.require_subcommand(1);

  std::string run_doc;
  std::string trace_path;
  auto* run = app.add_subcommand("run", "Iterate the scheme configured in a problem document");
  run->add_option("problem", run_doc, "Problem document (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--trace", trace_path, "Trace output path (default: <problem>.trace.csv)");

  std::string check_doc;
  auto* check = app.add_subcommand("check", "Sampled operator-class diagnostics for a problem document");
  check->add_option("problem", check_doc, "Problem document (JSON)")->required()->check(CLI::ExistingFile);

  std::string repro_id;
  std::string repro_dir = "repro_out";
  bool emit = false;
  auto* repro = app.add_subcommand("repro", "Reproduce one acceptance experiment (AC-1 ... AC-9)");
  repro->add_option("id", repro_id, "Experiment id, e.g. AC-2")->required();
  repro->add_option("--out", repro_dir, "Directory for traces or emitted documents");
  repro->add_flag("--emit", emit, "Write the bundled problem documents instead of running");

  std::string batch_dir;
  auto* batch = app.add_subcommand("batch", "Run every *.json document in a directory");
  batch->add_option("dir", batch_dir, "Directory of problem documents")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : udr::kExitInputError;
  }

  if (*run) {
    std::optional<fs::path> override_path;
    if (!trace_path.empty()) override_path = trace_path;
    return udr::run_document(run_doc, override_path, std::cout, std::cerr);
  }
  if (*check) return udr::check_document(check_doc, std::cout, std::cerr);
  if (*repro) return repro_command(repro_id, repro_dir, emit);
  return udr::run_batch(batch_dir, std::cout, std::cerr);
}
