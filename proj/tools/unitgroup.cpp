// Command line front end: `unitgroup run <file>` and `unitgroup fixtures`.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>

#include "unitgroup/error.hpp"
#include "unitgroup/problem.hpp"

using namespace unitgroup;
namespace fs = std::filesystem;

namespace {

int exit_code(ErrorCode code) {
  switch (error_category(code)) {
    case ErrorCategory::Usage:
      return 1;
    case ErrorCategory::Mathematical:
      return 2;
    case ErrorCategory::Precision:
      return 3;
  }
  return 2;
}

void report_error(const Error& e, bool as_json) {
  if (as_json) {
    nlohmann::json j;
    j["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    std::cerr << j.dump(2) << "\n";
  } else {
    std::cerr << "error: " << e.what() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit groups of very affine curves"};
  app.require_subcommand(1);

  std::string file, format = "json";
  std::optional<double> tolerance;
  std::optional<int> max_doubling, radius_cap;
  bool timing = false;
  CLI::App* run = app.add_subcommand("run", "Compute and verify a unit basis for a problem file");
  run->add_option("file", file, "Problem file (JSON)")->required();
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  run->add_option("--tolerance", tolerance, "Height tolerance")->check(CLI::PositiveNumber);
  run->add_option("--max-doubling", max_doubling, "Doubling cap for heights")->check(CLI::PositiveNumber);
  run->add_option("--radius-cap", radius_cap, "Enumeration radius cap")->check(CLI::PositiveNumber);
  run->add_flag("--timing", timing, "Include wall time in the report");

  std::string dir = UNITGROUP_FIXTURE_DIR;
  CLI::App* list = app.add_subcommand("fixtures", "List bundled example problems");
  list->add_option("--dir", dir, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*list) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    if (ec) {
      std::cerr << "error: cannot list " << dir << "\n";
      return 1;
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        ProblemFile p = load_problem(f);
        std::cout << f.filename().string() << "\t" << problem_kind_name(p.kind) << "\t" << p.name << "\n";
      } catch (const Error& e) {
        std::cout << f.filename().string() << "\tinvalid\t" << e.what() << "\n";
      }
    }
    return 0;
  }

  const bool as_json = format == "json";
  try {
    ProblemFile p = load_problem(file);
    if (tolerance) p.config.tolerance = *tolerance;
    if (max_doubling) p.config.max_doubling = *max_doubling;
    if (radius_cap) p.config.radius_cap = *radius_cap;
    auto start = std::chrono::steady_clock::now();
    UnitReport r = run_problem(p);
    if (timing) r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << emit_report(r, as_json ? ReportFormat::Json : ReportFormat::Text);
    return r.verified() ? 0 : 2;
  } catch (const Error& e) {
    report_error(e, as_json);
    return exit_code(e.code());
  }
}
