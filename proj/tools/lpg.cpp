// lpg: batch front end for the groupoid / L^p workbench.
//
//   lpg run SPEC [--format text|json] [--out DIR] [--seed N] [--tolerance KEY=VAL]...
//   lpg list SPEC
//
// Exit status: 0 no failed task, 1 some task failed, 2 usage or parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lpg/cli/run.hpp"

namespace fs = std::filesystem;
using namespace lpg;

namespace {

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite groupoid and L^p-operator algebra workbench"};
  app.require_subcommand(1);

  std::string spec_path, format = "text", out_dir;
  std::uint64_t seed = 1;
  std::vector<std::string> tolerances;
  bool timings = false, serial = false;

  auto* run = app.add_subcommand("run", "execute the tasks of a spec file");
  run->add_option("spec", spec_path, "spec file")->required();
  run->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--out", out_dir, "write report.txt and report.json into DIR (default $LPG_OUT_DIR)");
  run->add_option("--seed", seed, "seed for tasks without their own");
  run->add_option("--tolerance", tolerances, "KEY=VAL with KEY in sandwich, collapse, interval");
  run->add_flag("--timings", timings, "show per-task wall time in the text report");
  run->add_flag("--serial", serial, "run tasks and kernels serially");

  auto* list = app.add_subcommand("list", "parse a spec file and list its tasks");
  list->add_option("spec", spec_path, "spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cli::SpecFile spec;
  try {
    spec = cli::parse_spec(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (list->parsed()) {
    std::cout << spec.tasks.size() << " task(s) in " << spec.origin << "\n";
    for (const auto& t : spec.tasks) {
      std::cout << "  " << t.id << ": " << t.command;
      for (const auto& [k, v] : t.params)
        if (k != "command") std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
    return 0;
  }

  cli::RunOptions opts;
  opts.seed = seed;
  opts.policy = serial ? ExecutionPolicy::Serial : ExecutionPolicy::Parallel;
  try {
    for (const auto& t : tolerances) opts.tolerances.set(t);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (out_dir.empty()) {
    if (const char* env = std::getenv("LPG_OUT_DIR")) out_dir = env;
  }

  const cli::Report report = cli::run(spec, opts);
  const std::string text = cli::render_text(report, timings);
  const std::string json = cli::render_json(report);
  std::cout << (format == "json" ? json : text);

  if (!out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !write_file(fs::path(out_dir) / "report.txt", text) || !write_file(fs::path(out_dir) / "report.json", json)) {
      std::cerr << "error: cannot write report to " << out_dir << "\n";
      return 2;
    }
  }
  return report.failed() ? 1 : 0;
}
