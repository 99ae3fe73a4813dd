#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gframes/error.hpp"
#include "gframes/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitUsage = 64;

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void list_theorems() {
  for (auto id : gframes::all_theorem_ids()) {
    std::cout << gframes::to_string(id) << "\t" << gframes::describe(id) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner for g-frame sum and stability theorems on Hilbert C*-modules"};
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list-theorems", list, "Print the theorem-id registry and exit");

  auto* run = app.add_subcommand("run", "Run the scenarios in a JSON file");
  std::string file;
  std::string report_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  bool no_timestamp = false;
  run->add_option("file", file, "Scenario file")->required();
  run->add_option("--report", report_path, "Write the report here instead of standard output");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--seed", seed, "Override the base seed of every scenario");
  run->add_flag("--no-timestamp", no_timestamp, "Omit timestamp and timing fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (list) {
    list_theorems();
    return 0;
  }
  if (!*run) {
    std::cerr << app.help();
    return kExitUsage;
  }

  std::vector<gframes::RunReport> runs;
  try {
    for (const auto& s : gframes::load_scenarios(file)) runs.push_back(gframes::run_scenario(s, seed));
  } catch (const gframes::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::string text;
  if (format == "csv") {
    text = gframes::report_csv(runs);
  } else {
    text = gframes::report_json(runs, {!no_timestamp, no_timestamp ? "" : utc_now()}).dump(2) + "\n";
  }
  if (report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << report_path << "\n";
      return kExitUsage;
    }
    out << text;
  }

  const int code = gframes::exit_code(runs);
  for (const auto& r : runs) {
    std::cerr << r.scenario << ": " << r.aggregate.holds << " hold, " << r.aggregate.hypothesis_fails
              << " hypothesis fails, " << r.aggregate.conclusion_fails << " conclusion fails\n";
  }
  return code;
}
