// intdist: interaction-distance sweeps from a JSON configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "intdist/csv.hpp"
#include "intdist/distance.hpp"
#include "intdist/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunFlags {
  std::string config_path;
  intdist::ConfigOverrides overrides;
  bool strict = false;
};

void add_run_options(CLI::App& cmd, RunFlags& flags) {
  cmd.add_option("--config", flags.config_path, "JSON configuration file (defaults if omitted)");
  cmd.add_option("--v-max", flags.overrides.v_max, "Upper end of the coupling grid");
  cmd.add_option("--beta", flags.overrides.beta, "Inverse temperature; replaces any temperature grid");
  cmd.add_option("--seed", flags.overrides.seed, "Optimizer seed");
  cmd.add_option("--out", flags.overrides.out, "Output path, - for stdout");
  cmd.add_option("--format", flags.overrides.format, "csv or json (JSON lines)")
      ->check(CLI::IsMember({"csv", "json", "jsonl"}));
  cmd.add_flag("--timing", flags.overrides.timing, "Add a wall_time_s column");
  cmd.add_flag("--strict", flags.strict, "Exit 3 if any point fails to converge");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw intdist::ConfigError("--config", "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class Rows>
bool all_converged(const Rows& rows) {
  for (const auto& r : rows) {
    if (!r.converged || !r.error.empty()) return false;
  }
  return true;
}

template <class Run, class Write>
int run(const RunFlags& flags, Run run_rows, Write write_rows) {
  intdist::SweepConfig config;
  try {
    const std::string text = flags.config_path.empty() ? "{}" : read_file(flags.config_path);
    config = intdist::parse_config(text, flags.overrides);
  } catch (const intdist::ConfigError& e) {
    std::cerr << "intdist: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::ofstream file;
  if (config.output_path != "-") {
    file.open(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "intdist: config error: output.path: cannot open " << config.output_path
                << " for writing\n";
      return kExitConfig;
    }
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;

  const auto rows = run_rows(config);
  write_rows(out, config, rows);
  out.flush();
  if (!out) {
    std::cerr << "intdist: failed writing output\n";
    return kExitConfig;
  }
  if (!all_converged(rows)) {
    std::cerr << "intdist: warning: some points failed or did not converge (see the converged and error columns)\n";
    if (flags.strict) return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interaction distance of thermal and entanglement spectra"};
  app.require_subcommand(1);

  RunFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "D over the coupling (and temperature) grid");
  add_run_options(*sweep, sweep_flags);

  RunFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "Exact D against the first-order estimate");
  add_run_options(*compare, compare_flags);

  app.add_subcommand("bound", "Print the upper bound 3 - 2 sqrt(2)");
  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (app.got_subcommand("bound")) {
    std::cout << intdist::format_number(intdist::df_upper_bound()) << '\n';
    return kExitOk;
  }
  if (app.got_subcommand("version")) {
    std::cout << "intdist " << INTDIST_VERSION << '\n';
    return kExitOk;
  }
  if (app.got_subcommand("sweep")) {
    return run(sweep_flags, intdist::run_sweep,
               [](std::ostream& o, const auto& c, const auto& r) { intdist::write_sweep(o, c, r); });
  }
  return run(compare_flags, intdist::run_compare,
             [](std::ostream& o, const auto& c, const auto& r) { intdist::write_compare(o, c, r); });
}
