#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intdist/distance.hpp"
#include "intdist/models.hpp"

namespace intdist {

// Parameter sweeps over interaction strength and temperature, as driven by
// the command-line tool.

enum class ModelKind { Dimer, Chain };
enum class Quantity { Thermal, Entanglement };
enum class OutputFormat { Csv, JsonLines };
enum class PerturbativeForm { Linear, Unexpanded };

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  /// Evenly spaced, both ends included; a single step yields {min}.
  std::vector<double> points() const;
};

/// Uniform open chain: hopping t, potential mu, nearest-neighbour V swept.
struct ChainSettings {
  int n_sites = 6;
  double t = 1.0;
  double mu = 0.0;
  std::vector<int> region;  // modes of A; empty means the left half
};

struct SweepConfig {
  ModelKind model = ModelKind::Dimer;
  DimerParams dimer;  // v is ignored; the coupling grid supplies it
  ChainSettings chain;
  Quantity quantity = Quantity::Thermal;
  Grid coupling{0.0, 6.0, 61};
  double beta = 1.0;
  std::optional<Grid> temperature;  // replaces beta when present
  OptimizerOptions optimizer;
  std::string output_path = "-";  // "-" is stdout
  OutputFormat format = OutputFormat::Csv;
  int threads = 0;  // 0: hardware concurrency
  bool timing = false;  // adds a wall_time_s column; output is then not reproducible
  PerturbativeForm perturbative_form = PerturbativeForm::Linear;
};

/// Invalid configuration. `field()` is the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<double> v_max;
  std::optional<double> beta;  // also drops any temperature grid
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<bool> timing;
};

/// Parses and validates a JSON document; unknown keys are rejected.
SweepConfig parse_config(std::string_view json_text, const ConfigOverrides& overrides = {});

/// Throws ConfigError for grids that are empty or reversed, non-positive
/// temperatures, and inconsistent model settings.
void validate(const SweepConfig& config);

/// The fully resolved configuration as compact JSON with sorted keys,
/// minus output.path.
std::string config_json(const SweepConfig& config);

/// config.threads (or the hardware count), capped by INTDIST_THREADS.
int worker_count(const SweepConfig& config);

struct SweepRow {
  double v = 0.0;
  double temperature = 1.0;
  double beta = 1.0;
  double d = 0.0;
  std::vector<double> epsilons;
  bool converged = false;
  double wall_time_s = 0.0;
  std::string error;  // set when the point failed numerically
};

struct CompareRow {
  double v = 0.0;
  double temperature = 1.0;
  double beta = 1.0;
  double exact = 0.0;
  double perturbative = 0.0;
  double abs_diff = 0.0;
  bool reliable = false;  // perturbative estimate within its stated regime
  bool converged = false;
  double wall_time_s = 0.0;
  std::string error;
};

/// One row per (V, T) point, V outer and T inner, whatever the thread count.
std::vector<SweepRow> run_sweep(const SweepConfig& config);
std::vector<CompareRow> run_compare(const SweepConfig& config);

void write_sweep(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows);
void write_compare(std::ostream& out, const SweepConfig& config,
                   const std::vector<CompareRow>& rows);

/// Model parameters of a row, as compact JSON.
std::string model_params_json(const SweepConfig& config);

}  // namespace intdist
