#include "intdist/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numeric>
#include <ostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "intdist/csv.hpp"
#include "intdist/perturbation.hpp"
#include "intdist/pipeline.hpp"
#include "intdist/spectra.hpp"

namespace intdist {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---- parsing --------------------------------------------------------------

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(where, key), "unknown key");
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "must be an object");
  return j;
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
  return x;
}

int get_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "must be an integer");
  const auto x = j.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ConfigError(field, "out of range");
  }
  return static_cast<int>(x);
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "must be a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) throw ConfigError(field, "must be true or false");
  return j.get<bool>();
}

Grid parse_grid(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, field, {"min", "max", "steps"});
  Grid g;
  if (!j.contains("min")) throw ConfigError(join(field, "min"), "missing");
  g.min = get_number(j["min"], join(field, "min"));
  g.max = j.contains("max") ? get_number(j["max"], join(field, "max")) : g.min;
  g.steps = j.contains("steps") ? get_int(j["steps"], join(field, "steps")) : 1;
  return g;
}

void parse_model(const json& j, SweepConfig& c) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "dimer") c.model = ModelKind::Dimer;
    else if (name == "chain") c.model = ModelKind::Chain;
    else throw ConfigError("model", "expected \"dimer\" or \"chain\", got \"" + name + "\"");
    return;
  }
  require_object(j, "model");
  if (!j.contains("type")) throw ConfigError("model.type", "missing");
  const auto type = get_string(j["type"], "model.type");
  if (type == "dimer") {
    c.model = ModelKind::Dimer;
    reject_unknown(j, "model", {"type", "t", "delta1", "delta2"});
    if (j.contains("t")) c.dimer.t = get_number(j["t"], "model.t");
    if (j.contains("delta1")) c.dimer.delta1 = get_number(j["delta1"], "model.delta1");
    if (j.contains("delta2")) c.dimer.delta2 = get_number(j["delta2"], "model.delta2");
  } else if (type == "chain") {
    c.model = ModelKind::Chain;
    reject_unknown(j, "model", {"type", "n_sites", "t", "mu", "region"});
    if (j.contains("n_sites")) c.chain.n_sites = get_int(j["n_sites"], "model.n_sites");
    if (j.contains("t")) c.chain.t = get_number(j["t"], "model.t");
    if (j.contains("mu")) c.chain.mu = get_number(j["mu"], "model.mu");
    if (j.contains("region")) {
      const auto& r = j["region"];
      if (!r.is_array()) throw ConfigError("model.region", "must be an array of mode indices");
      c.chain.region.clear();
      for (std::size_t i = 0; i < r.size(); ++i) {
        c.chain.region.push_back(get_int(r[i], "model.region[" + std::to_string(i) + "]"));
      }
    }
  } else {
    throw ConfigError("model.type", "expected \"dimer\" or \"chain\", got \"" + type + "\"");
  }
}

void parse_optimizer(const json& j, OptimizerOptions& o) {
  require_object(j, "optimizer");
  reject_unknown(j, "optimizer", {"seed", "restarts", "max_iter"});
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ConfigError("optimizer.seed", "must be a non-negative integer");
    }
    o.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("restarts")) o.restarts = get_int(j["restarts"], "optimizer.restarts");
  if (j.contains("max_iter")) o.max_iter = get_int(j["max_iter"], "optimizer.max_iter");
}

OutputFormat parse_format(const std::string& s, const std::string& field) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json" || s == "jsonl") return OutputFormat::JsonLines;
  throw ConfigError(field, "expected \"csv\" or \"json\", got \"" + s + "\"");
}

void parse_output(const json& j, SweepConfig& c) {
  require_object(j, "output");
  reject_unknown(j, "output", {"path", "format"});
  if (j.contains("path")) c.output_path = get_string(j["path"], "output.path");
  if (j.contains("format")) c.format = parse_format(get_string(j["format"], "output.format"),
                                                    "output.format");
}

// ---- evaluation -----------------------------------------------------------

struct Point {
  double v;
  double temperature;
  double beta;
};

std::vector<Point> grid_points(const SweepConfig& c) {
  std::vector<Point> out;
  const auto vs = c.coupling.points();
  std::vector<double> temps;
  if (c.quantity == Quantity::Entanglement) {
    temps = {1.0};
  } else if (c.temperature) {
    temps = c.temperature->points();
  } else {
    temps = {1.0 / c.beta};
  }
  for (double v : vs) {
    for (double t : temps) {
      const double beta = (c.quantity == Quantity::Thermal && !c.temperature) ? c.beta : 1.0 / t;
      out.push_back({v, t, beta});
    }
  }
  return out;
}

DimerParams dimer_at(const SweepConfig& c, double v) {
  DimerParams p = c.dimer;
  p.v = v;
  return p;
}

ChainParams chain_at(const SweepConfig& c, double v) {
  return ChainParams::uniform(c.chain.n_sites, c.chain.t, c.chain.mu, v);
}

std::vector<int> chain_region(const SweepConfig& c) {
  return c.chain.region.empty() ? chain_half_region(c.chain.n_sites) : c.chain.region;
}

ModelOperators operators_at(const SweepConfig& c, double v) {
  return c.model == ModelKind::Dimer ? hubbard_dimer(dimer_at(c, v))
                                     : spinless_chain_parts(chain_at(c, v));
}

DistanceResult exact_distance(const SweepConfig& c, const Point& p) {
  if (c.model == ModelKind::Dimer) {
    return c.quantity == Quantity::Thermal
               ? dimer_thermal_distance(dimer_at(c, p.v), p.beta, c.optimizer)
               : dimer_entanglement_distance(dimer_at(c, p.v), c.optimizer);
  }
  const auto h = spinless_chain(chain_at(c, p.v));
  return c.quantity == Quantity::Thermal
             ? thermal_distance(h, p.beta, c.optimizer, c.chain.n_sites)
             : entanglement_distance(h, chain_region(c), c.optimizer);
}

struct Perturbative {
  double value;
  bool reliable;
};

Perturbative perturbative_distance(const SweepConfig& c, const Point& p) {
  if (c.quantity == Quantity::Entanglement && c.model == ModelKind::Dimer) {
    return {dimer_perturbative_dent(p.v), true};
  }
  const auto ops = operators_at(c, p.v);
  const auto h0 = exact_diagonalize(ops.free_part, true);
  if (c.quantity == Quantity::Entanglement) {
    return {perturbative_dent(h0, ops.interaction, 1.0, chain_region(c)),
            ground_state_within_first_order_regime(h0, ops.interaction, 1.0)};
  }
  const auto decomp = perturbative_free_decomposition(h0, ops.interaction, 1.0);
  const double d = c.perturbative_form == PerturbativeForm::Linear
                       ? perturbative_dth(decomp, p.beta)
                       : perturbative_dth_unexpanded(decomp, p.beta);
  return {d, within_first_order_regime(decomp, p.beta)};
}

// Runs task(i) for i in [0, n) on the worker pool.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& task) {
  const auto count = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (count <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) task(i);
    });
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += format_number(xs[i]);
  }
  return out;
}

const char* model_name(ModelKind m) { return m == ModelKind::Dimer ? "dimer" : "chain"; }
const char* quantity_name(Quantity q) { return q == Quantity::Thermal ? "thermal" : "entanglement"; }
const char* bool_text(bool b) { return b ? "true" : "false"; }

ordered_json number_or_null(double x) {
  return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

ordered_json row_prefix(const SweepConfig& c, double v, double temperature, double beta) {
  ordered_json j;
  j["model"] = model_name(c.model);
  j["model_params"] = ordered_json::parse(model_params_json(c));
  j["quantity"] = quantity_name(c.quantity);
  j["v"] = v;
  j["temperature"] = temperature;
  j["beta"] = beta;
  return j;
}

void write_config_comment(std::ostream& out, const SweepConfig& c) {
  out << "# config: " << config_json(c) << '\n';
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(steps, 0)));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] =
        (i == steps - 1 && steps > 1) ? max : min + (max - min) * i / std::max(steps - 1, 1);
  }
  return out;
}

SweepConfig parse_config(std::string_view json_text, const ConfigOverrides& overrides) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  require_object(j, "config");
  reject_unknown(j, "", {"model", "quantity", "coupling", "beta", "temperature", "optimizer",
                         "output", "threads", "timing", "perturbative_form"});

  SweepConfig c;
  if (j.contains("model")) parse_model(j["model"], c);
  if (j.contains("quantity")) {
    const auto q = get_string(j["quantity"], "quantity");
    if (q == "thermal") c.quantity = Quantity::Thermal;
    else if (q == "entanglement") c.quantity = Quantity::Entanglement;
    else throw ConfigError("quantity", "expected \"thermal\" or \"entanglement\", got \"" + q + "\"");
  }
  if (j.contains("coupling")) c.coupling = parse_grid(j["coupling"], "coupling");
  const bool has_beta = j.contains("beta");
  const bool has_temperature = j.contains("temperature");
  if (has_beta && has_temperature) {
    throw ConfigError("temperature", "give either beta or temperature, not both");
  }
  if (c.quantity == Quantity::Entanglement && (has_beta || has_temperature)) {
    throw ConfigError(has_beta ? "beta" : "temperature",
                      "not used when quantity is entanglement (fixed at beta = 1)");
  }
  if (has_beta) c.beta = get_number(j["beta"], "beta");
  if (has_temperature) {
    const auto& t = j["temperature"];
    if (t.is_number()) {
      const double x = get_number(t, "temperature");
      c.temperature = Grid{x, x, 1};
    } else {
      c.temperature = parse_grid(t, "temperature");
    }
  }
  if (j.contains("optimizer")) parse_optimizer(j["optimizer"], c.optimizer);
  if (j.contains("output")) parse_output(j["output"], c);
  if (j.contains("threads")) c.threads = get_int(j["threads"], "threads");
  if (j.contains("timing")) c.timing = get_bool(j["timing"], "timing");
  if (j.contains("perturbative_form")) {
    const auto f = get_string(j["perturbative_form"], "perturbative_form");
    if (f == "linear") c.perturbative_form = PerturbativeForm::Linear;
    else if (f == "unexpanded") c.perturbative_form = PerturbativeForm::Unexpanded;
    else throw ConfigError("perturbative_form", "expected \"linear\" or \"unexpanded\", got \"" + f + "\"");
  }

  if (overrides.v_max) c.coupling.max = *overrides.v_max;
  if (overrides.beta) {
    if (c.quantity == Quantity::Entanglement) {
      throw ConfigError("beta", "not used when quantity is entanglement (fixed at beta = 1)");
    }
    c.beta = *overrides.beta;
    c.temperature.reset();
  }
  if (overrides.seed) c.optimizer.seed = *overrides.seed;
  if (overrides.out) c.output_path = *overrides.out;
  if (overrides.format) c.format = parse_format(*overrides.format, "output.format");
  if (overrides.timing) c.timing = *overrides.timing;

  validate(c);
  return c;
}

void validate(const SweepConfig& c) {
  auto check_grid = [](const Grid& g, const std::string& field) {
    if (!std::isfinite(g.min) || !std::isfinite(g.max)) {
      throw ConfigError(field, "bounds must be finite");
    }
    if (g.steps < 1) throw ConfigError(field + ".steps", "must be at least 1");
    if (g.min > g.max) throw ConfigError(field, "min exceeds max");
    if (g.steps == 1 && g.min != g.max) {
      throw ConfigError(field + ".steps", "a range with min < max needs at least 2 steps");
    }
  };
  check_grid(c.coupling, "coupling");
  if (c.temperature) {
    check_grid(*c.temperature, "temperature");
    if (!(c.temperature->min > 0.0)) throw ConfigError("temperature.min", "must be positive");
  } else if (!std::isfinite(c.beta) || !(c.beta > 0.0)) {
    throw ConfigError("beta", "must be finite and positive");
  }
  if (c.optimizer.restarts < 1) throw ConfigError("optimizer.restarts", "must be at least 1");
  if (c.optimizer.max_iter < 1) throw ConfigError("optimizer.max_iter", "must be at least 1");
  if (c.threads < 0) throw ConfigError("threads", "must be non-negative");
  if (c.output_path.empty()) throw ConfigError("output.path", "must not be empty");
  if (c.model == ModelKind::Chain) {
    const int n = c.chain.n_sites;
    if (n < 2 || n > kMaxChainSites) {
      throw ConfigError("model.n_sites", "must lie in [2, " + std::to_string(kMaxChainSites) + "]");
    }
    std::set<int> seen;
    for (int m : c.chain.region) {
      if (m < 0 || m >= n) throw ConfigError("model.region", "mode " + std::to_string(m) + " out of range");
      if (!seen.insert(m).second) throw ConfigError("model.region", "mode " + std::to_string(m) + " repeated");
    }
    if (static_cast<int>(c.chain.region.size()) == n) {
      throw ConfigError("model.region", "must leave at least one mode outside the region");
    }
  }
}

std::string model_params_json(const SweepConfig& c) {
  ordered_json j;
  if (c.model == ModelKind::Dimer) {
    j["t"] = c.dimer.t;
    j["delta1"] = c.dimer.delta1;
    j["delta2"] = c.dimer.delta2;
  } else {
    j["n_sites"] = c.chain.n_sites;
    j["t"] = c.chain.t;
    j["mu"] = c.chain.mu;
    j["region"] = chain_region(c);
  }
  return j.dump();
}

std::string config_json(const SweepConfig& c) {
  json j;
  j["model"] = json::parse(model_params_json(c));
  j["model"]["type"] = model_name(c.model);
  j["quantity"] = quantity_name(c.quantity);
  j["coupling"] = {{"min", c.coupling.min}, {"max", c.coupling.max}, {"steps", c.coupling.steps}};
  if (c.quantity == Quantity::Thermal) {
    if (c.temperature) {
      j["temperature"] = {{"min", c.temperature->min},
                          {"max", c.temperature->max},
                          {"steps", c.temperature->steps}};
    } else {
      j["beta"] = c.beta;
    }
  }
  j["optimizer"] = {{"seed", c.optimizer.seed},
                    {"restarts", c.optimizer.restarts},
                    {"max_iter", c.optimizer.max_iter}};
  // The destination is left out so that the content does not depend on it.
  j["output"] = {{"format", c.format == OutputFormat::Csv ? "csv" : "json"}};
  j["threads"] = c.threads;
  j["timing"] = c.timing;
  j["perturbative_form"] = c.perturbative_form == PerturbativeForm::Linear ? "linear" : "unexpanded";
  return j.dump();
}

int worker_count(const SweepConfig& c) {
  int n = c.threads > 0 ? c.threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  if (const char* env = std::getenv("INTDIST_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return n;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  const auto points = grid_points(config);
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), worker_count(config), [&](std::size_t i) {
    const auto& p = points[i];
    auto& row = rows[i];
    row.v = p.v;
    row.temperature = p.temperature;
    row.beta = p.beta;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto r = exact_distance(config, p);
      row.d = r.value;
      row.epsilons = r.optimal_epsilons;
      row.converged = r.info.converged;
    } catch (const std::exception& e) {
      row.d = std::nan("");
      row.converged = false;
      row.error = e.what();
    }
    row.wall_time_s = seconds_since(start);
  });
  return rows;
}

std::vector<CompareRow> run_compare(const SweepConfig& config) {
  validate(config);
  const auto points = grid_points(config);
  std::vector<CompareRow> rows(points.size());
  parallel_for(points.size(), worker_count(config), [&](std::size_t i) {
    const auto& p = points[i];
    auto& row = rows[i];
    row.v = p.v;
    row.temperature = p.temperature;
    row.beta = p.beta;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto r = exact_distance(config, p);
      row.exact = r.value;
      row.converged = r.info.converged;
    } catch (const std::exception& e) {
      row.exact = std::nan("");
      row.error = e.what();
    }
    try {
      const auto pert = perturbative_distance(config, p);
      row.perturbative = pert.value;
      row.reliable = pert.reliable;
    } catch (const std::exception& e) {
      row.perturbative = std::nan("");
      row.reliable = false;
      if (row.error.empty()) row.error = std::string("perturbative: ") + e.what();
    }
    row.abs_diff = std::abs(row.exact - row.perturbative);
    row.wall_time_s = seconds_since(start);
  });
  return rows;
}

void write_sweep(std::ostream& out, const SweepConfig& c, const std::vector<SweepRow>& rows) {
  const std::string params = model_params_json(c);
  if (c.format == OutputFormat::JsonLines) {
    out << ordered_json{{"config", ordered_json::parse(config_json(c))}}.dump() << '\n';
    for (const auto& r : rows) {
      auto j = row_prefix(c, r.v, r.temperature, r.beta);
      j["d"] = number_or_null(r.d);
      j["epsilons"] = r.epsilons;
      j["converged"] = r.converged;
      if (c.timing) j["wall_time_s"] = r.wall_time_s;
      j["error"] = r.error;
      out << j.dump() << '\n';
    }
    return;
  }
  write_config_comment(out, c);
  std::vector<std::string> header{"model", "model_params", "quantity", "v", "temperature",
                                  "beta", "d", "epsilons", "converged"};
  if (c.timing) header.emplace_back("wall_time_s");
  header.emplace_back("error");
  out << csv_record(header);
  for (const auto& r : rows) {
    std::vector<std::string> f{model_name(c.model), params, quantity_name(c.quantity),
                               format_number(r.v), format_number(r.temperature),
                               format_number(r.beta), format_number(r.d),
                               join_numbers(r.epsilons), bool_text(r.converged)};
    if (c.timing) f.push_back(format_number(r.wall_time_s));
    f.push_back(r.error);
    out << csv_record(f);
  }
}

void write_compare(std::ostream& out, const SweepConfig& c, const std::vector<CompareRow>& rows) {
  const std::string params = model_params_json(c);
  if (c.format == OutputFormat::JsonLines) {
    out << ordered_json{{"config", ordered_json::parse(config_json(c))}}.dump() << '\n';
    for (const auto& r : rows) {
      auto j = row_prefix(c, r.v, r.temperature, r.beta);
      j["exact"] = number_or_null(r.exact);
      j["perturbative"] = number_or_null(r.perturbative);
      j["abs_diff"] = number_or_null(r.abs_diff);
      j["perturbative_reliable"] = r.reliable;
      j["converged"] = r.converged;
      if (c.timing) j["wall_time_s"] = r.wall_time_s;
      j["error"] = r.error;
      out << j.dump() << '\n';
    }
    return;
  }
  write_config_comment(out, c);
  std::vector<std::string> header{"model", "model_params", "quantity", "v", "temperature",
                                  "beta", "exact", "perturbative", "abs_diff",
                                  "perturbative_reliable", "converged"};
  if (c.timing) header.emplace_back("wall_time_s");
  header.emplace_back("error");
  out << csv_record(header);
  for (const auto& r : rows) {
    std::vector<std::string> f{model_name(c.model), params, quantity_name(c.quantity),
                               format_number(r.v), format_number(r.temperature),
                               format_number(r.beta), format_number(r.exact),
                               format_number(r.perturbative), format_number(r.abs_diff),
                               bool_text(r.reliable), bool_text(r.converged)};
    if (c.timing) f.push_back(format_number(r.wall_time_s));
    f.push_back(r.error);
    out << csv_record(f);
  }
}

}  // namespace intdist
