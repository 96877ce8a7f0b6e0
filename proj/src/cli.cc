#include "mtsearch/cli.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "mtsearch/errors.h"
#include "mtsearch/statevector.h"

namespace mtsearch::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
T get_field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::uint64_t get_count(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("config field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::kJson;
  if (s == "csv") return OutputFormat::kCsv;
  throw ConfigError("output format must be 'json' or 'csv', got '" + s + "'");
}

}  // namespace

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "catalog_size", "targets", "num_targets", "placement", "placement_seed",
      "q_max",        "q_list",  "rho_grid",    "trials",    "seed",
      "n_iterations", "output_path", "output_format", "mode"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config field '" + key + "'");
  }

  RunConfig c;
  if (doc.contains("catalog_size")) c.catalog_size = get_count(doc, "catalog_size");
  if (doc.contains("targets")) {
    const json& list = doc.at("targets");
    if (!list.is_array()) throw ConfigError("'targets' must be an array of item indices");
    std::vector<std::uint64_t> targets;
    for (const json& t : list) {
      if (!t.is_number_integer() || t.get<std::int64_t>() < 1) {
        throw ConfigError("'targets' entries must be positive integers");
      }
      targets.push_back(t.get<std::uint64_t>());
    }
    c.targets = std::move(targets);
  }
  if (doc.contains("num_targets")) c.num_targets = get_count(doc, "num_targets");
  if (doc.contains("placement")) {
    const auto p = get_field<std::string>(doc, "placement");
    if (p == "first") {
      c.placement = Placement::kFirst;
    } else if (p == "seeded-random") {
      c.placement = Placement::kSeededRandom;
    } else {
      throw ConfigError("placement must be 'first' or 'seeded-random', got '" + p + "'");
    }
  }
  if (doc.contains("placement_seed")) c.placement_seed = get_count(doc, "placement_seed");
  if (doc.contains("q_max")) c.q_max = static_cast<int>(get_count(doc, "q_max"));
  if (doc.contains("q_list")) c.q_list = get_field<std::vector<int>>(doc, "q_list");
  if (doc.contains("rho_grid")) {
    const json& g = doc.at("rho_grid");
    if (!g.is_object()) throw ConfigError("'rho_grid' must be an object");
    if (g.contains("start")) c.rho_grid.start = get_field<double>(g, "start");
    if (g.contains("stop")) c.rho_grid.stop = get_field<double>(g, "stop");
    if (g.contains("step")) c.rho_grid.step = get_field<double>(g, "step");
  }
  if (doc.contains("trials")) c.trials = get_count(doc, "trials");
  if (doc.contains("seed")) c.seed = get_count(doc, "seed");
  if (doc.contains("n_iterations")) c.n_iterations = static_cast<int>(get_count(doc, "n_iterations"));
  if (doc.contains("output_path")) c.output_path = get_field<std::string>(doc, "output_path");
  if (doc.contains("output_format")) {
    c.output_format = parse_format(get_field<std::string>(doc, "output_format"));
  }
  if (c.trials < 1) throw ConfigError("'trials' must be at least 1");
  if (c.q_max > kMaxExtraIterations) {
    throw ConfigError("'q_max' above " + std::to_string(kMaxExtraIterations));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return parse_config(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t resolve_num_targets(const RunConfig& c) {
  if (c.targets) return c.targets->size();
  if (c.num_targets) return *c.num_targets;
  throw ConfigError("config needs 'targets' or 'num_targets'");
}

ProblemSpec resolve_spec(const RunConfig& c) {
  if (!c.catalog_size) throw ConfigError("config needs 'catalog_size'");
  try {
    ProblemSpec spec;
    if (c.targets) {
      spec = ProblemSpec{*c.catalog_size, *c.targets};
    } else if (c.num_targets) {
      spec = c.placement == Placement::kFirst
                 ? first_targets(*c.catalog_size, *c.num_targets)
                 : random_targets(*c.catalog_size, *c.num_targets, c.placement_seed);
    } else {
      throw ConfigError("config needs 'targets' or 'num_targets'");
    }
    validate(spec);
    return spec;
  } catch (const SpecError& e) {
    throw ConfigError(e.what());
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

namespace {

ordered_json embedding_json(const Embedding& e) {
  ordered_json j;
  j["catalog_size"] = e.catalog_size;
  j["num_targets"] = e.num_targets;
  j["n"] = e.n;
  j["N"] = e.N;
  j["n_tilde"] = e.n_tilde;
  j["N_tilde"] = e.N_tilde;
  j["p_tilde"] = e.p_tilde;
  j["nu"] = e.nu;
  j["rho"] = {{"num", e.rho.num}, {"den", e.rho.den}, {"value", e.rho.value()}};
  j["power_of_four"] = e.power_of_four;
  return j;
}

}  // namespace

ordered_json run_report(const RunConfig& config) {
  const ProblemSpec spec = resolve_spec(config);
  const SearchOutcome outcome = search(spec, config.seed);
  const Embedding e = build_embedding(spec);

  ordered_json j;
  j["embedding"] = embedding_json(e);
  j["targets"] = spec.targets;
  j["regime"] = to_string(outcome.regime);
  j["iterations_used"] = outcome.iterations_used;
  j["predicted_probability"] = outcome.predicted_probability;
  j["measured_index"] = outcome.measured_index;
  if (outcome.measured_item) {
    j["measured_item"] = *outcome.measured_item;
    j["measured_kind"] = "catalog";
  } else {
    j["measured_item"] = nullptr;
    j["measured_kind"] = "padding";
  }
  j["is_target"] = outcome.is_target;
  j["oracle_calls_abstract"] = outcome.oracle_calls_abstract;
  j["oracle_calls_recursive_model"] = outcome.oracle_calls_recursive_model;
  j["seed"] = outcome.seed;

  if (config.trials > 1) {
    const OracleSet oracles(e, spec);
    const StateVector state = run_main_phase(oracles, outcome.iterations_used);
    std::uint64_t hits = 0;
    for (const auto& [index, count] : sample(state, config.seed, config.trials)) {
      if (oracles.f(index)) hits += count;
    }
    j["sampling"] = {{"trials", config.trials},
                     {"target_hits", hits},
                     {"target_frequency",
                      static_cast<double>(hits) / static_cast<double>(config.trials)},
                     {"simulated_probability", success_probability(state, oracles)}};
  }
  return j;
}

ordered_json to_json(const CostReport& r) {
  ordered_json j;
  j["regime"] = to_string(r.regime);
  j["iterations"] = r.iterations;
  j["t_table"] = r.t_table;
  j["total_calls"] = r.total_calls;
  j["closed_form_calls"] = r.closed_form_calls;
  j["exponent"] = r.exponent;
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, r.exponent, std::chars_format::fixed, 4);
  j["exponent_4dp"] = std::string(buf, res.ptr);
  return j;
}

ordered_json cost_report(const RunConfig& config) {
  if (config.n_iterations) {
    ordered_json j = to_json(cost_for_iterations(*config.n_iterations));
    j.erase("regime");
    return j;
  }
  if (!config.catalog_size) throw ConfigError("cost needs 'catalog_size' or 'n_iterations'");
  Embedding e;
  try {
    e = build_embedding(*config.catalog_size, resolve_num_targets(config));
  } catch (const SpecError& ex) {
    throw ConfigError(ex.what());
  }
  const CostReport r = strategy_cost(e);
  ordered_json j;
  j["embedding"] = embedding_json(e);
  const ordered_json body = to_json(r);
  for (const auto& [key, value] : body.items()) j[key] = value;
  j["reference_two_series"] = {
      {"series_of_n", r.reference_two_series_n},
      {"series_of_n_plus_1", r.reference_two_series_n_plus_1},
      {"printed_form", r.reference_printed_form},
      {"printed_form_matches_series_of_n",
       std::llround(r.reference_printed_form) ==
           static_cast<long long>(r.reference_two_series_n)},
      {"printed_form_matches_series_of_n_plus_1",
       std::llround(r.reference_printed_form) ==
           static_cast<long long>(r.reference_two_series_n_plus_1)},
  };
  return j;
}

ordered_json to_json(const VerifyReport& r) {
  ordered_json j;
  j["catalog_size"] = r.catalog_size;
  j["num_targets"] = r.num_targets;
  j["q_max"] = r.q_max;
  j["passed"] = r.passed();
  j["checks"] = r.checks.size();
  j["max_deviation"] = r.max_deviation();
  ordered_json failed = ordered_json::array();
  for (const VerifyCheck& c : r.checks) {
    if (!c.passed) failed.push_back({{"name", c.name}, {"deviation", c.deviation}});
  }
  j["failed"] = failed;
  return j;
}

std::vector<ProbabilityCurve> sweep_curves(const RunConfig& config) {
  try {
    const std::vector<double> grid =
        rho_grid(config.rho_grid.start, config.rho_grid.stop, config.rho_grid.step);
    return sweep(config.q_list, grid);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

std::string sweep_csv(const std::vector<ProbabilityCurve>& curves) {
  std::string out = "rho";
  for (const ProbabilityCurve& c : curves) out += ",P" + std::to_string(c.q);
  out += '\n';
  const std::size_t rows = curves.empty() ? 0 : curves.front().samples.size();
  for (std::size_t r = 0; r < rows; ++r) {
    out += format_number(curves.front().samples[r].rho);
    for (const ProbabilityCurve& c : curves) {
      out += ',';
      out += format_number(c.samples[r].probability);
    }
    out += '\n';
  }
  return out;
}

std::vector<ProblemSpec> default_verify_suite() {
  std::vector<ProblemSpec> suite;
  // Power-of-four target counts.
  for (auto [catalog, count] : std::initializer_list<std::pair<std::uint64_t, std::uint64_t>>{
           {1, 1}, {4, 1}, {4, 4}, {16, 1}, {16, 4}, {16, 16}, {64, 16}, {100, 4}, {256, 64}}) {
    suite.push_back(random_targets(catalog, count, catalog * 1000 + count));
  }
  // Every fill of nu = 16 inside a 32-item catalog.
  for (std::uint64_t count = 5; count <= 16; ++count) {
    suite.push_back(random_targets(32, count, 32000 + count));
  }
  for (auto [catalog, count] : std::initializer_list<std::pair<std::uint64_t, std::uint64_t>>{
           {2, 2}, {3, 3}, {20, 6}, {64, 2}, {64, 3}, {64, 40}, {200, 17}}) {
    suite.push_back(random_targets(catalog, count, catalog * 1000 + count));
  }
  return suite;
}

namespace {

std::string flatten_csv(const ordered_json& doc) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto scalar = [](const ordered_json& v) -> std::string {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  std::function<void(const std::string&, const ordered_json&)> walk =
      [&](const std::string& prefix, const ordered_json& v) {
        if (v.is_object()) {
          for (const auto& [key, child] : v.items()) {
            walk(prefix.empty() ? key : prefix + "." + key, child);
          }
        } else if (v.is_array()) {
          std::string joined;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].is_structured()) {
              walk(prefix + "." + std::to_string(i), v[i]);
              continue;
            }
            if (!joined.empty()) joined += ';';
            joined += scalar(v[i]);
          }
          if (!joined.empty() || v.empty()) rows.emplace_back(prefix, joined);
        } else {
          rows.emplace_back(prefix, scalar(v));
        }
      };
  walk("", doc);
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += k + "," + v + "\n";
  return out;
}

std::string render(const ordered_json& doc, OutputFormat format) {
  if (format == OutputFormat::kCsv) return flatten_csv(doc);
  return doc.dump(2) + "\n";
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) throw ConfigError("cannot write output file '" + *path + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-target exact quantum search: simulation, closed forms and cost model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format_name;
  std::uint64_t seed = 0;
  double tolerance = kVerifyTolerance;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--format", format_name, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", seed, "Measurement seed (overrides the config)");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Run one search and report the outcome");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Success probability curves P_q(rho)");
  CLI::App* cost_cmd = app.add_subcommand("cost", "Oracle-call accounting");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Cross-check simulation, closed forms and recursion");
  for (CLI::App* sub : {run_cmd, sweep_cmd, cost_cmd, verify_cmd}) add_common(sub);
  verify_cmd->add_option("--tolerance", tolerance, "Agreement threshold")->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) {
      config = load_config(config_path);
    } else if (run_cmd->parsed() || cost_cmd->parsed()) {
      throw ConfigError("--config is required for this subcommand");
    }
    auto seed_opt = [&](CLI::App* sub) { return sub->get_option("--seed")->count() > 0; };
    for (CLI::App* sub : {run_cmd, sweep_cmd, cost_cmd, verify_cmd}) {
      if (sub->parsed() && seed_opt(sub)) config.seed = seed;
    }
    if (!out_path.empty()) config.output_path = out_path;
    if (!format_name.empty()) config.output_format = parse_format(format_name);

    if (run_cmd->parsed()) {
      emit(render(run_report(config), config.output_format.value_or(OutputFormat::kJson)),
           config.output_path, out);
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      const auto curves = sweep_curves(config);
      if (config.output_format.value_or(OutputFormat::kCsv) == OutputFormat::kCsv) {
        emit(sweep_csv(curves), config.output_path, out);
      } else {
        ordered_json j;
        j["curves"] = ordered_json::array();
        for (const ProbabilityCurve& c : curves) {
          ordered_json points = ordered_json::array();
          for (const ProbabilitySample& s : c.samples) points.push_back({s.rho, s.probability});
          j["curves"].push_back({{"q", c.q}, {"samples", points}});
        }
        emit(render(j, OutputFormat::kJson), config.output_path, out);
      }
      return kExitOk;
    }
    if (cost_cmd->parsed()) {
      emit(render(cost_report(config), config.output_format.value_or(OutputFormat::kJson)),
           config.output_path, out);
      return kExitOk;
    }

    // verify
    std::vector<ProblemSpec> specs = default_verify_suite();
    if (config.catalog_size) specs.push_back(resolve_spec(config));
    ordered_json j;
    j["tolerance"] = tolerance;
    j["reports"] = ordered_json::array();
    bool all_passed = true;
    for (const ProblemSpec& spec : specs) {
      const VerifyReport report = verify(spec, config.q_max, tolerance);
      all_passed = all_passed && report.passed();
      j["reports"].push_back(to_json(report));
    }
    j["passed"] = all_passed;
    emit(render(j, config.output_format.value_or(OutputFormat::kJson)), config.output_path, out);
    return all_passed ? kExitOk : kExitVerifyFailed;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SpecError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SizeGateError& e) {
    err << "size limit: " << e.what() << "\n";
    return kExitSizeGate;
  } catch (const OverflowError& e) {
    err << "size limit: " << e.what() << "\n";
    return kExitSizeGate;
  }
}

}  // namespace mtsearch::cli
