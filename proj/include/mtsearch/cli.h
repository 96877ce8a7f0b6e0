#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtsearch/analytic.h"
#include "mtsearch/cost.h"
#include "mtsearch/embedding.h"
#include "mtsearch/strategy.h"

namespace mtsearch::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitSizeGate = 3,
  kExitVerifyFailed = 4,
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Placement { kFirst, kSeededRandom };
enum class OutputFormat { kJson, kCsv };

struct GridSpec {
  double start = 0.26;
  double stop = 1.00;
  double step = 0.01;
};

// Parsed form of the JSON config file. Every field is optional at parse time;
// each subcommand checks for what it needs.
struct RunConfig {
  std::optional<std::uint64_t> catalog_size;
  std::optional<std::vector<std::uint64_t>> targets;
  std::optional<std::uint64_t> num_targets;
  Placement placement = Placement::kFirst;
  std::uint64_t placement_seed = 0;
  int q_max = 3;
  std::vector<int> q_list{0, 1, 2};
  GridSpec rho_grid;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<int> n_iterations;
  std::optional<std::string> output_path;
  std::optional<OutputFormat> output_format;
};

// Throws ConfigError on unknown keys, wrong types or bad enum values.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// Explicit targets, or num_targets placed by the configured policy.
ProblemSpec resolve_spec(const RunConfig& config);
// Target count without materializing the target list.
std::uint64_t resolve_num_targets(const RunConfig& config);

// printf %.17g: 17 significant digits with trailing zeros dropped, "." as the
// decimal point regardless of locale.
std::string format_number(double value);

nlohmann::ordered_json run_report(const RunConfig& config);
nlohmann::ordered_json cost_report(const RunConfig& config);
nlohmann::ordered_json to_json(const CostReport& report);
nlohmann::ordered_json to_json(const VerifyReport& report);

// Header "rho,P<q>,..." then one row per grid point.
std::string sweep_csv(const std::vector<ProbabilityCurve>& curves);
std::vector<ProbabilityCurve> sweep_curves(const RunConfig& config);

// Problem specs checked by `verify` in addition to the configured one.
std::vector<ProblemSpec> default_verify_suite();

// Entry point shared by the executable and the tests. args[0] is the program
// name. Writes the report to --out (or `out`) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtsearch::cli
