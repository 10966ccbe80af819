#pragma once

// Experiment configuration, reports, and the end-to-end pipelines behind the
// command-line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace l1lab {

enum class ExperimentId { L1Growth, Resonance, VoronoiScan, PropAScan, ZeroTable, SupNormScan };

std::string_view to_string(ExperimentId id);
ExperimentId parse_experiment_id(std::string_view name);

/// Flat key/value parameters for one experiment. Values are kept as text and
/// interpreted through the experiment's schema.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::L1Growth;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;

  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::int64_t> integers(const std::string& key) const;
  const std::string& text(const std::string& key) const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Default parameters for an experiment, every schema key present.
ExperimentConfig default_config(ExperimentId id);

/// Parses "key = value" lines; '#' starts a comment. The key "experiment"
/// selects the schema and "seed" the spot-check seed. Missing keys take
/// their defaults.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& config);

/// Rejects unknown keys, malformed values, and values outside module
/// preconditions. `big` lifts the desk-scale size caps.
void validate(const ExperimentConfig& config, bool big = false);

using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Report {
  ExperimentConfig config;
  std::string version;
  std::vector<std::string> windows;  // window kinds that entered the numbers
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
  std::vector<std::string> failures;  // assertion failures, empty when all pass
  double wall_seconds = 0.0;          // not written to files

  bool passed() const { return failures.empty(); }
};

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(std::string_view name);

/// Deterministic serialisation: identical reports give identical bytes.
std::string emit_report(const Report& report, ReportFormat format);
/// Writes via a temporary file and rename.
void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

/// Recovers the configuration embedded in a JSON report.
ExperimentConfig config_from_report_json(std::string_view json);

struct RunOptions {
  bool big = false;
  std::filesystem::path cache_dir;
};

Report run_l1_growth(const ExperimentConfig& config, const RunOptions& options = {});
Report run_sup_norm_scan(const ExperimentConfig& config, const RunOptions& options = {});
Report run_resonance(const ExperimentConfig& config, const RunOptions& options = {});
Report run_voronoi_scan(const ExperimentConfig& config, const RunOptions& options = {});
Report run_prop_a_scan(const ExperimentConfig& config, const RunOptions& options = {});
Report run_zero_table(const ExperimentConfig& config, const RunOptions& options = {});

/// Validates, then dispatches on config.id.
Report run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Least-squares slope of log(ys) against log(xs); empty when fewer than two points.
std::optional<double> fit_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace l1lab
