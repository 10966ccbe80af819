#include "l1lab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "l1lab/dirichlet.hpp"
#include "l1lab/errors.hpp"
#include "l1lab/expsums.hpp"
#include "l1lab/kernel.hpp"
#include "l1lab/lfunctions.hpp"
#include "l1lab/mult_arith.hpp"
#include "l1lab/testfns.hpp"

#ifndef L1LAB_VERSION
#define L1LAB_VERSION "dev"
#endif

namespace l1lab {

namespace {

enum class ParamType { Integer, Real, IntegerList, RealList, Text };

struct ParamSpec {
  const char* key;
  ParamType type;
  const char* fallback;
};

const std::vector<ParamSpec>& schema(ExperimentId id) {
  static const std::vector<ParamSpec> growth = {
      {"kind", ParamType::Text, "liouville"},     {"xmin", ParamType::Integer, "1024"},
      {"xmax", ParamType::Integer, "262144"},     {"geometric", ParamType::Real, "2"},
      {"tolerance", ParamType::Real, "0.005"},
  };
  static const std::vector<ParamSpec> resonance = {
      {"modulus", ParamType::Integer, "1"},  {"char_index", ParamType::Integer, "0"},
      {"zero_lo", ParamType::Real, "14"},    {"zero_hi", ParamType::Real, "15"},
      {"A", ParamType::Integer, "12"},       {"ymin", ParamType::Real, "100"},
      {"ymax", ParamType::Real, "10000"},    {"per_decade", ParamType::Integer, "2"},
      {"Y", ParamType::RealList, ""},        {"window", ParamType::Text, "bump"},
  };
  static const std::vector<ParamSpec> voronoi = {
      {"moduli", ParamType::IntegerList, "1,3,4,5,7"},
      {"t", ParamType::RealList, "0,5,20"},
      {"y", ParamType::RealList, "100,1000,10000"},
      {"tolerance", ParamType::Real, "0.005"},
      {"growth_slack", ParamType::Real, "0.1"},
      {"window", ParamType::Text, "bump"},
  };
  static const std::vector<ParamSpec> prop_a = {
      {"modulus", ParamType::Integer, "1"},  {"char_index", ParamType::Integer, "0"},
      {"zero_lo", ParamType::Real, "14"},    {"zero_hi", ParamType::Real, "15"},
      {"A", ParamType::Integer, "12"},       {"X", ParamType::RealList, "1000,10000"},
      {"t", ParamType::Text, "gamma"},       {"kind", ParamType::Text, "liouville"},
      {"window", ParamType::Text, "bump"},
  };
  static const std::vector<ParamSpec> zeros = {
      {"modulus", ParamType::Integer, "1"},
      {"char_index", ParamType::Integer, "0"},
      {"t_lo", ParamType::Real, "10"},
      {"t_hi", ParamType::Real, "50"},
  };
  switch (id) {
    case ExperimentId::L1Growth:
    case ExperimentId::SupNormScan: return growth;
    case ExperimentId::Resonance: return resonance;
    case ExperimentId::VoronoiScan: return voronoi;
    case ExperimentId::PropAScan: return prop_a;
    case ExperimentId::ZeroTable: return zeros;
  }
  return growth;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("parameter '" + key + "': '" + text + "' is not a real number");
  }
}

std::int64_t parse_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("parameter '" + key + "': '" + text + "' is not an integer");
  }
}

const ParamSpec& lookup(ExperimentId id, const std::string& key) {
  for (const auto& p : schema(id))
    if (key == p.key) return p;
  throw ValidationError("unknown parameter '" + key + "' for experiment " + std::string(to_string(id)));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

SmoothWindow window_named(const std::string& name) {
  if (name == "bump") return bump_window();
  if (name == "phi_one") return phi_one(bump_window());
  throw ValidationError("unknown window '" + name + "' (expected bump or phi_one)");
}

DirichletCharacter character_for(const ExperimentConfig& c) {
  const auto q = c.integer("modulus");
  const auto k = c.integer("char_index");
  return q == 1 ? trivial_character() : character(static_cast<int>(q), static_cast<int>(k));
}

Report start_report(const ExperimentConfig& config) {
  Report r;
  r.config = config;
  r.version = L1LAB_VERSION;
  return r;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<std::int64_t> geometric_range(std::int64_t lo, std::int64_t hi, double factor) {
  std::vector<std::int64_t> out;
  for (double x = static_cast<double>(lo); x <= static_cast<double>(hi) * (1.0 + 1e-12); x *= factor) {
    const auto v = static_cast<std::int64_t>(std::llround(x));
    if (out.empty() || v != out.back()) out.push_back(v);
  }
  return out;
}

std::vector<double> y_values(const ExperimentConfig& c) {
  auto ys = c.reals("Y");
  if (!ys.empty()) return ys;
  const double lo = c.real("ymin"), hi = c.real("ymax");
  const auto per = c.integer("per_decade");
  const double l0 = std::log10(lo), l1 = std::log10(hi);
  for (std::int64_t k = 0;; ++k) {
    const double e = l0 + static_cast<double>(k) / static_cast<double>(per);
    if (e > l1 + 1e-9) break;
    const double y = std::pow(10.0, e);
    const double r = std::round(y);
    ys.push_back(std::abs(y - r) < 1e-9 * y ? r : y);
  }
  return ys;
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::L1Growth: return "l1-growth";
    case ExperimentId::Resonance: return "resonance";
    case ExperimentId::VoronoiScan: return "voronoi-scan";
    case ExperimentId::PropAScan: return "prop-a-scan";
    case ExperimentId::ZeroTable: return "zero-table";
    case ExperimentId::SupNormScan: return "sup-norm-scan";
  }
  return "unknown";
}

ExperimentId parse_experiment_id(std::string_view name) {
  for (auto id : {ExperimentId::L1Growth, ExperimentId::Resonance, ExperimentId::VoronoiScan,
                  ExperimentId::PropAScan, ExperimentId::ZeroTable, ExperimentId::SupNormScan})
    if (name == to_string(id)) return id;
  throw ValidationError("unknown experiment '" + std::string(name) + "'");
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ValidationError("missing parameter '" + key + "'");
  return it->second;
}

double ExperimentConfig::real(const std::string& key) const { return parse_real(key, text(key)); }

std::int64_t ExperimentConfig::integer(const std::string& key) const { return parse_integer(key, text(key)); }

std::vector<double> ExperimentConfig::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_real(key, item));
  return out;
}

std::vector<std::int64_t> ExperimentConfig::integers(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_integer(key, item));
  return out;
}

ExperimentConfig default_config(ExperimentId id) {
  ExperimentConfig c;
  c.id = id;
  for (const auto& p : schema(id)) c.params[p.key] = p.fallback;
  return c;
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    entries.emplace_back(trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
  }
  std::string experiment;
  for (const auto& [k, v] : entries)
    if (k == "experiment") experiment = v;
  if (experiment.empty()) throw ValidationError("config does not name an experiment");

  auto config = default_config(parse_experiment_id(experiment));
  for (const auto& [k, v] : entries) {
    if (k == "experiment") continue;
    if (k == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_integer("seed", v));
      continue;
    }
    lookup(config.id, k);
    config.params[k] = v;
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "experiment = " << to_string(config.id) << "\n";
  out << "seed = " << config.seed << "\n";
  for (const auto& [k, v] : config.params) out << k << " = " << v << "\n";
  return out.str();
}

void validate(const ExperimentConfig& c, bool big) {
  for (const auto& [key, value] : c.params) {
    const auto& spec = lookup(c.id, key);
    switch (spec.type) {
      case ParamType::Integer: parse_integer(key, value); break;
      case ParamType::Real: parse_real(key, value); break;
      case ParamType::IntegerList: c.integers(key); break;
      case ParamType::RealList: c.reals(key); break;
      case ParamType::Text: break;
    }
  }
  for (const auto& p : schema(c.id))
    if (!c.params.contains(p.key)) throw ValidationError(std::string("missing parameter '") + p.key + "'");

  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
  };
  const double desk_limit = big ? 1e9 : 1 << 20;

  auto check_zero_params = [&](const char* lo_key, const char* hi_key) {
    const auto q = c.integer("modulus");
    require(q >= 1 && q <= 10000, "modulus must lie in [1, 10000]");
    const auto k = c.integer("char_index");
    require(k >= 0 && k < euler_phi(static_cast<int>(q)), "char_index out of range for the modulus");
    const auto chi = character_for(c);
    require(chi.modulus() == 1 || chi.is_principal() || (chi.is_real() && chi.is_primitive()),
            "zero search needs the trivial character or a real primitive character");
    const double lo = c.real(lo_key), hi = c.real(hi_key);
    require(lo > 0.0 && lo < hi && hi <= 100.0, "zero range must satisfy 0 < lo < hi <= 100");
  };

  switch (c.id) {
    case ExperimentId::L1Growth:
    case ExperimentId::SupNormScan: {
      parse_coefficient_kind(c.text("kind"));
      const auto lo = c.integer("xmin"), hi = c.integer("xmax");
      require(lo >= 1 && hi >= lo, "need 1 <= xmin <= xmax");
      require(static_cast<double>(hi) <= desk_limit, "xmax above the desk-scale limit; pass --big to allow it");
      require(c.real("geometric") > 1.0, "geometric factor must exceed 1");
      const double tol = c.real("tolerance");
      require(tol > 0.0 && tol < 1.0, "tolerance must lie in (0, 1)");
      break;
    }
    case ExperimentId::Resonance: {
      check_zero_params("zero_lo", "zero_hi");
      require(c.integer("A") >= 10, "A must be at least 10");
      window_named(c.text("window"));
      const auto ys = y_values(c);
      require(!ys.empty(), "no Y values selected");
      for (double y : ys) require(y >= 1.0, "Y values must be at least 1");
      require(*std::max_element(ys.begin(), ys.end()) <= (big ? 1e7 : 1e5),
              "Y above the desk-scale limit; pass --big to allow it");
      require(c.integer("per_decade") >= 1, "per_decade must be positive");
      break;
    }
    case ExperimentId::VoronoiScan: {
      const auto qs = c.integers("moduli");
      require(!qs.empty(), "no moduli selected");
      for (auto q : qs) require(q >= 1 && q <= 10000, "moduli must lie in [1, 10000]");
      const auto ys = c.reals("y");
      require(!ys.empty() && !c.reals("t").empty(), "t and y lists must be non-empty");
      for (double y : ys) require(y >= 1.0 && y <= (big ? 1e7 : 1e5), "y values must lie in [1, 1e5] (or --big)");
      require(c.real("tolerance") > 0.0, "tolerance must be positive");
      require(c.real("growth_slack") >= 0.0, "growth_slack must be non-negative");
      window_named(c.text("window"));
      break;
    }
    case ExperimentId::PropAScan: {
      check_zero_params("zero_lo", "zero_hi");
      require(c.integer("A") >= 10, "A must be at least 10");
      parse_coefficient_kind(c.text("kind"));
      window_named(c.text("window"));
      if (c.text("t") != "gamma") parse_real("t", c.text("t"));
      const auto xs = c.reals("X");
      require(!xs.empty(), "no X values selected");
      for (double x : xs) require(x >= 4.0 && x <= (big ? 1e7 : 1e5), "X values must lie in [4, 1e5] (or --big)");
      break;
    }
    case ExperimentId::ZeroTable: check_zero_params("t_lo", "t_hi"); break;
  }
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ValidationError("unknown report format '" + std::string(name) + "'");
}

std::string emit_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["experiment"] = std::string(to_string(report.config.id));
    j["version"] = report.version;
    j["seed"] = report.config.seed;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.config.params) params[k] = v;
    j["params"] = params;
    j["windows"] = report.windows;
    j["columns"] = report.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
      auto r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(r);
    }
    j["rows"] = rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.summary) summary[k] = cell_json(v);
    j["summary"] = summary;
    j["failures"] = report.failures;
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "# experiment = " << to_string(report.config.id) << "\n";
  out << "# version = " << report.version << "\n";
  out << "# seed = " << report.config.seed << "\n";
  for (const auto& [k, v] : report.config.params) out << "# param." << k << " = " << v << "\n";
  for (const auto& w : report.windows) out << "# window = " << w << "\n";
  for (const auto& [k, v] : report.summary) out << "# summary." << k << " = " << cell_text(v) << "\n";
  for (const auto& f : report.failures) out << "# failure = " << f << "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_field(report.columns[i]);
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << "\n";
  }
  return out.str();
}

void write_report(const Report& report, ReportFormat format, const std::filesystem::path& path) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << emit_report(report, format);
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

ExperimentConfig config_from_report_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("report is not valid JSON: ") + e.what());
  }
  std::ostringstream text;
  text << "experiment = " << j.at("experiment").get<std::string>() << "\n";
  text << "seed = " << j.at("seed").get<std::uint64_t>() << "\n";
  for (const auto& [k, v] : j.at("params").items()) text << k << " = " << v.get<std::string>() << "\n";
  return parse_config(text.str());
}

std::optional<double> fit_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

Report run_l1_growth(const ExperimentConfig& config, const RunOptions& options) {
  Stopwatch clock;
  auto report = start_report(config);
  const auto kind = parse_coefficient_kind(config.text("kind"));
  const auto xs = geometric_range(config.integer("xmin"), config.integer("xmax"), config.real("geometric"));
  const auto table = cached_sieve(kind, xs.back(), options.cache_dir);
  L1Options l1;
  l1.tolerance = config.real("tolerance");

  report.columns = {"X", "M", "l1", "l2", "sup", "refinement_delta", "l2_rel_error", "sup_over_x34",
                    "local_exponent", "above_floor"};
  std::vector<double> x_vals, l1_vals;
  double floor_c = 0.0;
  for (const auto X : xs) {
    const auto r = norms_adaptive(table, X, l1);
    double energy = 0.0;
    for (std::int64_t n = 1; n <= X; ++n) energy += table(n) * table(n);
    const double l2_err = std::abs(r.l2_sq - energy) / energy;
    const double x = static_cast<double>(X);
    if (x_vals.empty()) floor_c = r.l1.value / std::pow(x, 0.25);
    Cell local;
    if (!x_vals.empty()) local = std::log(r.l1.value / l1_vals.back()) / std::log(x / x_vals.back());
    const bool above = r.l1.value >= floor_c * std::pow(x, 0.25) * (1.0 - 1e-12);
    report.rows.push_back({X, static_cast<std::int64_t>(r.l1.grid), r.l1.value, r.l2_sq, r.sup,
                           r.l1.refinement_delta, l2_err, r.sup / std::pow(x, 0.75), local,
                           static_cast<std::int64_t>(above)});
    if (l2_err > 1e-6) report.failures.push_back("Parseval mismatch at X = " + std::to_string(X));
    if (!above) report.failures.push_back("L1 below the calibrated X^{1/4} floor at X = " + std::to_string(X));
    x_vals.push_back(x);
    l1_vals.push_back(r.l1.value);
  }
  const auto slope = fit_log_slope(x_vals, l1_vals);
  report.summary.emplace_back("fitted_exponent", slope ? Cell(*slope) : Cell());
  report.summary.emplace_back("floor_constant", floor_c);
  report.summary.emplace_back("floor_calibration_x", xs.front());
  report.wall_seconds = clock.seconds();
  return report;
}

Report run_sup_norm_scan(const ExperimentConfig& config, const RunOptions& options) {
  Stopwatch clock;
  auto report = start_report(config);
  const auto kind = parse_coefficient_kind(config.text("kind"));
  const auto xs = geometric_range(config.integer("xmin"), config.integer("xmax"), config.real("geometric"));
  const auto table = cached_sieve(kind, xs.back(), options.cache_dir);
  L1Options l1;
  l1.tolerance = config.real("tolerance");
  report.columns = {"X", "M", "sup", "sup_over_x34"};
  std::vector<double> x_vals, sups;
  for (const auto X : xs) {
    const auto r = norms_adaptive(table, X, l1);
    report.rows.push_back({X, static_cast<std::int64_t>(r.l1.grid), r.sup,
                           r.sup / std::pow(static_cast<double>(X), 0.75)});
    x_vals.push_back(static_cast<double>(X));
    sups.push_back(r.sup);
  }
  const auto slope = fit_log_slope(x_vals, sups);
  report.summary.emplace_back("fitted_exponent", slope ? Cell(*slope) : Cell());
  report.wall_seconds = clock.seconds();
  return report;
}

Report run_zero_table(const ExperimentConfig& config, const RunOptions&) {
  Stopwatch clock;
  auto report = start_report(config);
  const auto chi = character_for(config);
  const auto zeros = find_zeros(chi, config.real("t_lo"), config.real("t_hi"));
  report.columns = {"gamma", "residual"};
  for (const auto& z : zeros) {
    report.rows.push_back({z.gamma, z.residual});
    if (!(z.residual < 1e-8)) report.failures.push_back("residual above 1e-8 at gamma = " + format_double(z.gamma));
  }
  report.summary.emplace_back("count", static_cast<std::int64_t>(zeros.size()));
  report.wall_seconds = clock.seconds();
  return report;
}

Report run_resonance(const ExperimentConfig& config, const RunOptions& options) {
  Stopwatch clock;
  auto report = start_report(config);
  const auto chi = character_for(config);
  const auto zero = find_zero(chi, config.real("zero_lo"), config.real("zero_hi"));
  const auto phi = window_named(config.text("window"));
  report.windows = {phi.name(), "kernel(A=" + config.text("A") + ")"};

  const auto ys = y_values(config);
  const double y_max = *std::max_element(ys.begin(), ys.end());
  KernelOptions ko;
  ko.A = static_cast<int>(config.integer("A"));
  ko.u_min = 1.0 / (y_max * phi.support().hi);
  const auto spec = make_kernel_spec(zero, ko);
  const auto kernel = build_kernel(spec, 256);
  const auto table = cached_sieve(CoefficientKind::Liouville,
                                  std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(y_max))),
                                  options.cache_dir);
  const TwistedCoefficients twisted(table, zero.gamma, chi);

  report.columns = {"Y", "lhs_re", "lhs_im", "rhs", "ratio_re", "ratio_im", "abs_ratio_minus_one", "nodes"};
  std::vector<std::pair<double, double>> errors;
  for (double Y : ys) {
    const auto lhs = resonance_lhs(kernel, phi, twisted, Y);
    const cplx rhs = resonance_rhs(phi, zero.beta, Y);
    const cplx ratio = lhs.value / rhs;
    const double err = std::abs(ratio - 1.0);
    report.rows.push_back({Y, lhs.value.real(), lhs.value.imag(), rhs.real(), ratio.real(), ratio.imag(), err,
                           static_cast<std::int64_t>(lhs.nodes)});
    errors.emplace_back(Y, err);
  }
  for (const auto& [Y, err] : errors) {
    if (Y >= 1000.0 && err > 0.05)
      report.failures.push_back("resonance ratio off by " + format_double(err) + " at Y = " + format_double(Y));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i].first >= 1000.0 && !(errors[i].second < errors[i - 1].second))
      report.failures.push_back("resonance error does not shrink from Y = " + format_double(errors[i - 1].first) +
                                " to Y = " + format_double(errors[i].first));
  }

  // Truncation stability at the largest Y.
  auto doubled = ko;
  doubled.T = std::min(2.0 * spec.T, 100.0 - zero.gamma);
  const auto kernel2 = build_kernel(make_kernel_spec(zero, doubled), 256);
  const auto lhs_a = resonance_lhs(kernel, phi, twisted, y_max).value;
  const auto lhs_b = resonance_lhs(kernel2, phi, twisted, y_max).value;
  const double t_change = std::abs(lhs_b - lhs_a) / std::max(std::abs(lhs_a), 1e-300);

  report.summary.emplace_back("gamma", zero.gamma);
  report.summary.emplace_back("residual", zero.residual);
  report.summary.emplace_back("A", static_cast<std::int64_t>(spec.A));
  report.summary.emplace_back("sigma", spec.sigma);
  report.summary.emplace_back("T", spec.T);
  report.summary.emplace_back("tau_step", spec.step);
  report.summary.emplace_back("tail_estimate", spec.tail_estimate);
  report.summary.emplace_back("u_min", spec.u_min);
  report.summary.emplace_back("mellin_phi_beta", mellin(phi, zero.beta).real());
  report.summary.emplace_back("support_leak", kernel.support_leak());
  report.summary.emplace_back("decay_constant", kernel.decay_constant());
  report.summary.emplace_back("lhs_change_when_T_doubled", t_change);
  report.wall_seconds = clock.seconds();
  return report;
}

Report run_voronoi_scan(const ExperimentConfig& config, const RunOptions&) {
  Stopwatch clock;
  auto report = start_report(config);
  const auto phi = window_named(config.text("window"));
  report.windows = {phi.name()};
  const double phi_norm = sobolev_norm(phi, 1, 2);
  const auto ts = config.reals("t");
  const auto ys = config.reals("y");
  const double slack = config.real("growth_slack");
  L1Options l1;
  l1.tolerance = config.real("tolerance");

  const double y_max = *std::max_element(ys.begin(), ys.end());
  const CoefficientVector ones(std::vector<double>(static_cast<std::size_t>(y_max * phi.support().hi) + 2, 1.0));

  report.columns = {"q", "char_index", "t", "y", "M", "l1", "normalized_ratio"};
  double max_ratio = 0.0;
  double max_growth = 0.0;
  for (const auto q : config.integers("moduli")) {
    std::vector<DirichletCharacter> chars;
    if (q == 1) {
      chars.push_back(trivial_character());
    } else {
      for (auto& chi : characters_mod(static_cast<int>(q)))
        if (chi.is_primitive()) chars.push_back(chi);
    }
    const double qd = static_cast<double>(q);
    for (const auto& chi : chars) {
      for (double t : ts) {
        const TwistedCoefficients twisted(ones, t, chi);
        const double scale = (1.0 + t * t) * qd * qd * phi_norm;
        double previous = -1.0;
        for (double y : ys) {
          const auto coeffs = twisted.windowed(phi, y);
          const auto r = norms_adaptive(coeffs, l1);
          const double ratio = r.l1.value / scale;
          report.rows.push_back({q, static_cast<std::int64_t>(chi.index()), t, y,
                                 static_cast<std::int64_t>(r.l1.grid), r.l1.value, ratio});
          max_ratio = std::max(max_ratio, ratio);
          if (previous > 0.0) {
            max_growth = std::max(max_growth, ratio / previous);
            if (ratio > (1.0 + slack) * previous)
              report.failures.push_back("normalized ratio grows at q = " + std::to_string(q) + ", index " +
                                        std::to_string(chi.index()) + ", t = " + format_double(t) +
                                        ", y = " + format_double(y));
          }
          previous = ratio;
        }
      }
    }
  }
  report.summary.emplace_back("phi_sobolev_1_2", phi_norm);
  report.summary.emplace_back("max_normalized_ratio", max_ratio);
  report.summary.emplace_back("max_decade_growth", max_growth);
  report.wall_seconds = clock.seconds();
  return report;
}

Report run_prop_a_scan(const ExperimentConfig& config, const RunOptions& options) {
  Stopwatch clock;
  auto report = start_report(config);
  const auto chi = character_for(config);
  const auto zero = find_zero(chi, config.real("zero_lo"), config.real("zero_hi"));
  const auto phi = window_named(config.text("window"));
  report.windows = {phi.name(), "kernel(A=" + config.text("A") + ")"};
  const double t = config.text("t") == "gamma" ? zero.gamma : parse_real("t", config.text("t"));
  const auto xs = config.reals("X");
  const double x_max = *std::max_element(xs.begin(), xs.end());

  KernelOptions ko;
  ko.A = static_cast<int>(config.integer("A"));
  ko.u_min = 1.0 / x_max;
  const auto kernel = build_kernel(make_kernel_spec(zero, ko), 512);
  const auto weight = weight_of(kernel);
  const auto table = cached_sieve(parse_coefficient_kind(config.text("kind")),
                                  static_cast<std::int64_t>(std::floor(x_max)), options.cache_dir);

  const double phi_norm = sobolev_norm(phi, 1, 2);
  const double w_norm = kernel.l1_norm();
  const double q = chi.modulus();
  const double mellin_beta = std::abs(mellin(phi, zero.beta));

  report.columns = {"X", "p", "abs_integral", "predicted", "ratio"};
  std::vector<double> ratios;
  for (double X : xs) {
    const auto rhs = prop_a_rhs(table, weight, phi, chi, t, X);
    const auto l1 = norms_adaptive(table, static_cast<std::int64_t>(std::floor(X))).l1.value;
    const double lhs = phi_norm * w_norm * q * q * (1.0 + t * t) * l1;
    for (const auto& term : rhs.terms) {
      const double pd = static_cast<double>(term.p);
      const double predicted = mellin_beta * std::pow(X, zero.beta) * std::pow(pd, 1.0 - zero.beta);
      const double magnitude = std::abs(term.integral);
      report.rows.push_back({X, term.p, magnitude, predicted, magnitude / predicted});
    }
    const std::string tag = format_double(X);
    report.summary.emplace_back("lhs_X=" + tag, lhs);
    report.summary.emplace_back("rhs_X=" + tag, rhs.value);
    report.summary.emplace_back("l1_X=" + tag, l1);
    report.summary.emplace_back("lhs_over_rhs_X=" + tag, rhs.value > 0.0 ? Cell(lhs / rhs.value) : Cell());
    if (rhs.value > 0.0) ratios.push_back(lhs / rhs.value);
  }
  if (ratios.size() >= 2) {
    const double drift = ratios.back() / ratios.front();
    report.summary.emplace_back("ratio_drift", drift);
    if (drift < 0.8 || drift > 1.2)
      report.failures.push_back("LHS/RHS ratio drifts by a factor " + format_double(drift) + " across X");
  }
  report.summary.emplace_back("gamma", zero.gamma);
  report.summary.emplace_back("t", t);
  report.summary.emplace_back("phi_sobolev_1_2", phi_norm);
  report.summary.emplace_back("kernel_l1", w_norm);
  report.summary.emplace_back("kernel_T", kernel.spec().T);
  report.summary.emplace_back("kernel_tau_step", kernel.spec().step);
  report.wall_seconds = clock.seconds();
  return report;
}

Report run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  validate(config, options.big);
  switch (config.id) {
    case ExperimentId::L1Growth: return run_l1_growth(config, options);
    case ExperimentId::SupNormScan: return run_sup_norm_scan(config, options);
    case ExperimentId::Resonance: return run_resonance(config, options);
    case ExperimentId::VoronoiScan: return run_voronoi_scan(config, options);
    case ExperimentId::PropAScan: return run_prop_a_scan(config, options);
    case ExperimentId::ZeroTable: return run_zero_table(config, options);
  }
  throw ValidationError("unknown experiment");
}

}  // namespace l1lab
