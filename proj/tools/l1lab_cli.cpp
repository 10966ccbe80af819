#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "l1lab/dirichlet.hpp"
#include "l1lab/errors.hpp"
#include "l1lab/harness.hpp"
#include "l1lab/mult_arith.hpp"
#include "l1lab/testfns.hpp"

using namespace l1lab;

namespace {

// Flags shared by the experiment subcommands, plus per-key overrides that
// are applied on top of the config file (or the defaults).
struct Experiment {
  ExperimentId id;
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string cache_dir;
  bool big = false;
  bool assert_pass = false;
  std::map<std::string, std::vector<std::string>> overrides;
};

CLI::App* add_experiment(CLI::App& app, const std::string& name, const std::string& help, Experiment& e) {
  auto* cmd = app.add_subcommand(name, help);
  cmd->add_option("--config", e.config, "Experiment config file (key = value lines)");
  cmd->add_option("--out", e.out, "Write the report to this file instead of stdout");
  cmd->add_option("--format", e.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--cache-dir", e.cache_dir, "Directory for cached coefficient tables");
  cmd->add_flag("--big", e.big, "Lift the desk-scale size caps");
  cmd->add_flag("--assert", e.assert_pass, "Exit with status 3 if any check fails");
  return cmd;
}

// --flag v1 [v2 ...] sets config key to "v1,v2,...".
void add_override(CLI::App* cmd, Experiment& e, const std::string& flag, const std::string& key,
                  const std::string& help, int count = 1) {
  auto* opt = cmd->add_option(flag, e.overrides[key], help);
  if (count > 0) {
    opt->expected(count);
  } else {
    opt->expected(1, 1 << 20)->delimiter(',');
  }
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

int run(const Experiment& e) {
  ExperimentConfig cfg = default_config(e.id);
  if (!e.config.empty()) {
    cfg = load_config(e.config);
    if (cfg.id != e.id)
      throw ValidationError("config is for experiment '" + std::string(to_string(cfg.id)) + "', expected '" +
                            std::string(to_string(e.id)) + "'");
  }
  for (const auto& [key, values] : e.overrides) {
    if (values.empty()) continue;
    if (key == "zero_range" || key == "range") {
      const std::string lo = key == "range" ? "t_lo" : "zero_lo";
      const std::string hi = key == "range" ? "t_hi" : "zero_hi";
      cfg.params[lo] = values[0];
      cfg.params[hi] = values[1];
    } else {
      cfg.params[key] = join(values);
    }
  }
  RunOptions options;
  options.big = e.big;
  options.cache_dir = e.cache_dir;
  const auto report = run_experiment(cfg, options);

  const auto format = parse_report_format(e.format);
  if (e.out.empty()) {
    std::cout << emit_report(report, format);
  } else {
    write_report(report, format, e.out);
  }
  std::cerr << to_string(report.config.id) << ": " << report.rows.size() << " rows, " << report.failures.size()
            << " failures, " << report.wall_seconds << " s\n";
  for (const auto& f : report.failures) std::cerr << "  failure: " << f << "\n";
  return (e.assert_pass && !report.passed()) ? 3 : 0;
}

void add_zero_overrides(CLI::App* cmd, Experiment& e) {
  add_override(cmd, e, "--modulus", "modulus", "Modulus q (1 for zeta)");
  add_override(cmd, e, "--char-index", "char_index", "Character index mod q");
  add_override(cmd, e, "--zero-range", "zero_range", "Height range a b holding the zero", 2);
  add_override(cmd, e, "--A", "A", "Kernel decay order");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l1lab: L1 norms of multiplicative exponential sums and resonance kernels"};
  app.set_version_flag("--version", std::string(L1LAB_VERSION));
  app.require_subcommand(1);

  int exit_code = 0;

  std::int64_t sieve_n = 1000;
  std::string sieve_kind = "liouville";
  std::string sieve_out, sieve_cache;
  auto* sieve_cmd = app.add_subcommand("sieve", "Build a Liouville or Moebius table and write it as a cache file");
  sieve_cmd->add_option("--limit,-N", sieve_n, "Table size")->check(CLI::PositiveNumber);
  sieve_cmd->add_option("--kind", sieve_kind, "liouville or moebius")->check(CLI::IsMember({"liouville", "moebius"}));
  sieve_cmd->add_option("--out", sieve_out, "Write the binary table to this path");
  sieve_cmd->add_option("--cache-dir", sieve_cache, "Reuse or populate this cache directory");
  sieve_cmd->callback([&] {
    const auto kind = parse_coefficient_kind(sieve_kind);
    const auto table = sieve_cache.empty() ? sieve(kind, sieve_n) : cached_sieve(kind, sieve_n, sieve_cache);
    if (!sieve_out.empty()) save_table(table, sieve_out);
    std::cout << "kind," << to_string(kind) << "\nN," << table.limit() << "\npartial_sum,"
              << partial_sum(table, table.limit()) << "\n";
  });

  int char_q = 5;
  auto* chars_cmd = app.add_subcommand("characters", "List the Dirichlet characters of a modulus");
  chars_cmd->add_option("--modulus,-q", char_q, "Modulus")->required();
  chars_cmd->callback([&] {
    std::cout << "index,conductor,primitive,real,odd,gauss_re,gauss_im\n";
    for (const auto& chi : characters_mod(char_q)) {
      const auto g = gauss_sum(chi);
      std::printf("%d,%d,%d,%d,%d,%.17g,%.17g\n", chi.index(), chi.conductor(), chi.is_primitive() ? 1 : 0,
                  chi.is_real() ? 1 : 0, chi.is_odd() ? 1 : 0, g.real(), g.imag());
    }
  });

  Experiment zeros{ExperimentId::ZeroTable};
  auto* zeros_cmd = add_experiment(app, "zeros", "Tabulate critical-line zeros of L(s, chi)", zeros);
  add_override(zeros_cmd, zeros, "--modulus", "modulus", "Modulus q (1 for zeta)");
  add_override(zeros_cmd, zeros, "--char-index", "char_index", "Character index mod q");
  add_override(zeros_cmd, zeros, "--range", "range", "Height range t_lo t_hi", 2);
  zeros_cmd->callback([&] { exit_code = run(zeros); });

  std::string tf_window = "bump";
  bool tf_dump = false;
  int tf_points = 101;
  auto* tf_cmd = app.add_subcommand("testfns", "Summarise or dump a test window");
  tf_cmd->add_option("--window", tf_window, "bump, triangle, varrho or phi_one")
      ->check(CLI::IsMember({"bump", "triangle", "varrho", "phi_one"}));
  tf_cmd->add_flag("--dump", tf_dump, "Print sampled values as CSV instead of the summary");
  tf_cmd->add_option("--points", tf_points, "Samples for --dump")->check(CLI::Range(2, 1000000));
  tf_cmd->callback([&] {
    const SmoothWindow w = tf_window == "bump"       ? bump_window()
                           : tf_window == "triangle" ? triangle_window()
                           : tf_window == "varrho"   ? varrho_window()
                                                     : phi_one(bump_window());
    const auto sup = w.support();
    if (tf_dump) {
      std::cout << "x,value,derivative\n";
      for (int i = 0; i < tf_points; ++i) {
        const double x = sup.lo + (sup.hi - sup.lo) * i / (tf_points - 1);
        std::printf("%.17g,%.17g,%.17g\n", x, w(x), w.derivative(x, 1));
      }
      return;
    }
    std::printf("name,%s\nsupport_lo,%.17g\nsupport_hi,%.17g\nsobolev_order,%d\n", w.name().c_str(), sup.lo,
                sup.hi, w.sobolev_order());
    for (int r = 0; r <= w.sobolev_order(); ++r) std::printf("sobolev_1_%d,%.17g\n", r, sobolev_norm(w, 1, r));
    if (sup.lo >= 0.0) {
      const auto m = mellin(w, 0.5);
      std::printf("mellin_half_re,%.17g\nmellin_half_im,%.17g\n", m.real(), m.imag());
    }
  });

  Experiment l1{ExperimentId::L1Growth};
  auto* l1_cmd = add_experiment(app, "l1norm", "L1 growth of the Liouville (or Moebius) exponential sum", l1);
  add_override(l1_cmd, l1, "--kind", "kind", "liouville or moebius");
  add_override(l1_cmd, l1, "--xmin", "xmin", "Smallest X");
  add_override(l1_cmd, l1, "--xmax", "xmax", "Largest X");
  add_override(l1_cmd, l1, "--geometric", "geometric", "Ratio between successive X");
  l1_cmd->callback([&] { exit_code = run(l1); });

  Experiment sup{ExperimentId::SupNormScan};
  auto* sup_cmd = add_experiment(app, "sup-norm", "Sup norms of the same exponential sums", sup);
  add_override(sup_cmd, sup, "--kind", "kind", "liouville or moebius");
  add_override(sup_cmd, sup, "--xmin", "xmin", "Smallest X");
  add_override(sup_cmd, sup, "--xmax", "xmax", "Largest X");
  sup_cmd->callback([&] { exit_code = run(sup); });

  Experiment kc{ExperimentId::Resonance};
  auto* kc_cmd = add_experiment(app, "kernel-check", "Resonance kernel against its main term at chosen Y", kc);
  add_zero_overrides(kc_cmd, kc);
  add_override(kc_cmd, kc, "--Y", "Y", "Scales Y (comma separated or repeated)", 0);
  kc_cmd->callback([&] { exit_code = run(kc); });

  Experiment res{ExperimentId::Resonance};
  auto* res_cmd = add_experiment(app, "resonance", "Resonance scan over a geometric range of Y", res);
  add_zero_overrides(res_cmd, res);
  add_override(res_cmd, res, "--ymin", "ymin", "Smallest Y");
  add_override(res_cmd, res, "--ymax", "ymax", "Largest Y");
  res_cmd->callback([&] { exit_code = run(res); });

  Experiment vor{ExperimentId::VoronoiScan};
  auto* vor_cmd = add_experiment(app, "voronoi-scan", "Normalised L1 norms of twisted smooth sums", vor);
  add_override(vor_cmd, vor, "--moduli", "moduli", "Moduli q", 0);
  add_override(vor_cmd, vor, "--t", "t", "Twists t", 0);
  add_override(vor_cmd, vor, "--y", "y", "Lengths y", 0);
  vor_cmd->callback([&] { exit_code = run(vor); });

  Experiment pa{ExperimentId::PropAScan};
  auto* pa_cmd = add_experiment(app, "prop-a-scan", "Prime-sum integrals against the L1 norm", pa);
  add_zero_overrides(pa_cmd, pa);
  add_override(pa_cmd, pa, "--X", "X", "Scales X", 0);
  add_override(pa_cmd, pa, "--t", "t", "Twist t, or 'gamma' for the zero ordinate");
  pa_cmd->callback([&] { exit_code = run(pa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
