// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: density curves, capacities, the matched
// single-branch approximation, Monte Carlo validation and the two sweeps.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wishart_sum/capacity.hpp"
#include "wishart_sum/cli_config.hpp"
#include "wishart_sum/acceptance.hpp"
#include "wishart_sum/eigen_density.hpp"
#include "wishart_sum/errors.hpp"
#include "wishart_sum/monte_carlo.hpp"
#include "wishart_sum/wishart_model.hpp"

namespace {

using namespace wishart_sum;

PrecisionMode parse_precision(const std::string &s) {
  if (s == "standard")
    return PrecisionMode::standard;
  if (s == "extended")
    return PrecisionMode::extended;
  throw validation_error("precision must be 'standard' or 'extended', got '" + s + "'");
}

// Default comes from the environment when set; an explicit flag wins.
std::string default_precision_name() {
  if (const char *env = std::getenv("WISHART_SUM_PRECISION"); env && *env)
    return env;
  return "extended";
}

struct CommonArgs {
  std::string config_path;
  std::string precision_name = default_precision_name();

  EvaluatorOptions options() const {
    EvaluatorOptions o;
    o.mode = parse_precision(precision_name);
    return o;
  }
};

void add_precision_flag(CLI::App *cmd, CommonArgs &args) {
  cmd->add_option("--precision", args.precision_name,
                  "numerical effort: standard (native floating point only) or "
                  "extended (escalate precision as needed)")
      ->capture_default_str();
}

void add_config_flag(CLI::App *cmd, CommonArgs &args) {
  cmd->add_option("--config", args.config_path, "model JSON file")->required();
}

void print_capacity(const char *tag, const CapacityResult &r) {
  std::printf("%s_bits=%.10f method=%s est_err=%.3g\n", tag, r.bits, r.method.c_str(),
              r.err_estimate);
}

int run_density(const CommonArgs &common, const std::string &out_path, int points,
                double lambda_max, bool with_approx, bool with_mc, McConfig mc) {
  SumSpec spec = load_model(common.config_path);
  DensityEvaluator eval = build_evaluator(spec, common.options());

  std::vector<std::string> headers{"lambda", "pdf_exact"};
  std::vector<double> grid;
  std::optional<EmpiricalDensity> emp;
  if (with_mc) {
    mc.bins = points;
    if (lambda_max > 0.0)
      mc.lambda_max = lambda_max;
    emp = empirical_density(spec, mc);
    for (int b = 0; b < points; ++b)
      grid.push_back(0.5 * (emp->bin_edges[b] + emp->bin_edges[b + 1]));
  } else if (lambda_max > 0.0) {
    for (int i = 0; i < points; ++i)
      grid.push_back(lambda_max * (i + 1) / points);
  } else {
    grid = make_lambda_grid(spec, points);
  }

  std::vector<std::vector<double>> cols{grid, eval.density_grid(grid)};
  if (with_approx) {
    DensityEvaluator approx = build_evaluator(matched_single_term(spec), common.options());
    headers.push_back("pdf_approx");
    cols.push_back(approx.density_grid(grid));
  }
  if (emp) {
    headers.push_back("pdf_empirical");
    cols.push_back(emp->heights);
  }

  if (out_path.empty())
    write_csv(std::cout, headers, cols);
  else
    write_csv_file(out_path, headers, cols);
  std::fprintf(stderr, "density: %d points, widest scalar %s\n", points, eval.rung().c_str());
  return 0;
}

int run_capacity(const CommonArgs &common, const std::string &method) {
  SumSpec spec = load_model(common.config_path);
  if (method == "det" || method == "both")
    print_capacity("capacity", capacity_determinantal(spec, common.options()));
  if (method == "quad" || method == "both")
    print_capacity("capacity", capacity_quadrature(spec, common.options()));
  if (method != "det" && method != "quad" && method != "both")
    throw validation_error("method must be det, quad or both");
  return 0;
}

int run_approx(const CommonArgs &common) {
  SumSpec spec = load_model(common.config_path);
  SumSpec single = matched_single_term(spec);
  std::printf("matched_dof=%d matched_weight=%.10g\n", single.terms[0].p, single.terms[0].a);
  print_capacity("exact", capacity_determinantal(spec, common.options()));
  print_capacity("approx", capacity_approx(spec, common.options()));
  std::printf("rel_error=%.6g\n", approximation_error(spec, common.options()));
  return 0;
}

int run_mc(const CommonArgs &common, const McConfig &mc, const std::string &out_path) {
  SumSpec spec = load_model(common.config_path);
  CapacityEstimate cap = empirical_capacity(spec, mc);
  std::printf("capacity_mc=%.10f std_error=%.3g realizations=%d\n", cap.bits, cap.std_error,
              cap.realizations);
  if (!out_path.empty()) {
    EmpiricalDensity emp = empirical_density(spec, mc);
    std::vector<double> centers;
    for (int b = 0; b < mc.bins; ++b)
      centers.push_back(0.5 * (emp.bin_edges[b] + emp.bin_edges[b + 1]));
    write_csv_file(out_path, {"lambda", "pdf_empirical"}, {centers, emp.heights});
  }
  return 0;
}

int run_relay(const CommonArgs &common, bool with_approx) {
  auto [first, second] = load_relay_pair(common.config_path);
  RelayResult exact = relay_upper_bound(first, second, common.options());
  std::printf("first_hop_bits=%.10f second_hop_bits=%.10f relay_bits=%.10f method=%s\n",
              exact.first_hop_bits, exact.second_hop_bits, exact.bits, exact.method.c_str());
  if (with_approx) {
    RelayResult approx = relay_upper_bound(matched_single_term(first), matched_single_term(second),
                                           common.options());
    std::printf(
        "approx_first_hop_bits=%.10f approx_second_hop_bits=%.10f approx_relay_bits=%.10f\n",
        approx.first_hop_bits, approx.second_hop_bits, approx.bits);
  }
  return 0;
}

int run_sweep_relay(const RelaySweepConfig &cfg, const std::string &out_path) {
  std::vector<RelaySweepPoint> pts = sweep_relay(cfg);
  std::vector<double> g, e, a, m, s;
  for (const auto &p : pts) {
    g.push_back(p.gain_db);
    e.push_back(p.exact_bits);
    a.push_back(p.approx_bits);
    m.push_back(p.mc_bits);
    s.push_back(p.mc_std_error);
  }
  std::vector<std::string> headers{"gain_db", "exact_bits", "approx_bits"};
  std::vector<std::vector<double>> cols{g, e, a};
  if (cfg.with_mc) {
    headers.insert(headers.end(), {"mc_bits", "mc_std_error"});
    cols.insert(cols.end(), {m, s});
  }
  if (out_path.empty())
    write_csv(std::cout, headers, cols);
  else
    write_csv_file(out_path, headers, cols);
  return 0;
}

int run_sweep_error(const ErrorSweepConfig &cfg, const std::string &out_path) {
  std::vector<ErrorSweepPoint> pts = sweep_matching_error(cfg);
  std::vector<double> r, e, a, re;
  for (const auto &p : pts) {
    r.push_back(p.ratio_db);
    e.push_back(p.exact_bits);
    a.push_back(p.approx_bits);
    re.push_back(p.rel_error);
  }
  if (out_path.empty())
    write_csv(std::cout, {"ratio_db", "exact_bits", "approx_bits", "rel_error"}, {r, e, a, re});
  else
    write_csv_file(out_path, {"ratio_db", "exact_bits", "approx_bits", "rel_error"},
                   {r, e, a, re});
  return 0;
}

int dispatch(int argc, char **argv) {
  CLI::App app{"eigenvalue density and capacity of weighted sums of complex Wishart matrices"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string out_path;
  int points = 200;
  double lambda_max = 0.0;
  bool with_approx = false;
  bool with_mc = false;
  std::string method = "det";
  McConfig mc;
  RelaySweepConfig relay_sweep;
  ErrorSweepConfig error_sweep;

  CLI::App *density = app.add_subcommand("density", "marginal eigenvalue density on a grid");
  add_config_flag(density, common);
  add_precision_flag(density, common);
  density->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  density->add_option("--points", points, "grid size")->capture_default_str();
  density->add_option("--lambda-max", lambda_max, "grid upper end (auto when omitted)");
  density->add_flag("--approx", with_approx, "add the matched single-branch density column");
  density->add_flag("--mc", with_mc, "add an empirical histogram column (grid = bin centers)");
  density->add_option("--realizations", mc.realizations)->capture_default_str();
  density->add_option("--seed", mc.seed)->capture_default_str();
  density->add_option("--threads", mc.threads, "0 = all hardware threads");

  CLI::App *capacity = app.add_subcommand("capacity", "ergodic sum-rate capacity");
  add_config_flag(capacity, common);
  add_precision_flag(capacity, common);
  capacity->add_option("--method", method, "det, quad or both")->capture_default_str();

  CLI::App *approx = app.add_subcommand("approx", "matched single-branch approximation");
  add_config_flag(approx, common);
  add_precision_flag(approx, common);

  CLI::App *mc_cmd = app.add_subcommand("mc", "Monte Carlo capacity and histogram");
  add_config_flag(mc_cmd, common);
  mc_cmd->add_option("--out", out_path, "histogram CSV path");
  mc_cmd->add_option("--realizations", mc.realizations)->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed)->capture_default_str();
  mc_cmd->add_option("--bins", mc.bins)->capture_default_str();
  mc_cmd->add_option("--lambda-max", mc.lambda_max, "histogram upper edge (auto when 0)");
  mc_cmd->add_option("--threads", mc.threads, "0 = all hardware threads");

  CLI::App *relay = app.add_subcommand("relay", "two-hop relay capacity upper bound");
  add_config_flag(relay, common);
  add_precision_flag(relay, common);
  relay->add_flag("--approx", with_approx, "also report the matched approximation");

  CLI::App *sweep_relay_cmd =
      app.add_subcommand("sweep-relay", "relay bound across a gain sweep");
  sweep_relay_cmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  sweep_relay_cmd->add_option("--points", relay_sweep.points)->capture_default_str();
  sweep_relay_cmd->add_option("--lo-db", relay_sweep.lo_db)->capture_default_str();
  sweep_relay_cmd->add_option("--hi-db", relay_sweep.hi_db)->capture_default_str();
  sweep_relay_cmd->add_option("--antennas", relay_sweep.antennas)->capture_default_str();
  sweep_relay_cmd->add_option("--offset-db", relay_sweep.first_hop_offset_db)
      ->capture_default_str();
  bool no_mc = false;
  sweep_relay_cmd->add_flag("--no-mc", no_mc, "skip the Monte Carlo column");
  sweep_relay_cmd->add_option("--realizations", relay_sweep.mc.realizations)
      ->capture_default_str();
  sweep_relay_cmd->add_option("--seed", relay_sweep.mc.seed)->capture_default_str();
  sweep_relay_cmd->add_option("--threads", relay_sweep.mc.threads);

  CLI::App *sweep_error_cmd =
      app.add_subcommand("sweep-error", "matched-approximation error across a gain ratio sweep");
  sweep_error_cmd->add_option("--out", out_path, "CSV output path (stdout when omitted)");
  sweep_error_cmd->add_option("--points", error_sweep.points)->capture_default_str();
  sweep_error_cmd->add_option("--lo-db", error_sweep.ratio_lo_db)->capture_default_str();
  sweep_error_cmd->add_option("--hi-db", error_sweep.ratio_hi_db)->capture_default_str();
  sweep_error_cmd->add_option("--base-db", error_sweep.base_gain_db)->capture_default_str();
  sweep_error_cmd->add_option("--antennas", error_sweep.antennas)->capture_default_str();

  CLI::App *selftest = app.add_subcommand("selftest", "run the built-in acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  if (density->parsed())
    return run_density(common, out_path, points, lambda_max, with_approx, with_mc, mc);
  if (capacity->parsed())
    return run_capacity(common, method);
  if (approx->parsed())
    return run_approx(common);
  if (mc_cmd->parsed())
    return run_mc(common, mc, out_path);
  if (relay->parsed())
    return run_relay(common, with_approx);
  if (sweep_relay_cmd->parsed()) {
    relay_sweep.with_mc = !no_mc;
    relay_sweep.opts = common.options();
    return run_sweep_relay(relay_sweep, out_path);
  }
  if (sweep_error_cmd->parsed()) {
    error_sweep.opts = common.options();
    return run_sweep_error(error_sweep, out_path);
  }
  if (selftest->parsed()) {
    auto results = acceptance::run_all(std::cout);
    bool all = !results.empty();
    for (const auto &r : results)
      all = all && r.pass;
    return all ? 0 : 1;
  }
  return 1;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return dispatch(argc, argv);
  } catch (const validation_error &e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const numerical_error &e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
