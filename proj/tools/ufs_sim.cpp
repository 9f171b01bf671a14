// Command-line front end: Monte Carlo sweeps, closed-form analytics, and SVG
// plots for the UFS pilot-contamination-attack detection simulator.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "ufs/analytics.hpp"
#include "ufs/config.hpp"
#include "ufs/csv.hpp"
#include "ufs/montecarlo.hpp"
#include "ufs/svg_plot.hpp"

namespace {

int cmd_simulate(const std::string& config_path, const std::string& out_path, int workers,
                 std::optional<std::uint64_t> seed_override) {
  ufs::ExperimentConfig cfg;
  try {
    cfg = ufs::load_experiment_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (seed_override) cfg.master_seed = *seed_override;

  ufs::SweepResult result;
  try {
    result = ufs::run_sweep(cfg, workers);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return 2;
  }
  out << ufs::sweep_to_csv(result, ufs::resolved_config_json(cfg));
  out.close();

  if (long failures = result.total_failures(); failures > 0) {
    std::cerr << failures << " trial(s) hit a numerical failure\n";
    return 3;
  }
  return 0;
}

void print_value(double v) { std::printf("%.12g\n", v); }

void print_bound(const ufs::BoundResult& b) {
  std::printf("%.12g clamped=%d\n", b.value, b.clamped ? 1 : 0);
}

int cmd_plot(const std::string& csv_path, const std::string& out_path,
             const ufs::PlotOptions& opts) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open CSV file: " << csv_path << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string svg;
  try {
    svg = ufs::render_sweep_svg(ufs::parse_sweep_csv(buf.str()), opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "plot error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return 2;
  }
  out << svg;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "UFS pilot-contamination-attack detection simulator.\n"
      "Power knobs are dB at the interface (snr_db = P_B/sigma_n^2,\n"
      "power_ratio_db = P_E/P_B) and converted to linear internally; P_B = 1."};
  app.require_subcommand(1);

  // simulate
  std::string config_path, out_path;
  int workers = 1;
  std::uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo sweep and write a CSV");
  sim->add_option("--config", config_path, "JSON experiment config")->required();
  sim->add_option("--out", out_path, "output CSV path")->required();
  sim->add_option("--workers", workers, "worker thread count")->default_val(1);
  auto* seed_opt = sim->add_option("--seed", seed, "override the config's master_seed");

  // analytic
  std::string kind;
  double noise_var = 0.0, h_norm_sq = 1.0, p_bob = 0.0, p_eve = 0.0, p_th = 0.0;
  double phi_max = 0.0, delta_phi = 0.0;
  int m = 0, n = 0, q = 0, k = 0;
  auto* ana = app.add_subcommand("analytic", "Evaluate a closed-form performance expression");
  ana->add_option("kind", kind,
                  "one of: lemma1-cfo, lemma1-mse, sync, rho, pth, miss-bound, miss-lb")
      ->required();
  ana->add_option("--M", m, "antenna count");
  ana->add_option("--N", n, "pilot length");
  ana->add_option("--Q", q, "segment length");
  ana->add_option("--K", k, "segment count");
  ana->add_option("--noise-var", noise_var, "noise variance (linear)");
  ana->add_option("--h-norm-sq", h_norm_sq, "||h||^2 (default 1)");
  ana->add_option("--p-bob", p_bob, "Bob transmit power (linear)");
  ana->add_option("--p-eve", p_eve, "Eve transmit power (linear)");
  ana->add_option("--p-th", p_th, "power threshold (linear)");
  ana->add_option("--phi-max", phi_max, "maximum normalized artificial CFO");
  ana->add_option("--delta-phi", delta_phi, "normalized CFO difference");

  // plot
  std::string csv_path, svg_path;
  ufs::PlotOptions plot_opts;
  auto* plt = app.add_subcommand("plot", "Render a sweep CSV as an SVG line chart");
  plt->add_option("--csv", csv_path, "input CSV from 'simulate'")->required();
  plt->add_option("--out", svg_path, "output SVG path")->required();
  plt->add_flag("--log-y", plot_opts.log_y, "logarithmic y axis");
  plt->add_flag("--overlay-bound", plot_opts.overlay_bound,
                "overlay the analytic miss-probability bounds (dashed/dotted)");

  CLI11_PARSE(app, argc, argv);

  if (sim->parsed()) {
    std::optional<std::uint64_t> seed_override;
    if (seed_opt->count() > 0) seed_override = seed;
    return cmd_simulate(config_path, out_path, workers, seed_override);
  }

  if (ana->parsed()) {
    auto need = [&](const char* opt) -> bool {
      if (ana->get_option(opt)->count() == 0) {
        std::cerr << "analytic " << kind << ": missing required option " << opt << "\n";
        return false;
      }
      return true;
    };
    try {
      if (kind == "lemma1-cfo") {
        if (!need("--Q") || !need("--noise-var")) return 2;
        print_value(ufs::lemma1_cfo_mse(q, noise_var, h_norm_sq));
      } else if (kind == "lemma1-mse") {
        if (!need("--N") || !need("--Q") || !need("--M") || !need("--noise-var")) return 2;
        print_value(ufs::lemma1_channel_mse(n, q, m, noise_var));
      } else if (kind == "sync") {
        if (!need("--M") || !need("--N") || !need("--noise-var")) return 2;
        print_value(ufs::sync_benchmark_mse(m, n, noise_var));
      } else if (kind == "rho") {
        if (!need("--delta-phi") || !need("--Q")) return 2;
        auto r = ufs::rho(delta_phi, q);
        std::printf("%.12g %.12g\n", r.real(), r.imag());
      } else if (kind == "pth") {
        if (!need("--M") || !need("--Q") || !need("--noise-var")) return 2;
        print_value(ufs::power_threshold(m, q, noise_var));
      } else if (kind == "miss-bound") {
        if (!need("--p-bob") || !need("--p-eve") || !need("--noise-var") || !need("--M") ||
            !need("--Q") || !need("--K") || !need("--phi-max"))
          return 2;
        print_bound(ufs::miss_prob_bound({p_bob, p_eve, noise_var, m, q, k, phi_max}));
      } else if (kind == "miss-lb") {
        if (!need("--p-bob") || !need("--p-th") || !need("--Q") || !need("--K") ||
            !need("--phi-max"))
          return 2;
        print_bound(ufs::miss_prob_lower_bound(p_bob, p_th, q, phi_max, k));
      } else {
        std::cerr << "unknown analytic kind: " << kind << "\n";
        return 2;
      }
    } catch (const std::invalid_argument& e) {
      std::cerr << "analytic error: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }

  return cmd_plot(csv_path, svg_path, plot_opts);
}
