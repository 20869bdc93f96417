// Command-line front end: exact and Monte Carlo pipeline evaluation, the
// good/bad bijection report, the closed-form region grid, figure datasets,
// and the verification battery.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jointsel/jointsel.hpp"

namespace fs = std::filesystem;
using namespace jointsel;

namespace {

struct CommonOptions {
  std::string out_dir = ".";
  std::string out;
  std::string format = "csv";
};

// Resolves --out against the output directory; "-" (or empty when allowed)
// means stdout.
fs::path resolve_out(const CommonOptions& common,
                     const std::string& fallback_name) {
  std::string name = common.out.empty() ? fallback_name : common.out;
  fs::path path(name);
  if (path.is_absolute()) return path;
  return fs::path(common.out_dir) / path;
}

void write_text_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? "."
                                                    : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit_dataset(const FigureDataset& ds, const CommonOptions& common) {
  std::string text;
  std::string extension;
  if (common.format == "csv") {
    std::ostringstream buffer;
    ds.write_csv(buffer);
    text = buffer.str();
    extension = ".csv";
  } else if (common.format == "json") {
    text = to_json(ds).dump(2) + "\n";
    extension = ".json";
  } else if (common.format == "svg") {
    text = figure_svg(ds);
    extension = ".svg";
  } else {
    throw CLI::ValidationError("--format", "unsupported format '" +
                                               common.format + "'");
  }
  if (common.out == "-") {
    std::cout << text;
    return;
  }
  const fs::path path = resolve_out(common, ds.figure_id + extension);
  write_text_file(path, text);
  std::cout << "wrote " << path.string() << "\n";
}

void emit_estimates(const PipelineConfig& config,
                    const std::vector<SuccessEstimate>& estimates,
                    const CommonOptions& common,
                    const std::string& fallback_name) {
  std::string text;
  if (common.format == "csv") {
    std::ostringstream buffer;
    write_success_estimate_header(buffer);
    for (const SuccessEstimate& est : estimates)
      write_success_estimate_row(buffer, config, est);
    text = buffer.str();
  } else if (common.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const SuccessEstimate& est : estimates) rows.push_back(to_json(est));
    text = rows.dump(2) + "\n";
  } else {
    throw CLI::ValidationError("--format",
                               "use csv or json for estimate output");
  }
  if (common.out.empty() || common.out == "-") {
    std::cout << text;
    return;
  }
  write_text_file(resolve_out(common, fallback_name), text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jointsel: success probabilities for a two-stage selection pipeline "
      "(a ranker presents its top k, a second noisy ranker picks one)"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key-value config file; sections name subcommands. "
                 "Precedence: flags > file > defaults");

  CommonOptions common;
  app.add_option("--out-dir", common.out_dir,
                 "Default output directory (also via JOINTSEL_OUT_DIR)")
      ->envname("JOINTSEL_OUT_DIR")
      ->capture_default_str();

  int n = 5, k = 2;
  double phi_a = 1.0, phi_h = 1.0, sigma_a = 0.5, sigma_h = 0.5, weight = 0.0;
  std::uint64_t trials = 50000, seed = 42;
  int batches = 1;

  const auto add_model_flags = [&](CLI::App* cmd, bool with_rum) {
    cmd->add_option("--n", n, "Number of items")->capture_default_str();
    cmd->add_option("--k", k, "Items presented")->capture_default_str();
    cmd->add_option("--phi-a", phi_a, "Algorithm accuracy (Mallows)")
        ->capture_default_str();
    cmd->add_option("--phi-h", phi_h, "Human accuracy (Mallows)")
        ->capture_default_str();
    if (with_rum) {
      cmd->add_option("--sigma-a", sigma_a, "Algorithm noise (RUM)")
          ->capture_default_str();
      cmd->add_option("--sigma-h", sigma_h, "Human noise (RUM)")
          ->capture_default_str();
    }
    cmd->add_option("--weight", weight, "Anchoring weight in [0,1]")
        ->capture_default_str();
    cmd->add_option("--out", common.out, "Output path ('-' for stdout)");
    cmd->add_option("--format", common.format, "csv|json|svg")
        ->capture_default_str();
  };

  // exact
  CLI::App* exact_cmd =
      app.add_subcommand("exact", "Exact success probabilities (Mallows)");
  add_model_flags(exact_cmd, false);

  // simulate
  std::string model = "mallows";
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo success probabilities (Mallows or RUM)");
  add_model_flags(sim_cmd, true);
  sim_cmd->add_option("--model", model, "mallows|rum")->capture_default_str();
  sim_cmd->add_option("--trials", trials, "Trials per batch")
      ->capture_default_str();
  sim_cmd->add_option("--batches", batches, "Batches (seeds seed+0..seed+b-1)")
      ->capture_default_str();
  sim_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

  // bijection
  std::string bij_format = "json";
  CLI::App* bij_cmd = app.add_subcommand(
      "bijection", "Exhaustive good/bad event bijection report (JSON)");
  bij_cmd->add_option("--n", n, "Number of items")->capture_default_str();
  bij_cmd->add_option("--k", k, "Items presented")->capture_default_str();
  bij_cmd->add_option("--out", common.out, "Output path ('-' for stdout)");
  bij_cmd->add_option("--format", bij_format, "json")->capture_default_str();

  // region
  double phi_min = 0.1, phi_max = 3.0;
  int resolution = 40;
  CLI::App* region_cmd = app.add_subcommand(
      "region", "Closed-form complementarity region grid (3 items, 2 shown)");
  region_cmd->add_option("--phi-min", phi_min, "Grid minimum accuracy")
      ->capture_default_str();
  region_cmd->add_option("--phi-max", phi_max, "Grid maximum accuracy")
      ->capture_default_str();
  region_cmd->add_option("--resolution", resolution, "Grid points per axis")
      ->capture_default_str();
  region_cmd->add_option("--out", common.out, "Output path ('-' for stdout)");
  region_cmd->add_option("--format", common.format, "csv|json|svg")
      ->capture_default_str();

  // figure
  std::string which;
  double phi_equal = 1.0, sigma_equal = 0.5;
  std::vector<double> weights = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> sigma_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.65, 0.8, 1.0,
                                    1.2};
  std::uint64_t fig_trials = 50000;
  int fig_batches = 10;
  CLI::App* fig_cmd = app.add_subcommand("figure", "Figure datasets");
  fig_cmd
      ->add_option("which", which,
                   "mallows-anchor|rum-anchor|rum-contour|mallows-region")
      ->required();
  fig_cmd->add_option("--n", n, "Number of items")->capture_default_str();
  fig_cmd->add_option("--k", k, "Items presented (contour)")
      ->capture_default_str();
  fig_cmd->add_option("--phi", phi_equal, "Equal Mallows accuracy")
      ->capture_default_str();
  fig_cmd->add_option("--sigma", sigma_equal, "Equal RUM noise")
      ->capture_default_str();
  fig_cmd->add_option("--weights", weights, "Anchoring weights swept")
      ->capture_default_str();
  fig_cmd->add_option("--sigma-grid", sigma_grid, "Noise grid (contour)")
      ->capture_default_str();
  CLI::Option* fig_trials_opt =
      fig_cmd->add_option("--trials", fig_trials,
                          "Trials per batch (anchor) / per cell (contour)")
          ->capture_default_str();
  fig_cmd->add_option("--batches", fig_batches, "Monte Carlo batches")
      ->capture_default_str();
  fig_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  fig_cmd->add_option("--phi-min", phi_min, "Region grid minimum")
      ->capture_default_str();
  fig_cmd->add_option("--phi-max", phi_max, "Region grid maximum")
      ->capture_default_str();
  fig_cmd->add_option("--resolution", resolution, "Region grid resolution")
      ->capture_default_str();
  fig_cmd->add_option("--out", common.out, "Output path ('-' for stdout)");
  fig_cmd->add_option("--format", common.format, "csv|json|svg")
      ->capture_default_str();

  // verify
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the verification battery and write its report");
  verify_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify_cmd->add_option("--out", common.out,
                         "Report directory (default <out-dir>/verify)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*exact_cmd) {
      const PipelineConfig config =
          PipelineConfig::mallows(n, k, phi_a, phi_h, weight);
      emit_estimates(config, {exact_success(config)}, common, "exact.csv");
      return 0;
    }
    if (*sim_cmd) {
      PipelineConfig config;
      if (model == "mallows") {
        config = PipelineConfig::mallows(n, k, phi_a, phi_h, weight);
      } else if (model == "rum") {
        config = PipelineConfig::rum(n, k, sigma_a, sigma_h, weight);
      } else {
        throw CLI::ValidationError("--model", "expected mallows or rum");
      }
      if (batches < 1)
        throw CLI::ValidationError("--batches", "must be >= 1");
      std::vector<SuccessEstimate> estimates;
      for (int b = 0; b < batches; ++b)
        estimates.push_back(estimate_success(
            config, trials, seed + static_cast<std::uint64_t>(b)));
      emit_estimates(config, estimates, common, "simulate.csv");
      return 0;
    }
    if (*bij_cmd) {
      if (bij_format != "json")
        throw CLI::ValidationError("--format",
                                   "bijection reports are JSON only");
      const BijectionReport report = verify_bijection(n, k);
      const std::string text = to_json(report).dump(2) + "\n";
      if (common.out.empty() || common.out == "-") {
        std::cout << text;
      } else {
        write_text_file(resolve_out(common, "bijection.json"), text);
      }
      return report.success() ? 0 : 2;
    }
    if (*region_cmd) {
      emit_dataset(run_region_figure({phi_min, phi_max, resolution}), common);
      return 0;
    }
    if (*fig_cmd) {
      if (which == "mallows-anchor" || which == "rum-anchor") {
        AnchorSweepConfig config;
        config.n = n;
        config.phi = phi_equal;
        config.sigma = sigma_equal;
        config.weights = weights;
        config.trials_per_batch = fig_trials;
        config.batches = fig_batches;
        config.seed = seed;
        emit_dataset(which == "mallows-anchor"
                         ? run_figure_mallows_anchoring(config)
                         : run_figure_rum_anchoring(config),
                     common);
      } else if (which == "rum-contour") {
        RumContourConfig config;
        config.n = n;
        config.k = k;
        config.sigma_grid = sigma_grid;
        // Contour cells default to a larger budget than anchor batches.
        config.trials = fig_trials_opt->count() ? fig_trials : 200000;
        config.seed = seed;
        emit_dataset(run_figure_rum_contour(config), common);
      } else if (which == "mallows-region") {
        emit_dataset(run_region_figure({phi_min, phi_max, resolution}),
                     common);
      } else {
        throw CLI::ValidationError("which", "unknown figure '" + which + "'");
      }
      return 0;
    }
    if (*verify_cmd) {
      const fs::path dir = common.out.empty()
                               ? fs::path(common.out_dir) / "verify"
                               : resolve_out(common, "verify");
      const VerificationReport report = run_verification_suite(seed, dir);
      for (const CheckResult& check : report.checks)
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.id
                  << ": " << check.details << "\n";
      std::cout << (report.all_passed() ? "all checks passed"
                                        : "verification FAILED")
                << " (report in " << dir.string() << ")\n";
      return report.all_passed() ? 0 : 2;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
