#pragma once

// Figure datasets and the experiment runners behind them: anchoring sweeps
// over (k, weight) for both noise models, the RUM noise contour, and the
// closed-form region grid. Every dataset is deterministic given its config
// and seed; CSV files carry the full provenance in '#' metadata lines.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jointsel/closed_form.hpp"
#include "jointsel/io.hpp"
#include "jointsel/pipeline.hpp"
#include "jointsel/svg.hpp"

namespace jointsel {

inline constexpr const char* kToolVersion = "jointsel 0.1.0";

struct FigureDataset {
  std::string figure_id;
  std::string provenance;  // tool version + parameters; never a timestamp
  std::uint64_t seed = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    throw std::invalid_argument("FigureDataset: no column '" + name + "'");
  }

  void write_csv(std::ostream& out) const {
    out << "# figure: " << figure_id << '\n';
    out << "# provenance: " << provenance << '\n';
    out << "# seed: " << seed << '\n';
    write_csv_row(out, columns);
    std::vector<std::string> cells(columns.size());
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        cells[i] = format_double(row[i]);
      write_csv_row(out, cells);
    }
  }

  static FigureDataset read_csv(std::istream& in) {
    const CsvDocument doc = jointsel::read_csv(in);
    FigureDataset ds;
    for (const std::string& comment : doc.comments) {
      const auto strip = [&](const std::string& prefix) {
        return comment.rfind(prefix, 0) == 0
                   ? std::optional<std::string>(comment.substr(prefix.size()))
                   : std::nullopt;
      };
      if (auto v = strip("# figure: ")) ds.figure_id = *v;
      else if (auto p = strip("# provenance: ")) ds.provenance = *p;
      else if (auto s = strip("# seed: ")) ds.seed = std::stoull(*s);
    }
    if (doc.rows.empty())
      throw std::invalid_argument("FigureDataset: no header row");
    ds.columns = doc.rows.front();
    for (std::size_t r = 1; r < doc.rows.size(); ++r) {
      std::vector<double> row;
      row.reserve(doc.rows[r].size());
      for (const std::string& cell : doc.rows[r])
        row.push_back(parse_double(cell));
      ds.rows.push_back(std::move(row));
    }
    return ds;
  }
};

// One CSV row per success estimate: config fields, probabilities, standard
// errors, trials, seed.
inline void write_success_estimate_header(std::ostream& out) {
  out << "model,n,k,phi_a,phi_h,sigma_a,sigma_h,weight,p_joint,p_algo,"
         "p_human,se_joint,se_algo,se_human,trials,seed\n";
}

inline void write_success_estimate_row(std::ostream& out,
                                       const PipelineConfig& config,
                                       const SuccessEstimate& est) {
  out << (config.model == NoiseModel::mallows ? "mallows" : "rum") << ','
      << config.n << ',' << config.k << ',' << format_double(config.phi_algo)
      << ',' << format_double(config.phi_human) << ','
      << format_double(config.sigma_algo) << ','
      << format_double(config.sigma_human) << ','
      << format_double(config.anchor_weight) << ','
      << format_double(est.p_joint) << ',' << format_double(est.p_algo) << ','
      << format_double(est.p_human) << ',' << format_double(est.se_joint)
      << ',' << format_double(est.se_algo) << ','
      << format_double(est.se_human) << ',' << est.trials << ',' << est.seed
      << '\n';
}

inline void write_success_estimate_csv(std::ostream& out,
                                       const PipelineConfig& config,
                                       const SuccessEstimate& est) {
  write_success_estimate_header(out);
  write_success_estimate_row(out, config, est);
}

// Sweep over presented count k and anchoring weight at equal accuracy,
// batched Monte Carlo alongside (for Mallows) the exact oracle values.
struct AnchorSweepConfig {
  int n = 5;
  double phi = 1.0;    // Mallows accuracy for both actors
  double sigma = 0.5;  // RUM noise for both actors
  std::vector<double> weights = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::uint64_t trials_per_batch = 50000;
  int batches = 10;
  std::uint64_t seed = 42;
};

namespace detail {

struct BatchSummary {
  double joint_mean = 0.0;
  double joint_std = 0.0;
  double algo_mean = 0.0;
  double human_mean = 0.0;
};

// Batch b uses seed + b; the spread across batch means is the reported
// uncertainty.
inline BatchSummary run_batches(const PipelineConfig& config,
                                std::uint64_t trials_per_batch, int batches,
                                std::uint64_t seed) {
  if (batches < 1)
    throw std::invalid_argument("run_batches: batches must be >= 1");
  std::vector<double> joints(static_cast<std::size_t>(batches));
  BatchSummary summary;
  for (int b = 0; b < batches; ++b) {
    const SuccessEstimate est = estimate_success(
        config, trials_per_batch, seed + static_cast<std::uint64_t>(b));
    joints[static_cast<std::size_t>(b)] = est.p_joint;
    summary.joint_mean += est.p_joint;
    summary.algo_mean += est.p_algo;
    summary.human_mean += est.p_human;
  }
  summary.joint_mean /= batches;
  summary.algo_mean /= batches;
  summary.human_mean /= batches;
  if (batches > 1) {
    double ss = 0.0;
    for (double j : joints) ss += (j - summary.joint_mean) * (j - summary.joint_mean);
    summary.joint_std = std::sqrt(ss / (batches - 1));
  }
  return summary;
}

}  // namespace detail

inline FigureDataset run_figure_mallows_anchoring(
    const AnchorSweepConfig& config) {
  FigureDataset ds;
  ds.figure_id = "mallows-anchor";
  ds.seed = config.seed;
  {
    std::ostringstream prov;
    prov << kToolVersion << " mallows-anchor n=" << config.n
         << " phi=" << format_double(config.phi)
         << " trials_per_batch=" << config.trials_per_batch
         << " batches=" << config.batches << " seed=" << config.seed;
    ds.provenance = prov.str();
  }
  ds.columns = {"k",
                "weight",
                "p_joint_exact",
                "p_algo_exact",
                "p_human_exact",
                "p_human_unanchored",
                "p_joint_mc",
                "p_joint_mc_batch_std",
                "p_algo_mc",
                "p_human_mc",
                "trials_per_batch",
                "batches"};
  const double p_human_unanchored =
      exact_success(
          PipelineConfig::mallows(config.n, config.n, config.phi, config.phi,
                                  0.0))
          .p_human;
  for (double w : config.weights) {
    for (int k = 1; k <= config.n; ++k) {
      const PipelineConfig cell =
          PipelineConfig::mallows(config.n, k, config.phi, config.phi, w);
      const SuccessEstimate exact = exact_success(cell);
      const detail::BatchSummary mc = detail::run_batches(
          cell, config.trials_per_batch, config.batches, config.seed);
      ds.rows.push_back({static_cast<double>(k), w, exact.p_joint,
                         exact.p_algo, exact.p_human, p_human_unanchored,
                         mc.joint_mean, mc.joint_std, mc.algo_mean,
                         mc.human_mean,
                         static_cast<double>(config.trials_per_batch),
                         static_cast<double>(config.batches)});
    }
  }
  return ds;
}

inline FigureDataset run_figure_rum_anchoring(const AnchorSweepConfig& config) {
  FigureDataset ds;
  ds.figure_id = "rum-anchor";
  ds.seed = config.seed;
  {
    std::ostringstream prov;
    prov << kToolVersion << " rum-anchor n=" << config.n
         << " sigma=" << format_double(config.sigma)
         << " trials_per_batch=" << config.trials_per_batch
         << " batches=" << config.batches << " seed=" << config.seed;
    ds.provenance = prov.str();
  }
  ds.columns = {"k",        "weight",        "p_joint_mc",
                "p_joint_mc_batch_std", "p_algo_mc", "p_human_mc",
                "trials_per_batch",     "batches"};
  for (double w : config.weights) {
    for (int k = 1; k <= config.n; ++k) {
      const PipelineConfig cell =
          PipelineConfig::rum(config.n, k, config.sigma, config.sigma, w);
      const detail::BatchSummary mc = detail::run_batches(
          cell, config.trials_per_batch, config.batches, config.seed);
      ds.rows.push_back({static_cast<double>(k), w, mc.joint_mean,
                         mc.joint_std, mc.algo_mean, mc.human_mean,
                         static_cast<double>(config.trials_per_batch),
                         static_cast<double>(config.batches)});
    }
  }
  return ds;
}

// Complementarity over a grid of per-actor noise levels.
struct RumContourConfig {
  int n = 10;
  int k = 2;
  std::vector<double> sigma_grid = {0.1, 0.2, 0.3, 0.4, 0.5,
                                    0.65, 0.8, 1.0, 1.2};
  std::uint64_t trials = 200000;
  std::uint64_t seed = 42;
};

inline FigureDataset run_figure_rum_contour(const RumContourConfig& config) {
  FigureDataset ds;
  ds.figure_id = "rum-contour";
  ds.seed = config.seed;
  {
    std::ostringstream prov;
    prov << kToolVersion << " rum-contour n=" << config.n << " k=" << config.k
         << " trials=" << config.trials << " seed=" << config.seed;
    ds.provenance = prov.str();
  }
  ds.columns = {"sigma_a", "sigma_h",   "p_joint",       "p_algo",
                "p_human", "margin",    "se_margin",     "complementary",
                "significant"};
  for (double sh : config.sigma_grid) {
    for (double sa : config.sigma_grid) {
      const SuccessEstimate est = estimate_success(
          PipelineConfig::rum(config.n, config.k, sa, sh, 0.0), config.trials,
          config.seed);
      const double rival = std::max(est.p_algo, est.p_human);
      const double margin = est.p_joint - rival;
      const double se_rival =
          est.p_algo >= est.p_human ? est.se_algo : est.se_human;
      const double se_margin =
          std::sqrt(est.se_joint * est.se_joint + se_rival * se_rival);
      ds.rows.push_back({sa, sh, est.p_joint, est.p_algo, est.p_human, margin,
                         se_margin, margin > 0.0 ? 1.0 : 0.0,
                         std::fabs(margin) > 3.0 * se_margin ? 1.0 : 0.0});
    }
  }
  return ds;
}

// Closed-form region grid (three items, two presented).
struct RegionConfig {
  double phi_min = 0.1;
  double phi_max = 3.0;
  int resolution = 40;
};

inline FigureDataset run_region_figure(const RegionConfig& config) {
  FigureDataset ds;
  ds.figure_id = "mallows-region";
  ds.seed = 0;  // symbolic, no simulation
  {
    std::ostringstream prov;
    prov << kToolVersion << " mallows-region phi_min="
         << format_double(config.phi_min)
         << " phi_max=" << format_double(config.phi_max)
         << " resolution=" << config.resolution;
    ds.provenance = prov.str();
  }
  ds.columns = {"phi_a",         "phi_h",   "p_joint",
                "p_algo",        "p_human", "complementary",
                "hum_better_region", "alg_better_region"};
  for (const closedform::RegionPoint& point : closedform::complementarity_grid(
           config.phi_min, config.phi_max, config.resolution)) {
    ds.rows.push_back({point.phi_a, point.phi_h, point.p_joint, point.p_algo,
                       point.p_human, point.complementary ? 1.0 : 0.0,
                       point.hum_better_region ? 1.0 : 0.0,
                       point.alg_better_region ? 1.0 : 0.0});
  }
  return ds;
}

// Convenience chart rendering for a dataset; CSV stays the artifact of
// record.
inline std::string figure_svg(const FigureDataset& ds) {
  if (ds.figure_id == "mallows-anchor" || ds.figure_id == "rum-anchor") {
    const bool exact = ds.figure_id == "mallows-anchor";
    const std::size_t kcol = ds.column_index("k");
    const std::size_t wcol = ds.column_index("weight");
    const std::size_t ycol =
        ds.column_index(exact ? "p_joint_exact" : "p_joint_mc");
    std::vector<double> weights;
    for (const auto& row : ds.rows)
      if (weights.empty() || weights.back() != row[wcol])
        weights.push_back(row[wcol]);
    svg::LineChart chart;
    chart.title = ds.figure_id;
    chart.x_label = "items presented (k)";
    chart.y_label = "P(best item chosen)";
    for (double w : weights) {
      svg::Series series;
      std::ostringstream label;
      label << "weight " << w;
      series.label = label.str();
      for (const auto& row : ds.rows) {
        if (row[wcol] != w) continue;
        series.x.push_back(row[kcol]);
        series.y.push_back(row[ycol]);
        if (row[kcol] == 1.0) chart.baseline = row[ycol];
      }
      chart.series.push_back(std::move(series));
    }
    chart.baseline_label = "algorithm alone";
    return svg::render_line_chart(chart);
  }
  if (ds.figure_id == "rum-contour") {
    const std::size_t acol = ds.column_index("sigma_a");
    const std::size_t hcol = ds.column_index("sigma_h");
    const std::size_t mcol = ds.column_index("margin");
    std::vector<double> xs, ys;
    for (const auto& row : ds.rows) {
      if (xs.empty() || std::find(xs.begin(), xs.end(), row[acol]) == xs.end())
        xs.push_back(row[acol]);
      if (ys.empty() || std::find(ys.begin(), ys.end(), row[hcol]) == ys.end())
        ys.push_back(row[hcol]);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    svg::Heatmap map;
    map.title = "complementarity margin";
    map.x_label = "algorithm noise (sigma_a)";
    map.y_label = "human noise (sigma_h)";
    map.x_ticks = xs;
    map.y_ticks = ys;
    map.draw_diagonal = true;
    map.cells.assign(ys.size(), std::vector<double>(xs.size(), 0.0));
    for (const auto& row : ds.rows) {
      const auto xi = std::find(xs.begin(), xs.end(), row[acol]) - xs.begin();
      const auto yi = std::find(ys.begin(), ys.end(), row[hcol]) - ys.begin();
      map.cells[static_cast<std::size_t>(yi)][static_cast<std::size_t>(xi)] =
          row[mcol];
    }
    return svg::render_heatmap(map);
  }
  if (ds.figure_id == "mallows-region") {
    const std::size_t acol = ds.column_index("phi_a");
    const std::size_t hcol = ds.column_index("phi_h");
    const std::size_t jcol = ds.column_index("p_joint");
    const std::size_t ccol = ds.column_index("complementary");
    const std::size_t rcol = ds.column_index("hum_better_region");
    const std::size_t qcol = ds.column_index("alg_better_region");
    std::vector<double> xs, ys;
    for (const auto& row : ds.rows) {
      if (xs.empty() || std::find(xs.begin(), xs.end(), row[acol]) == xs.end())
        xs.push_back(row[acol]);
      if (ys.empty() || std::find(ys.begin(), ys.end(), row[hcol]) == ys.end())
        ys.push_back(row[hcol]);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    svg::Heatmap map;
    map.title = "joint success probability";
    map.x_label = "algorithm accuracy (phi_a)";
    map.y_label = "human accuracy (phi_h)";
    map.x_ticks = xs;
    map.y_ticks = ys;
    map.cells.assign(ys.size(), std::vector<double>(xs.size(), 0.0));
    map.marks.assign(ys.size(), std::vector<int>(xs.size(), 0));
    for (const auto& row : ds.rows) {
      const auto xi = std::find(xs.begin(), xs.end(), row[acol]) - xs.begin();
      const auto yi = std::find(ys.begin(), ys.end(), row[hcol]) - ys.begin();
      map.cells[static_cast<std::size_t>(yi)][static_cast<std::size_t>(xi)] =
          row[jcol];
      int mark = 0;
      if (row[ccol] != 0.0) mark |= svg::Heatmap::kMarkPrimary;
      if (row[rcol] != 0.0) mark |= svg::Heatmap::kMarkSecondary;
      if (row[qcol] != 0.0) mark |= svg::Heatmap::kMarkTertiary;
      map.marks[static_cast<std::size_t>(yi)][static_cast<std::size_t>(xi)] =
          mark;
    }
    return svg::render_heatmap(map);
  }
  throw std::invalid_argument("figure_svg: unknown figure id '" +
                              ds.figure_id + "'");
}

}  // namespace jointsel
