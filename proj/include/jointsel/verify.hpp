#pragma once

// The verification battery: every calibration, identity, region, and
// statistical claim the project commits to, run end to end with pinned
// tolerances. Each check writes a CSV of its per-case numbers into the
// output directory plus one entry in the JSON report; outputs are
// byte-identical across runs with the same seed.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jointsel/closed_form.hpp"
#include "jointsel/events.hpp"
#include "jointsel/experiments.hpp"
#include "jointsel/io.hpp"
#include "jointsel/mallows.hpp"
#include "jointsel/pipeline.hpp"

namespace jointsel {

struct CheckResult {
  std::string id;
  bool passed = false;
  std::string details;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const CheckResult& check : checks)
      if (!check.passed) return false;
    return !checks.empty();
  }
};

inline nlohmann::json to_json(const BijectionReport& report) {
  return nlohmann::json{{"n", report.n},
                        {"k", report.k},
                        {"good_count", report.good_count},
                        {"bad_count", report.bad_count},
                        {"map_is_injective", report.map_is_injective},
                        {"inverse_recovers", report.inverse_recovers},
                        {"counterexamples", report.counterexamples},
                        {"success", report.success()}};
}

inline nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& check : report.checks)
    checks.push_back({{"id", check.id},
                      {"passed", check.passed},
                      {"details", check.details}});
  return nlohmann::json{{"seed", report.seed},
                        {"checks", checks},
                        {"all_passed", report.all_passed()}};
}

inline nlohmann::json to_json(const SuccessEstimate& est) {
  return nlohmann::json{{"p_joint", est.p_joint},
                        {"p_algo", est.p_algo},
                        {"p_human", est.p_human},
                        {"se_joint", est.se_joint},
                        {"se_algo", est.se_algo},
                        {"se_human", est.se_human},
                        {"trials", est.trials},
                        {"seed", est.seed}};
}

inline nlohmann::json to_json(const FigureDataset& ds) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : ds.rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < ds.columns.size(); ++i)
      obj[ds.columns[i]] = row[i];
    rows.push_back(obj);
  }
  return nlohmann::json{{"figure", ds.figure_id},
                        {"provenance", ds.provenance},
                        {"seed", ds.seed},
                        {"rows", rows}};
}

namespace verify_detail {

namespace fs = std::filesystem;

inline std::ofstream open_csv(const fs::path& dir, const std::string& name) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out)
    throw std::runtime_error("verify: cannot write " + (dir / name).string());
  return out;
}

inline std::string fmt(double v) { return format_double(v); }

// Identity-permutation mass at n=3 against the two quoted calibration
// points, within two percentage points.
inline CheckResult check_mallows_calibration(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "mallows_calibration.csv");
  out << "phi,pmf_identity,target,tolerance,pass\n";
  const Permutation identity = Permutation::identity(3);
  bool all = true;
  const double targets[2][2] = {{1.0, 0.48}, {1.3, 0.57}};
  std::ostringstream details;
  for (const auto& [phi, target] : targets) {
    const double value =
        mallows_pmf(MallowsSpec::identity_center(3, phi), identity);
    const bool ok = std::fabs(value - target) <= 0.02;
    all = all && ok;
    out << fmt(phi) << ',' << fmt(value) << ',' << fmt(target) << ",0.02,"
        << (ok ? 1 : 0) << '\n';
    details << "phi=" << phi << ": " << value << " vs " << target << "; ";
  }
  return {"mallows_calibration", all, details.str()};
}

// Product-formula normalizer against full enumeration, relative error.
inline CheckResult check_normalizer_identity(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "normalizer_identity.csv");
  out << "n,phi,z_product,z_enumeration,rel_error,pass\n";
  bool all = true;
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (double phi : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double zp = mallows_normalizer(n, phi);
      const double ze = mallows_normalizer_by_enumeration(n, phi);
      const double rel = std::fabs(zp - ze) / ze;
      worst = std::max(worst, rel);
      const bool ok = rel <= 1e-12;
      all = all && ok;
      out << n << ',' << fmt(phi) << ',' << fmt(zp) << ',' << fmt(ze) << ','
          << fmt(rel) << ',' << (ok ? 1 : 0) << '\n';
    }
  }
  return {"normalizer_identity", all,
          "max relative error " + fmt(worst) + " over n=2..6 x 5 phi values"};
}

// Exhaustive good/bad bijection for n=3..5, every k < n.
inline CheckResult check_good_bad_bijection(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "good_bad_bijection.csv");
  out << "n,k,good_count,bad_count,map_is_injective,inverse_recovers,pass\n";
  bool all = true;
  std::int64_t cases = 0;
  for (int n = 3; n <= 5; ++n) {
    for (int k = 1; k < n; ++k) {
      const BijectionReport report = verify_bijection(n, k);
      const bool ok = report.success();
      all = all && ok;
      ++cases;
      out << n << ',' << k << ',' << report.good_count << ','
          << report.bad_count << ',' << (report.map_is_injective ? 1 : 0)
          << ',' << (report.inverse_recovers ? 1 : 0) << ',' << (ok ? 1 : 0)
          << '\n';
    }
  }
  return {"good_bad_bijection", all,
          std::to_string(cases) + " (n,k) cases, all pair spaces exhausted"};
}

// Equal accuracy, two items presented, no anchoring: the joint system
// strictly beats the (equal) solo actors; at n=3 the gap matches the closed
// form to 1e-12.
inline CheckResult check_equal_accuracy_complementarity(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "equal_accuracy_complementarity.csv");
  out << "n,phi,p_joint,p_algo,p_human,gap,closed_form_gap_error,pass\n";
  bool all = true;
  for (int n = 3; n <= 6; ++n) {
    for (double phi : {0.25, 0.5, 1.0, 2.0, 3.0}) {
      const SuccessEstimate est =
          exact_success(PipelineConfig::mallows(n, 2, phi, phi, 0.0));
      const double gap = est.p_joint - est.p_algo;
      double closed_error = 0.0;
      bool ok = gap > 0.0 && std::fabs(est.p_algo - est.p_human) <= 1e-12;
      if (n == 3) {
        const double closed_gap =
            closedform::p_joint(phi, phi) - closedform::p_human(phi);
        closed_error = std::fabs(gap - closed_gap);
        ok = ok && closed_error <= 1e-12;
      }
      all = all && ok;
      out << n << ',' << fmt(phi) << ',' << fmt(est.p_joint) << ','
          << fmt(est.p_algo) << ',' << fmt(est.p_human) << ',' << fmt(gap)
          << ',' << fmt(closed_error) << ',' << (ok ? 1 : 0) << '\n';
    }
  }
  return {"equal_accuracy_complementarity", all,
          "exact oracle, n=3..6, k=2, 5 phi values"};
}

// Closed forms against the enumeration oracle on a 10x10 grid.
inline CheckResult check_closed_form_oracle(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "closed_form_oracle.csv");
  out << "phi_a,phi_h,p_joint_closed,p_algo_closed,p_human_closed,"
         "p_joint_oracle,p_algo_oracle,p_human_oracle,max_abs_error,pass\n";
  bool all = true;
  double worst = 0.0;
  for (int ia = 0; ia < 10; ++ia) {
    for (int ih = 0; ih < 10; ++ih) {
      const double phi_a = 0.1 + ia * (2.9 / 9.0);
      const double phi_h = 0.1 + ih * (2.9 / 9.0);
      const SuccessEstimate oracle =
          exact_success(PipelineConfig::mallows(3, 2, phi_a, phi_h, 0.0));
      const double pc = closedform::p_joint(phi_a, phi_h);
      const double pa = closedform::p_algo(phi_a);
      const double ph = closedform::p_human(phi_h);
      const double err = std::max({std::fabs(pc - oracle.p_joint),
                                   std::fabs(pa - oracle.p_algo),
                                   std::fabs(ph - oracle.p_human)});
      worst = std::max(worst, err);
      const bool ok = err <= 1e-12;
      all = all && ok;
      out << fmt(phi_a) << ',' << fmt(phi_h) << ',' << fmt(pc) << ','
          << fmt(pa) << ',' << fmt(ph) << ',' << fmt(oracle.p_joint) << ','
          << fmt(oracle.p_algo) << ',' << fmt(oracle.p_human) << ','
          << fmt(err) << ',' << (ok ? 1 : 0) << '\n';
    }
  }
  return {"closed_form_oracle", all, "max abs error " + fmt(worst)};
}

// The accurate-human band phi_h > phi_a >= max(phi_h/1.3, phi_h - 0.3) is
// complementary by both inequalities and by the oracle.
inline CheckResult check_accurate_human_region(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "accurate_human_region.csv");
  out << "phi_h,phi_a,joint_beats_human,joint_beats_algo,oracle_margin,"
         "pass\n";
  bool all = true;
  int points = 0;
  for (int i = 1; i <= 20; ++i) {
    const double phi_h = 0.15 * i;
    const double lower = std::max(phi_h / 1.3, phi_h - 0.3);
    for (double t : {0.0, 0.25, 0.5, 0.75}) {
      const double phi_a = lower + t * (phi_h - lower);
      const bool eq1 = closedform::joint_beats_human(phi_a, phi_h);
      const bool eq2 = closedform::joint_beats_algo(phi_a, phi_h);
      const SuccessEstimate oracle =
          exact_success(PipelineConfig::mallows(3, 2, phi_a, phi_h, 0.0));
      const double margin =
          oracle.p_joint - std::max(oracle.p_algo, oracle.p_human);
      const bool ok = eq1 && eq2 && margin > 0.0;
      all = all && ok;
      ++points;
      out << fmt(phi_h) << ',' << fmt(phi_a) << ',' << (eq1 ? 1 : 0) << ','
          << (eq2 ? 1 : 0) << ',' << fmt(margin) << ',' << (ok ? 1 : 0)
          << '\n';
    }
  }
  return {"accurate_human_region", all,
          std::to_string(points) + " in-region points, all complementary"};
}

// The accurate-algorithm side: complementary on the 1.1*phi_h boundary for
// phi_h <= 1 (the 1.01 boundary is recorded alongside), never complementary
// at phi_a = phi_h + 0.15 once phi_h >= 1.
inline CheckResult check_accurate_algo_region(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "accurate_algo_region.csv");
  out << "case_code,phi_h,phi_a,complementary_closed,oracle_margin,gated,"
         "pass\n";
  bool all = true;
  const auto emit = [&](int code, double phi_h, double phi_a,
                        bool expect_complementary, bool gated) {
    const bool closed = closedform::complementary(phi_a, phi_h);
    const SuccessEstimate oracle =
        exact_success(PipelineConfig::mallows(3, 2, phi_a, phi_h, 0.0));
    const double margin =
        oracle.p_joint - std::max(oracle.p_algo, oracle.p_human);
    const bool agrees = closed == (margin > 0.0);
    const bool ok = agrees && (closed == expect_complementary);
    if (gated) all = all && ok;
    out << code << ',' << fmt(phi_h) << ',' << fmt(phi_a) << ','
        << (closed ? 1 : 0) << ',' << fmt(margin) << ',' << (gated ? 1 : 0)
        << ',' << (ok ? 1 : 0) << '\n';
  };
  for (int i = 1; i <= 10; ++i) {
    const double phi_h = 0.1 * i;
    emit(0, phi_h, 1.1 * phi_h, true, true);    // proof boundary
    emit(1, phi_h, 1.01 * phi_h, true, false);  // statement boundary
  }
  for (int i = 0; i <= 8; ++i) {
    const double phi_h = 1.0 + 0.25 * i;
    emit(2, phi_h, phi_h + 0.15, false, true);  // non-complementarity line
  }
  return {"accurate_algo_region", all,
          "1.1 boundary complementary for phi_h <= 1; phi_a = phi_h + 0.15 "
          "not complementary for phi_h in [1,3]"};
}

// Swapping the accurate actor into the human seat always helps.
inline CheckResult check_role_asymmetry(const fs::path& dir,
                                        std::uint64_t seed) {
  std::ofstream out = open_csv(dir, "role_asymmetry.csv");
  out << "phi_1,phi_2,p_joint_accurate_human,p_joint_accurate_algo,pass\n";
  bool all = true;
  Rng rng = make_stream(seed, 9001);
  int emitted = 0;
  while (emitted < 20) {
    double a = uniform01(rng) * 3.0;
    double b = uniform01(rng) * 3.0;
    if (a <= 0.0 || b <= 0.0 || a == b) continue;
    const double phi_1 = std::max(a, b);
    const double phi_2 = std::min(a, b);
    const double acc_human = closedform::p_joint(phi_2, phi_1);
    const double acc_algo = closedform::p_joint(phi_1, phi_2);
    const bool ok = closedform::asymmetry_check(phi_1, phi_2) &&
                    acc_human > acc_algo;
    all = all && ok;
    ++emitted;
    out << fmt(phi_1) << ',' << fmt(phi_2) << ',' << fmt(acc_human) << ','
        << fmt(acc_algo) << ',' << (ok ? 1 : 0) << '\n';
  }
  return {"role_asymmetry", all, "20 random accuracy pairs in (0,3]"};
}

// Full anchoring: the joint system is strictly worse than the algorithm
// alone for every k in 2..n-1, and identical at k=1.
inline CheckResult check_full_anchoring_penalty(const fs::path& dir) {
  std::ofstream out = open_csv(dir, "full_anchoring_penalty.csv");
  out << "n,phi_a,phi_h,k,p_joint,p_algo,pass\n";
  bool all = true;
  for (int n = 3; n <= 5; ++n) {
    for (double phi_a : {0.5, 1.0, 2.0}) {
      for (double phi_h : {0.5, 1.0, 2.0}) {
        for (int k = 1; k < n; ++k) {
          const SuccessEstimate est =
              exact_success(PipelineConfig::mallows(n, k, phi_a, phi_h, 1.0));
          const bool ok =
              k == 1 ? std::fabs(est.p_joint - est.p_algo) <= 1e-12
                     : est.p_joint < est.p_algo;
          all = all && ok;
          out << n << ',' << fmt(phi_a) << ',' << fmt(phi_h) << ',' << k
              << ',' << fmt(est.p_joint) << ',' << fmt(est.p_algo) << ','
              << (ok ? 1 : 0) << '\n';
        }
      }
    }
  }
  return {"full_anchoring_penalty", all,
          "exact oracle, w=1, n=3..5, 3x3 accuracy grid, all k < n"};
}

// The anchoring sweep at n=5: exact curves satisfy the qualitative claims
// and the batched Monte Carlo replication agrees with the oracle.
inline CheckResult check_mallows_anchor_figure(const fs::path& dir,
                                               std::uint64_t seed) {
  AnchorSweepConfig config;
  config.seed = seed;
  const FigureDataset ds = run_figure_mallows_anchoring(config);
  {
    std::ofstream out = open_csv(dir, "figure_mallows_anchor.csv");
    ds.write_csv(out);
  }
  const std::size_t kcol = ds.column_index("k");
  const std::size_t wcol = ds.column_index("weight");
  const std::size_t jcol = ds.column_index("p_joint_exact");
  const std::size_t mcol = ds.column_index("p_joint_mc");
  const std::size_t scol = ds.column_index("p_joint_mc_batch_std");

  double baseline = 0.0;
  for (const auto& row : ds.rows)
    if (row[kcol] == 1.0 && row[wcol] == 0.0) baseline = row[jcol];

  bool unanchored_gain = false;
  bool anchored_all_below = true;
  bool mc_matches = true;
  bool spread_small = true;
  double max_spread = 0.0;
  for (const auto& row : ds.rows) {
    if (row[wcol] == 0.0 && row[kcol] == 2.0)
      unanchored_gain = row[jcol] > baseline;
    if (row[wcol] == 1.0 && row[kcol] >= 2.0)
      anchored_all_below = anchored_all_below && row[jcol] < baseline;
    mc_matches =
        mc_matches && std::fabs(row[mcol] - row[jcol]) <= 3.0 * row[scol];
    max_spread = std::max(max_spread, row[scol]);
    spread_small = spread_small && row[scol] <= 0.02;
  }
  const bool all =
      unanchored_gain && anchored_all_below && mc_matches && spread_small;
  std::ostringstream details;
  details << "baseline " << fmt(baseline) << ", max batch std "
          << fmt(max_spread);
  return {"mallows_anchor_figure", all, details.str()};
}

// RUM statistical checks: equal-noise complementarity at n=10, k=2; the
// full-anchoring penalty at n=5; and the region asymmetry at matched
// low-noise offsets (noise small against the utility gap), where a more
// accurate human extends the region further than a more accurate algorithm.
inline CheckResult check_rum_complementarity(const fs::path& dir,
                                             std::uint64_t seed) {
  std::ofstream out = open_csv(dir, "rum_complementarity.csv");
  out << "case_code,n,k,sigma_a,sigma_h,weight,p_joint,p_algo,p_human,"
         "statistic,threshold,pass\n";
  constexpr std::uint64_t kTrials = 1000000;
  bool all = true;

  const auto emit = [&](int code, const PipelineConfig& cfg, double statistic,
                        double threshold, bool ok,
                        const SuccessEstimate& est) {
    all = all && ok;
    out << code << ',' << cfg.n << ',' << cfg.k << ','
        << fmt(cfg.sigma_algo) << ',' << fmt(cfg.sigma_human) << ','
        << fmt(cfg.anchor_weight) << ',' << fmt(est.p_joint) << ','
        << fmt(est.p_algo) << ',' << fmt(est.p_human) << ','
        << fmt(statistic) << ',' << fmt(threshold) << ',' << (ok ? 1 : 0)
        << '\n';
  };

  int stream = 0;
  for (double sigma : {0.3, 0.5, 0.8}) {
    const PipelineConfig cfg = PipelineConfig::rum(10, 2, sigma, sigma, 0.0);
    const SuccessEstimate est =
        estimate_success(cfg, kTrials, seed + 100 + stream++);
    const double rival = std::max(est.p_algo, est.p_human);
    const double se_rival =
        est.p_algo >= est.p_human ? est.se_algo : est.se_human;
    const double margin = est.p_joint - rival;
    const double se =
        std::sqrt(est.se_joint * est.se_joint + se_rival * se_rival);
    emit(0, cfg, margin, 3.0 * se, margin > 3.0 * se, est);
  }

  for (int k : {2, 3, 4}) {
    const PipelineConfig cfg = PipelineConfig::rum(5, k, 0.5, 0.5, 1.0);
    const SuccessEstimate est =
        estimate_success(cfg, kTrials, seed + 200 + stream++);
    const double diff = est.p_joint - est.p_algo;
    const double se =
        std::sqrt(est.se_joint * est.se_joint + est.se_algo * est.se_algo);
    emit(1, cfg, diff, -3.0 * se, diff < -3.0 * se, est);
  }

  const double offsets[2][2] = {{0.075, 0.05}, {0.15, 0.10}};
  for (const auto& [hi, lo] : offsets) {
    const PipelineConfig acc_human = PipelineConfig::rum(10, 2, hi, lo, 0.0);
    const PipelineConfig acc_algo = PipelineConfig::rum(10, 2, lo, hi, 0.0);
    const SuccessEstimate a =
        estimate_success(acc_human, kTrials, seed + 300 + stream++);
    const SuccessEstimate b =
        estimate_success(acc_algo, kTrials, seed + 300 + stream++);
    const double margin_a = a.p_joint - std::max(a.p_algo, a.p_human);
    const double margin_b = b.p_joint - std::max(b.p_algo, b.p_human);
    const double se = std::sqrt(
        a.se_joint * a.se_joint + std::max(a.se_algo, a.se_human) *
                                      std::max(a.se_algo, a.se_human) +
        b.se_joint * b.se_joint + std::max(b.se_algo, b.se_human) *
                                      std::max(b.se_algo, b.se_human));
    const double diff = margin_a - margin_b;
    emit(2, acc_human, diff, 3.0 * se, diff > 3.0 * se, a);
    emit(2, acc_algo, margin_b, 0.0, true, b);
  }

  return {"rum_complementarity", all,
          "equal-noise gains, anchored penalty, and low-noise asymmetry"};
}

}  // namespace verify_detail

// Runs every check, writing per-check CSVs and a JSON report into out_dir.
inline VerificationReport run_verification_suite(
    std::uint64_t seed, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  VerificationReport report;
  report.seed = seed;
  report.checks.push_back(verify_detail::check_mallows_calibration(out_dir));
  report.checks.push_back(verify_detail::check_normalizer_identity(out_dir));
  report.checks.push_back(verify_detail::check_good_bad_bijection(out_dir));
  report.checks.push_back(
      verify_detail::check_equal_accuracy_complementarity(out_dir));
  report.checks.push_back(verify_detail::check_closed_form_oracle(out_dir));
  report.checks.push_back(verify_detail::check_accurate_human_region(out_dir));
  report.checks.push_back(verify_detail::check_accurate_algo_region(out_dir));
  report.checks.push_back(verify_detail::check_role_asymmetry(out_dir, seed));
  report.checks.push_back(
      verify_detail::check_full_anchoring_penalty(out_dir));
  report.checks.push_back(
      verify_detail::check_mallows_anchor_figure(out_dir, seed));
  report.checks.push_back(
      verify_detail::check_rum_complementarity(out_dir, seed));

  std::ofstream json_out(out_dir / "verification_report.json",
                         std::ios::binary);
  json_out << to_json(report).dump(2) << '\n';
  return report;
}

}  // namespace jointsel
