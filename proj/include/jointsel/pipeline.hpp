#pragma once

// The two-stage selection pipeline: the first agent ranks all n items and
// presents its top k, the second agent picks the presented item it ranks
// highest. Exact success probabilities by full enumeration (Mallows) and
// Monte Carlo estimates with binomial standard errors (both models).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "jointsel/mallows.hpp"
#include "jointsel/permutation.hpp"
#include "jointsel/random.hpp"
#include "jointsel/rum.hpp"

namespace jointsel {

enum class NoiseModel { mallows, rum };

struct PipelineConfig {
  NoiseModel model = NoiseModel::mallows;
  int n = 0;
  int k = 0;
  double phi_algo = 1.0;
  double phi_human = 1.0;
  double sigma_algo = 0.5;
  double sigma_human = 0.5;
  double anchor_weight = 0.0;
  // Optional overrides; identity center / linear utilities otherwise.
  std::optional<Permutation> center;
  std::vector<double> utilities;

  static PipelineConfig mallows(int n, int k, double phi_a, double phi_h,
                                double w) {
    PipelineConfig c;
    c.model = NoiseModel::mallows;
    c.n = n;
    c.k = k;
    c.phi_algo = phi_a;
    c.phi_human = phi_h;
    c.anchor_weight = w;
    c.validate();
    return c;
  }

  static PipelineConfig rum(int n, int k, double sigma_a, double sigma_h,
                            double w) {
    PipelineConfig c;
    c.model = NoiseModel::rum;
    c.n = n;
    c.k = k;
    c.sigma_algo = sigma_a;
    c.sigma_human = sigma_h;
    c.anchor_weight = w;
    c.validate();
    return c;
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("PipelineConfig: n must be >= 1");
    if (k < 1 || k > n)
      throw std::invalid_argument("PipelineConfig: k must be in 1..n");
    if (!(anchor_weight >= 0.0 && anchor_weight <= 1.0))
      throw std::invalid_argument(
          "PipelineConfig: anchor weight must be in [0,1]");
    if (model == NoiseModel::mallows) {
      if (!(phi_algo > 0.0) || !(phi_human > 0.0))
        throw std::invalid_argument("PipelineConfig: phi must be > 0");
      if (center && center->size() != n)
        throw std::invalid_argument("PipelineConfig: center size != n");
    } else {
      if (!(sigma_algo >= 0.0) || !(sigma_human >= 0.0))
        throw std::invalid_argument("PipelineConfig: sigma must be >= 0");
      if (!utilities.empty() && static_cast<int>(utilities.size()) != n)
        throw std::invalid_argument("PipelineConfig: utilities size != n");
    }
  }

  Permutation effective_center() const {
    return center ? *center : Permutation::identity(n);
  }

  std::vector<double> effective_utilities() const {
    return utilities.empty() ? default_utilities(n) : utilities;
  }
};

struct TrialOutcome {
  ItemId joint_pick;
  ItemId algo_pick;
  ItemId human_pick;
  Permutation algo_perm;
  Permutation human_perm;
};

// Probabilities that the joint pipeline, the algorithm ranking alone, and
// the human ranking alone each pick the best item. std errors are zero when
// produced by the exact oracle (trials == 0).
struct SuccessEstimate {
  double p_joint = 0.0;
  double p_algo = 0.0;
  double p_human = 0.0;
  double se_joint = 0.0;
  double se_algo = 0.0;
  double se_human = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// The presented item the human ranks highest.
inline ItemId joint_pick(const Permutation& algo_perm,
                         const Permutation& human_perm, int k) {
  require_same_universe(algo_perm, human_perm);
  if (k < 1 || k > algo_perm.size())
    throw std::invalid_argument("joint_pick: k outside 1..n");
  ItemId best = algo_perm.at_rank(1);
  int best_rank = human_perm.rank_of(best);
  for (int r = 2; r <= k; ++r) {
    const ItemId item = algo_perm.at_rank(r);
    const int rank = human_perm.rank_of(item);
    if (rank < best_rank) {
      best = item;
      best_rank = rank;
    }
  }
  return best;
}

// Draws pipeline rounds. Construct once and reuse across batches: the
// constructor builds the pmf tables anchored Mallows sampling needs, and
// accumulate() runs a trial without allocating.
class TrialRunner {
 public:
  struct Counts {
    std::uint64_t joint = 0;
    std::uint64_t algo = 0;
    std::uint64_t human = 0;
  };

  explicit TrialRunner(PipelineConfig config) : config_(std::move(config)) {
    config_.validate();
    if (config_.model == NoiseModel::mallows) {
      MallowsSpec algo_spec(config_.effective_center(), config_.phi_algo);
      MallowsSpec human_spec(config_.effective_center(), config_.phi_human);
      if (config_.n <= kMaxEnumerationN) {
        algo_table_.emplace(PmfTable::mallows(algo_spec));
        human_sampler_.emplace(human_spec,
                               AnchorWeight(config_.anchor_weight));
      } else if (config_.anchor_weight > 0.0) {
        throw std::invalid_argument(
            "TrialRunner: anchored Mallows sampling requires n <= " +
            std::to_string(kMaxEnumerationN));
      } else {
        algo_spec_.emplace(std::move(algo_spec));
        human_spec_.emplace(std::move(human_spec));
      }
    } else {
      utilities_ = config_.effective_utilities();
      const std::size_t size = utilities_.size();
      scores_a_.resize(size);
      scores_h_.resize(size);
      means_h_.resize(size);
      order_a_.resize(size);
      order_h_.resize(size);
      pos_a_.resize(size + 1);
      pos_h_.resize(size + 1);
    }
  }

  const PipelineConfig& config() const { return config_; }

  // One trial, counting successes only.
  void accumulate(Rng& rng, Counts& counts) {
    if (config_.model == NoiseModel::rum) {
      run_rum_trial(rng);
      counts.algo += order_a_[0] == 1;
      counts.human += order_h_[0] == 1;
      counts.joint += rum_joint_pick() == 1;
      return;
    }
    const Permutation& algo_perm = draw_mallows_algo(rng);
    const Permutation& human_perm = draw_mallows_human(algo_perm, rng);
    counts.algo += algo_perm.at_rank(1) == 1;
    counts.human += human_perm.at_rank(1) == 1;
    counts.joint += joint_pick(algo_perm, human_perm, config_.k) == 1;
  }

  TrialOutcome run(Rng& rng) {
    if (config_.model == NoiseModel::rum) {
      run_rum_trial(rng);
      Permutation algo_perm{order_a_};
      Permutation human_perm{order_h_};
      return TrialOutcome{rum_joint_pick(), order_a_[0], order_h_[0],
                          std::move(algo_perm), std::move(human_perm)};
    }
    Permutation algo_perm = draw_mallows_algo(rng);
    Permutation human_perm = draw_mallows_human(algo_perm, rng);
    const ItemId pick = joint_pick(algo_perm, human_perm, config_.k);
    return TrialOutcome{pick, algo_perm.at_rank(1), human_perm.at_rank(1),
                        std::move(algo_perm), std::move(human_perm)};
  }

 private:
  const Permutation& draw_mallows_algo(Rng& rng) {
    if (algo_table_) return algo_table_->sample(rng);
    scratch_a_ = sample_mallows(*algo_spec_, rng);
    return *scratch_a_;
  }

  const Permutation& draw_mallows_human(const Permutation& algo_perm,
                                        Rng& rng) {
    if (human_sampler_) return human_sampler_->sample(algo_perm, rng);
    scratch_h_ = sample_mallows(*human_spec_, rng);
    return *scratch_h_;
  }

  // Fills order_a_/order_h_ and the position lookups.
  void run_rum_trial(Rng& rng) {
    const std::size_t size = utilities_.size();
    draw_scores(utilities_, config_.sigma_algo, scores_a_, rng);
    argsort(scores_a_, order_a_);
    for (std::size_t r = 0; r < size; ++r)
      pos_a_[static_cast<std::size_t>(order_a_[r])] = static_cast<int>(r);
    const double w = config_.anchor_weight;
    if (w > 0.0) {
      for (std::size_t i = 0; i < size; ++i)
        means_h_[i] =
            (1.0 - w) * utilities_[i] +
            w * utilities_[static_cast<std::size_t>(
                    pos_a_[static_cast<std::size_t>(i + 1)])];
      draw_scores(means_h_, config_.sigma_human, scores_h_, rng);
    } else {
      draw_scores(utilities_, config_.sigma_human, scores_h_, rng);
    }
    argsort(scores_h_, order_h_);
    for (std::size_t r = 0; r < size; ++r)
      pos_h_[static_cast<std::size_t>(order_h_[r])] = static_cast<int>(r);
  }

  ItemId rum_joint_pick() const {
    ItemId best = order_a_[0];
    int best_rank = pos_h_[static_cast<std::size_t>(best)];
    for (int r = 1; r < config_.k; ++r) {
      const ItemId item = order_a_[static_cast<std::size_t>(r)];
      const int rank = pos_h_[static_cast<std::size_t>(item)];
      if (rank < best_rank) {
        best = item;
        best_rank = rank;
      }
    }
    return best;
  }

  static void draw_scores(const std::vector<double>& means, double sigma,
                          std::vector<double>& out, Rng& rng) {
    if (sigma == 0.0) {
      out = means;
      return;
    }
    std::normal_distribution<double> noise(0.0, sigma);
    for (std::size_t i = 0; i < means.size(); ++i)
      out[i] = means[i] + noise(rng);
  }

  // Descending score, ties by ascending item id.
  static void argsort(const std::vector<double>& scores,
                      std::vector<ItemId>& order) {
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&scores](ItemId a, ItemId b) {
      const double sa = scores[static_cast<std::size_t>(a - 1)];
      const double sb = scores[static_cast<std::size_t>(b - 1)];
      if (sa != sb) return sa > sb;
      return a < b;
    });
  }

  PipelineConfig config_;
  std::optional<PmfTable> algo_table_;
  std::optional<AnchoredSampler> human_sampler_;
  std::optional<MallowsSpec> algo_spec_;
  std::optional<MallowsSpec> human_spec_;
  std::optional<Permutation> scratch_a_;
  std::optional<Permutation> scratch_h_;
  std::vector<double> utilities_;
  std::vector<double> scores_a_, scores_h_, means_h_;
  std::vector<ItemId> order_a_, order_h_;
  std::vector<int> pos_a_, pos_h_;
};

inline TrialOutcome run_trial(const PipelineConfig& config, Rng& rng) {
  TrialRunner runner(config);
  return runner.run(rng);
}

namespace detail {

// Trials are consumed in fixed-size blocks, one derived rng stream per block,
// so the estimate does not depend on how blocks are scheduled across workers.
inline constexpr std::uint64_t kTrialBlock = 1 << 16;

inline double binomial_se(double p, std::uint64_t trials) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

}  // namespace detail

inline SuccessEstimate estimate_success(const PipelineConfig& config,
                                        std::uint64_t trials,
                                        std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("estimate_success: trials must be >= 1");
  TrialRunner runner(config);
  TrialRunner::Counts counts;
  const std::uint64_t blocks =
      (trials + detail::kTrialBlock - 1) / detail::kTrialBlock;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Rng rng = make_stream(seed, b);
    const std::uint64_t begin = b * detail::kTrialBlock;
    const std::uint64_t end = std::min(trials, begin + detail::kTrialBlock);
    for (std::uint64_t t = begin; t < end; ++t) runner.accumulate(rng, counts);
  }
  SuccessEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.p_joint =
      static_cast<double>(counts.joint) / static_cast<double>(trials);
  est.p_algo = static_cast<double>(counts.algo) / static_cast<double>(trials);
  est.p_human =
      static_cast<double>(counts.human) / static_cast<double>(trials);
  est.se_joint = detail::binomial_se(est.p_joint, trials);
  est.se_algo = detail::binomial_se(est.p_algo, trials);
  est.se_human = detail::binomial_se(est.p_human, trials);
  return est;
}

// Exact success probabilities by summing the model over all permutation
// pairs. Mallows only; n within the enumeration cap.
inline SuccessEstimate exact_success(const PipelineConfig& config) {
  config.validate();
  if (config.model != NoiseModel::mallows)
    throw std::invalid_argument(
        "exact_success: only the Mallows model has an exact oracle");
  require_enumerable(config.n);
  const int n = config.n;
  const int k = config.k;
  const double w = config.anchor_weight;
  const Permutation center = config.effective_center();
  const std::vector<Permutation> perms = enumerate_permutations(n);
  const std::size_t count = perms.size();

  std::vector<int> d_center(count);
  for (std::size_t i = 0; i < count; ++i)
    d_center[i] = kendall_tau(center, perms[i]);

  const auto normalized_weights = [](const std::vector<double>& exponents) {
    const double shift =
        *std::max_element(exponents.begin(), exponents.end());
    std::vector<double> weights(exponents.size());
    double total = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      weights[i] = std::exp(exponents[i] - shift);
      total += weights[i];
    }
    for (double& weight : weights) weight /= total;
    return weights;
  };

  std::vector<double> exponents(count);
  for (std::size_t i = 0; i < count; ++i)
    exponents[i] = -config.phi_algo * d_center[i];
  const std::vector<double> algo_weights = normalized_weights(exponents);

  std::vector<double> human_weights;
  if (w == 0.0) {
    for (std::size_t i = 0; i < count; ++i)
      exponents[i] = -config.phi_human * d_center[i];
    human_weights = normalized_weights(exponents);
  }

  double p_joint = 0.0, p_algo = 0.0, p_human = 0.0;
  std::vector<double> anchored_exponents(count);
  for (std::size_t ia = 0; ia < count; ++ia) {
    const Permutation& algo_perm = perms[ia];
    if (algo_perm.at_rank(1) == 1) p_algo += algo_weights[ia];
    const std::vector<double>* wh = &human_weights;
    std::vector<double> anchored;
    if (w > 0.0) {
      for (std::size_t j = 0; j < count; ++j)
        anchored_exponents[j] =
            -config.phi_human * ((1.0 - w) * d_center[j] +
                                 w * kendall_tau(algo_perm, perms[j]));
      anchored = normalized_weights(anchored_exponents);
      wh = &anchored;
    }
    double joint_mass = 0.0, human_mass = 0.0;
    for (std::size_t ih = 0; ih < count; ++ih) {
      const double weight = (*wh)[ih];
      if (joint_pick(algo_perm, perms[ih], k) == 1) joint_mass += weight;
      if (perms[ih].at_rank(1) == 1) human_mass += weight;
    }
    p_joint += algo_weights[ia] * joint_mass;
    p_human += algo_weights[ia] * human_mass;
  }

  SuccessEstimate est;
  est.p_joint = p_joint;
  est.p_algo = p_algo;
  est.p_human = p_human;
  return est;
}

}  // namespace jointsel
