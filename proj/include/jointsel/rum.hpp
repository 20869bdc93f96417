#pragma once

// Random utility model: each item carries a latent utility, agents observe
// the utilities under independent Gaussian noise and rank by the observed
// scores. Anchoring shifts an item's mean toward the utility of the slot the
// algorithm ranked it in.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "jointsel/mallows.hpp"  // AnchorWeight
#include "jointsel/permutation.hpp"
#include "jointsel/random.hpp"

namespace jointsel {

using ScoreVector = std::vector<double>;

// Linear utilities from 1 down to 0; the default scale for all experiments.
inline std::vector<double> default_utilities(int n) {
  if (n < 1) throw std::invalid_argument("default_utilities: n must be >= 1");
  std::vector<double> mu(static_cast<std::size_t>(n));
  if (n == 1) {
    mu[0] = 1.0;
    return mu;
  }
  for (int i = 1; i <= n; ++i)
    mu[static_cast<std::size_t>(i - 1)] =
        static_cast<double>(n - i) / static_cast<double>(n - 1);
  return mu;
}

struct RumSpec {
  std::vector<double> utilities;  // strictly descending
  double sigma;                   // observation noise standard deviation
  AnchorWeight anchor_weight;

  RumSpec(std::vector<double> utilities_in, double sigma_in,
          AnchorWeight w = AnchorWeight(0.0))
      : utilities(std::move(utilities_in)), sigma(sigma_in), anchor_weight(w) {
    if (utilities.empty())
      throw std::invalid_argument("RumSpec: utilities must be non-empty");
    for (std::size_t i = 1; i < utilities.size(); ++i)
      if (!(utilities[i] < utilities[i - 1]))
        throw std::invalid_argument(
            "RumSpec: utilities must be strictly descending");
    if (!(sigma >= 0.0))
      throw std::invalid_argument("RumSpec: sigma must be >= 0");
  }

  int size() const { return static_cast<int>(utilities.size()); }
};

// Mean of item i becomes (1-w)*mu_i + w*mu_j, where j is the position the
// algorithm ranked item i in. w=0 leaves the utilities unchanged; w=1
// replaces them with the utilities of the algorithm's slot assignment.
inline std::vector<double> anchored_means(const RumSpec& spec,
                                          const Permutation& algo_perm) {
  if (algo_perm.size() != spec.size())
    throw std::invalid_argument("anchored_means: universe mismatch");
  const double w = spec.anchor_weight.value();
  std::vector<double> means(spec.utilities.size());
  for (int item = 1; item <= spec.size(); ++item) {
    const int pos = algo_perm.rank_of(item);
    means[static_cast<std::size_t>(item - 1)] =
        (1.0 - w) * spec.utilities[static_cast<std::size_t>(item - 1)] +
        w * spec.utilities[static_cast<std::size_t>(pos - 1)];
  }
  return means;
}

// Independent Gaussian draws around the means; sigma=0 returns the means.
inline ScoreVector sample_scores(const std::vector<double>& means,
                                 double sigma, Rng& rng) {
  if (!(sigma >= 0.0))
    throw std::invalid_argument("sample_scores: sigma must be >= 0");
  if (sigma == 0.0) return means;
  ScoreVector scores(means.size());
  std::normal_distribution<double> noise(0.0, sigma);
  for (std::size_t i = 0; i < means.size(); ++i)
    scores[i] = means[i] + noise(rng);
  return scores;
}

// Items by descending score; ties broken by ascending item id so sigma=0
// runs are reproducible.
inline Permutation rank_by_scores(const ScoreVector& scores) {
  const int n = static_cast<int>(scores.size());
  if (n == 0) throw std::invalid_argument("rank_by_scores: empty scores");
  std::vector<ItemId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&scores](ItemId a, ItemId b) {
    const double sa = scores[static_cast<std::size_t>(a - 1)];
    const double sb = scores[static_cast<std::size_t>(b - 1)];
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return Permutation(std::move(order));
}

}  // namespace jointsel
