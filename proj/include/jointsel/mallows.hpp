#pragma once

// Mallows permutation model: mass proportional to exp(-phi * d(center, p))
// with d = Kendall tau, plus the anchored variant whose distance is the
// weighted average of the distance to the center and to a realized anchor
// permutation. Exact pmf tables, normalizers, and samplers.

#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "jointsel/io.hpp"
#include "jointsel/permutation.hpp"
#include "jointsel/random.hpp"

namespace jointsel {

// Anchoring weight w in [0,1]; 0 = independent of the anchor, 1 = the anchor
// replaces the center entirely.
class AnchorWeight {
 public:
  explicit AnchorWeight(double w) : w_(w) {
    if (!(w >= 0.0 && w <= 1.0))
      throw std::invalid_argument("AnchorWeight: w must be in [0,1], got " +
                                  std::to_string(w));
  }
  double value() const { return w_; }

 private:
  double w_;
};

struct MallowsSpec {
  Permutation center;
  double phi;  // accuracy; higher concentrates mass near the center

  MallowsSpec(Permutation center_perm, double phi_value)
      : center(std::move(center_perm)), phi(phi_value) {
    if (!(phi > 0.0))
      throw std::invalid_argument("MallowsSpec: phi must be > 0, got " +
                                  std::to_string(phi));
  }

  static MallowsSpec identity_center(int n, double phi_value) {
    return MallowsSpec(Permutation::identity(n), phi_value);
  }

  int size() const { return center.size(); }
};

// Z(n, phi) = sum over all permutations of exp(-phi * d); computed by the
// product over insertion positions, Z = prod_i sum_{s<i} exp(-phi*s).
// Every factor lies in [1, i], so the product never under- or overflows for
// enumerable n.
inline double mallows_normalizer(int n, double phi) {
  if (n < 1) throw std::invalid_argument("mallows_normalizer: n must be >= 1");
  if (!(phi > 0.0))
    throw std::invalid_argument("mallows_normalizer: phi must be > 0");
  const double q = std::exp(-phi);
  double z = 1.0;
  for (int i = 2; i <= n; ++i) {
    double partial = 1.0;
    double term = 1.0;
    for (int s = 1; s < i; ++s) {
      term *= q;
      partial += term;
    }
    z *= partial;
  }
  return z;
}

// Independent route used to cross-check the product formula.
inline double mallows_normalizer_by_enumeration(int n, double phi) {
  require_enumerable(n);
  const Permutation center = Permutation::identity(n);
  double z = 0.0;
  for (const Permutation& p : enumerate_permutations(n))
    z += std::exp(-phi * kendall_tau(center, p));
  return z;
}

inline double mallows_pmf(const MallowsSpec& spec, const Permutation& p) {
  require_same_universe(spec.center, p);
  const double d = kendall_tau(spec.center, p);
  return std::exp(-spec.phi * d) / mallows_normalizer(spec.size(), spec.phi);
}

// Exact pmf over all n! permutations (lexicographic order), either plain
// Mallows or anchored on a realized permutation. Exponents are shifted by
// their maximum before exponentiating so tables stay normalized even when
// phi * d exceeds the double exp() range.
class PmfTable {
 public:
  static PmfTable mallows(const MallowsSpec& spec) {
    PmfTable table(spec.size());
    std::vector<double> exponents(table.perms_->size());
    for (std::size_t i = 0; i < table.perms_->size(); ++i)
      exponents[i] = -spec.phi * kendall_tau(spec.center, (*table.perms_)[i]);
    table.normalize_from_exponents(exponents);
    return table;
  }

  static PmfTable anchored(const MallowsSpec& spec, const Permutation& anchor,
                           AnchorWeight w) {
    require_same_universe(spec.center, anchor);
    PmfTable table(spec.size());
    const double wa = w.value();
    std::vector<double> exponents(table.perms_->size());
    for (std::size_t i = 0; i < table.perms_->size(); ++i) {
      const Permutation& p = (*table.perms_)[i];
      const double d = (1.0 - wa) * kendall_tau(spec.center, p) +
                       wa * kendall_tau(anchor, p);
      exponents[i] = -spec.phi * d;
    }
    table.normalize_from_exponents(exponents);
    return table;
  }

  int size() const { return n_; }
  std::size_t entry_count() const { return probs_.size(); }
  const std::vector<Permutation>& permutations() const { return *perms_; }
  const std::vector<double>& probabilities() const { return probs_; }

  double probability(std::size_t index) const { return probs_[index]; }

  double probability_of(const Permutation& p) const {
    if (p.size() != n_)
      throw std::invalid_argument("PmfTable: universe mismatch");
    return probs_[lexicographic_index(p)];
  }

  // Inverse-CDF draw; returns the lexicographic index.
  std::size_t sample_index(Rng& rng) const {
    const double u = uniform01(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return it == cdf_.end() ? cdf_.size() - 1
                            : static_cast<std::size_t>(it - cdf_.begin());
  }

  const Permutation& sample(Rng& rng) const {
    return (*perms_)[sample_index(rng)];
  }

  // Two columns: dash-joined permutation, probability.
  void write_csv(std::ostream& out) const {
    out << "permutation,probability\n";
    for (std::size_t i = 0; i < probs_.size(); ++i)
      out << (*perms_)[i].to_string() << ',' << format_double(probs_[i])
          << '\n';
  }

 private:
  explicit PmfTable(int n)
      : n_(n),
        perms_(std::make_shared<std::vector<Permutation>>(
            enumerate_permutations(n))) {}

  void normalize_from_exponents(const std::vector<double>& exponents) {
    const double shift =
        *std::max_element(exponents.begin(), exponents.end());
    probs_.resize(exponents.size());
    double total = 0.0;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      probs_[i] = std::exp(exponents[i] - shift);
      total += probs_[i];
    }
    cdf_.resize(probs_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      probs_[i] /= total;
      running += probs_[i];
      cdf_[i] = running;
    }
    cdf_.back() = 1.0;
  }

  int n_;
  std::shared_ptr<std::vector<Permutation>> perms_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
};

inline double anchored_pmf(const MallowsSpec& spec, const Permutation& anchor,
                           AnchorWeight w, const Permutation& p) {
  require_same_universe(spec.center, p);
  return PmfTable::anchored(spec, anchor, w).probability_of(p);
}

// Repeated-insertion draw: item i of the center is inserted at position
// r in {1..i} with probability proportional to exp(-phi * (i - r)); the
// displacement i - r is exactly the number of inversions the insertion adds,
// so the draw follows the Mallows pmf at any n.
inline Permutation sample_mallows(const MallowsSpec& spec, Rng& rng) {
  const int n = spec.size();
  const double q = std::exp(-spec.phi);
  std::vector<ItemId> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    // Insertion displacement s = i - r, geometric weights q^s, s in [0, i-1].
    double total = 1.0;
    double term = 1.0;
    for (int s = 1; s < i; ++s) {
      term *= q;
      total += term;
    }
    double u = uniform01(rng) * total;
    int displacement = 0;
    double weight = 1.0;
    while (displacement < i - 1 && u > weight) {
      u -= weight;
      weight *= q;
      ++displacement;
    }
    const int position = i - displacement;  // 1-based from the top
    order.insert(order.begin() + (position - 1), spec.center.at_rank(i));
  }
  return Permutation(std::move(order));
}

// Anchored draws use exact inverse-CDF over the enumerated table for the
// given anchor, so they require n within the enumeration cap. The sampler
// caches one table per distinct anchor.
class AnchoredSampler {
 public:
  AnchoredSampler(MallowsSpec spec, AnchorWeight w)
      : spec_(std::move(spec)), w_(w) {
    require_enumerable(spec_.size());
  }

  const Permutation& sample(const Permutation& anchor, Rng& rng) {
    return table_for(anchor).sample(rng);
  }

  const PmfTable& table_for(const Permutation& anchor) {
    if (w_.value() == 0.0) {
      if (tables_.empty())
        tables_.emplace(0, PmfTable::mallows(spec_));
      return tables_.at(0);
    }
    const std::uint64_t key = lexicographic_index(anchor);
    auto it = tables_.find(key);
    if (it == tables_.end())
      it = tables_.emplace(key, PmfTable::anchored(spec_, anchor, w_)).first;
    return it->second;
  }

 private:
  MallowsSpec spec_;
  AnchorWeight w_;
  std::unordered_map<std::uint64_t, PmfTable> tables_;
};

inline Permutation sample_anchored(const MallowsSpec& spec,
                                   const Permutation& anchor, AnchorWeight w,
                                   Rng& rng) {
  require_enumerable(spec.size());
  return PmfTable::anchored(spec, anchor, w).sample(rng);
}

}  // namespace jointsel
