#pragma once

// Closed-form success probabilities for the three-item, two-presented
// pipeline under independent Mallows noise, the region inequalities deciding
// when the joint system beats each actor alone, and the grid evaluation
// behind the region figure.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jointsel {
namespace closedform {

inline void require_positive_phi(double phi) {
  if (!(phi > 0.0))
    throw std::invalid_argument("closed form: phi must be > 0");
}

// Normalizer over the 6 permutations of 3 items.
inline double z3(double phi) {
  require_positive_phi(phi);
  return 1.0 + 2.0 * std::exp(-phi) + 2.0 * std::exp(-2.0 * phi) +
         std::exp(-3.0 * phi);
}

// An actor alone succeeds when it ranks the best of 3 items first: the
// identity permutation or the one with the lower two items swapped.
inline double p_human(double phi) {
  return (1.0 + std::exp(-phi)) / z3(phi);
}

inline double p_algo(double phi) { return p_human(phi); }

// Joint success with 2 of 3 items presented: eight-term enumeration of the
// permutation pairs in which the presented set contains the best item and
// the human ranks it above the other presented item.
inline double p_joint(double phi_a, double phi_h) {
  require_positive_phi(phi_a);
  require_positive_phi(phi_h);
  const double numerator =
      1.0 + std::exp(-phi_h) + std::exp(-2.0 * phi_h) +
      2.0 * std::exp(-phi_a) + std::exp(-2.0 * phi_a) +
      std::exp(-phi_a - 2.0 * phi_h) + 3.0 * std::exp(-phi_a - phi_h) +
      2.0 * std::exp(-2.0 * phi_a - phi_h);
  return numerator / (z3(phi_a) * z3(phi_h));
}

// Sign of p_joint - p_human, as a polynomial in exponentials.
inline bool joint_beats_human(double phi_a, double phi_h) {
  require_positive_phi(phi_a);
  require_positive_phi(phi_h);
  return std::exp(phi_a + phi_h) + std::exp(2.0 * phi_a) - std::exp(phi_h) -
             std::exp(2.0 * phi_h) >
         0.0;
}

// Sign of p_joint - p_algo.
inline bool joint_beats_algo(double phi_a, double phi_h) {
  require_positive_phi(phi_a);
  require_positive_phi(phi_h);
  return -std::exp(phi_a + phi_h) - std::exp(phi_a + 2.0 * phi_h) -
             std::exp(phi_a) + 2.0 * std::exp(2.0 * phi_h) +
             std::exp(3.0 * phi_h) >
         0.0;
}

inline bool complementary(double phi_a, double phi_h) {
  return joint_beats_human(phi_a, phi_h) && joint_beats_algo(phi_a, phi_h);
}

// Region where a more accurate human still gains from the collaboration:
// phi_h > phi_a >= max(phi_h / 1.3, phi_h - 0.3).
inline bool accurate_human_region(double phi_a, double phi_h) {
  return phi_h > phi_a &&
         phi_a >= std::max(phi_h / 1.3, phi_h - 0.3);
}

// The much narrower mirror region for a more accurate algorithm:
// phi_a in (phi_h, 1.1 * phi_h] with phi_h <= 1.
inline bool accurate_algo_region(double phi_a, double phi_h) {
  return phi_h <= 1.0 && phi_a > phi_h && phi_a <= 1.1 * phi_h;
}

// Swapping which role the more accurate actor fills: the joint system does
// strictly better with the accurate actor in the human seat.
inline bool asymmetry_check(double phi_1, double phi_2) {
  require_positive_phi(phi_1);
  require_positive_phi(phi_2);
  return p_joint(phi_2, phi_1) > p_joint(phi_1, phi_2);
}

struct RegionPoint {
  double phi_a = 0.0;
  double phi_h = 0.0;
  double p_joint = 0.0;
  double p_algo = 0.0;
  double p_human = 0.0;
  bool complementary = false;
  bool hum_better_region = false;
  bool alg_better_region = false;
};

// Evaluates the closed forms on a resolution x resolution grid over
// [phi_min, phi_max]^2; row-major with phi_a varying fastest.
inline std::vector<RegionPoint> complementarity_grid(double phi_min,
                                                     double phi_max,
                                                     int resolution) {
  if (!(phi_min > 0.0) || !(phi_max > phi_min))
    throw std::invalid_argument(
        "complementarity_grid: need 0 < phi_min < phi_max");
  if (resolution < 2)
    throw std::invalid_argument("complementarity_grid: resolution < 2");
  std::vector<RegionPoint> grid;
  grid.reserve(static_cast<std::size_t>(resolution) *
               static_cast<std::size_t>(resolution));
  const double step = (phi_max - phi_min) / (resolution - 1);
  for (int ih = 0; ih < resolution; ++ih) {
    const double phi_h = phi_min + ih * step;
    for (int ia = 0; ia < resolution; ++ia) {
      const double phi_a = phi_min + ia * step;
      RegionPoint point;
      point.phi_a = phi_a;
      point.phi_h = phi_h;
      point.p_joint = p_joint(phi_a, phi_h);
      point.p_algo = p_algo(phi_a);
      point.p_human = p_human(phi_h);
      point.complementary = complementary(phi_a, phi_h);
      point.hum_better_region = accurate_human_region(phi_a, phi_h);
      point.alg_better_region = accurate_algo_region(phi_a, phi_h);
      grid.push_back(point);
    }
  }
  return grid;
}

}  // namespace closedform
}  // namespace jointsel
