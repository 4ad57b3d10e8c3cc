#pragma once

// Shared randomized-input helpers for the test suites (fixed seeds,
// deterministic runs).

#include "hyptet/lorentz.hpp"

#include <random>

namespace hyptet::testutil {

inline Vec4 random_vec(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return Vec4{dist(rng), dist(rng), dist(rng), dist(rng)};
}

// Space-like unit normal: spatial part dominates the time part.
inline lorentz::Plane random_plane(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> frac(-0.8, 0.8);
  Vec4 n;
  do {
    n = Vec4{gauss(rng), gauss(rng), gauss(rng), 0.0};
  } while (n.norm() < 1e-3);
  n[3] = frac(rng) * n.head<3>().norm();
  return lorentz::make_plane(n);
}

inline lorentz::Motion random_motion(std::mt19937_64& rng, int reflections) {
  lorentz::Motion m = lorentz::Motion::identity();
  for (int i = 0; i < reflections; ++i)
    m = lorentz::compose(m, lorentz::reflection(random_plane(rng)));
  return m;
}

}  // namespace hyptet::testutil
