#pragma once

#include <limits>
#include <vector>

#include "immocz/polynomial.hpp"

namespace immocz::testing {

/// Greedy nearest-neighbor matching between two root multisets; returns the
/// largest matched distance (infinity on size mismatch). Good enough for the
/// well-separated root sets used in tests.
inline double max_match_distance(const ComplexVector& expected,
                                 const ComplexVector& actual) {
  if (expected.size() != actual.size()) {
    return std::numeric_limits<double>::infinity();
  }
  std::vector<bool> used(actual.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < expected.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_j = -1;
    for (Eigen::Index j = 0; j < actual.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(expected(i) - actual(j));
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace immocz::testing
