#pragma once

#include <cstddef>
#include <vector>

namespace qwalk {

/// Probability over the N nodes for a walker launched from `origin`.
struct ProbabilityDist {
  std::vector<double> values;
  int origin = 0;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }

  double total() const;
  /// Most negative entry (0 when all entries are non-negative).
  double min_value() const;
  /// max_d |p(origin + d) - p(origin - d)|.
  double reflection_defect() const;

  static ProbabilityDist delta(int nodes, int origin);
  static ProbabilityDist uniform(int nodes);
};

}  // namespace qwalk
