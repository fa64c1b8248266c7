#include "qwalk/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

double ProbabilityDist::total() const {
  double acc = 0.0;
  for (const double v : values) acc += v;
  return acc;
}

double ProbabilityDist::min_value() const {
  double lo = 0.0;
  for (const double v : values) lo = std::min(lo, v);
  return lo;
}

double ProbabilityDist::reflection_defect() const {
  const long long n = static_cast<long long>(values.size());
  double worst = 0.0;
  for (long long d = 1; d < n; ++d) {
    const auto plus = static_cast<std::size_t>(((origin + d) % n + n) % n);
    const auto minus = static_cast<std::size_t>(((origin - d) % n + n) % n);
    worst = std::max(worst, std::abs(values[plus] - values[minus]));
  }
  return worst;
}

ProbabilityDist ProbabilityDist::delta(int nodes, int origin) {
  if (nodes < 1 || origin < 0 || origin >= nodes) throw ParameterError("origin out of range");
  ProbabilityDist d{std::vector<double>(static_cast<std::size_t>(nodes), 0.0), origin};
  d.values[origin] = 1.0;
  return d;
}

ProbabilityDist ProbabilityDist::uniform(int nodes) {
  if (nodes < 1) throw ParameterError("uniform distribution needs at least one node");
  return ProbabilityDist{std::vector<double>(static_cast<std::size_t>(nodes), 1.0 / nodes), 0};
}

}  // namespace qwalk
