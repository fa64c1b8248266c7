#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/distribution.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/network.hpp"

namespace qwalk {

/// unhalved: sum_j |d1(j) - d2(j)| (range [0, 2]); halved: half of that.
enum class TvConvention { unhalved, halved };

double total_variation(std::span<const double> d1, std::span<const double> d2,
                       TvConvention convention = TvConvention::unhalved);
double total_variation(const ProbabilityDist& d1, const ProbabilityDist& d2,
                       TvConvention convention = TvConvention::unhalved);
double distance_to_uniform(std::span<const double> d,
                           TvConvention convention = TvConvention::unhalved);

struct CrossingOptions {
  int grid_points = 2048;   // uniform intervals over [0, cap]
  double rel_width = 1e-6;  // bisection stops when (hi - lo) <= rel_width * hi
};

/// First time at which distance(state) <= threshold, found by scanning a
/// uniform grid on [0, cap] and bisecting the first bracketing interval.
/// The state is only ever moved forward in time:
///   advance(const State& s, double from, double to) -> State
///   distance(const State& s) -> double
/// Returns nullopt when the grid never crosses before `cap`. The result is the
/// first crossing seen on the grid; a dip between two grid points that does
/// not reach a grid point is not detected.
template <class State, class Advance, class Distance>
std::optional<double> first_crossing(State start, Advance&& advance, Distance&& distance,
                                     double threshold, double cap,
                                     const CrossingOptions& opt = {}) {
  if (!(threshold > 0.0)) throw ParameterError("crossing threshold must be positive");
  if (!(cap > 0.0)) throw ParameterError("crossing cap must be positive");
  if (opt.grid_points < 1) throw ParameterError("grid_points must be >= 1");
  if (!(opt.rel_width > 0.0)) throw ParameterError("rel_width must be positive");

  if (distance(start) <= threshold) return 0.0;

  State below = std::move(start);
  double lo = 0.0;
  for (int i = 1; i <= opt.grid_points; ++i) {
    const double t = cap * static_cast<double>(i) / opt.grid_points;
    State next = advance(below, lo, t);
    if (distance(next) > threshold) {
      below = std::move(next);
      lo = t;
      continue;
    }
    double hi = t;
    while (hi - lo > opt.rel_width * hi) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      State probe = advance(below, lo, mid);
      if (distance(probe) <= threshold) {
        hi = mid;
      } else {
        below = std::move(probe);
        lo = mid;
      }
    }
    return hi;
  }
  return std::nullopt;
}

/// Stateless overload for distances that can be evaluated at any t directly.
std::optional<double> first_crossing(const std::function<double(double)>& distance_at,
                                     double threshold, double cap,
                                     const CrossingOptions& opt = {});

using DistributionAt = std::function<ProbabilityDist(double)>;

/// min { t : TV(dist_at(t), uniform) <= eps } searched on [0, cap].
std::optional<double> instantaneous_mixing_time(const DistributionAt& dist_at, int nodes,
                                                double eps, double cap,
                                                const CrossingOptions& opt = {},
                                                TvConvention convention = TvConvention::unhalved);

/// min { T : TV(avg_dist_at(T), uniform) <= eps } where avg_dist_at(T) is the
/// distribution averaged over [0, T].
std::optional<double> average_mixing_time(const DistributionAt& avg_dist_at, int nodes,
                                          double eps, double cap,
                                          const CrossingOptions& opt = {},
                                          TvConvention convention = TvConvention::unhalved);

/// Analytic instantaneous mixing-time bounds. Lower bounds are absent when
/// eps > 2/N (the logarithm would be negative).
struct InstantaneousBounds {
  std::optional<double> lower_exact;  // (2 gamma / s_1) ln(2 / (N eps))
  std::optional<double> lower_asym;   // 2 gamma N^2 / (pi^2 S) ln(2 / (N eps))
  double upper = 0.0;                 // gamma N^2 / (2 S) ln((2 + eps) / eps)
  bool epsilon_too_large = false;
};

/// Analytic average mixing-time bounds.
struct AverageBounds {
  double lower = 0.0;  // 4 gamma N / (eps pi^2 S)
  double upper = 0.0;  // gamma N^2 pi^2 / (6 eps S)
};

// S is the sum of squared link offsets: l(l+1)(2l+1)/6 for a regular network.
InstantaneousBounds bounds_instantaneous(int nodes, int range, double gamma, double eps);
InstantaneousBounds bounds_instantaneous(int nodes, std::span<const int> offsets, double gamma,
                                         double eps);
AverageBounds bounds_average(int nodes, int range, double gamma, double eps);
AverageBounds bounds_average(int nodes, std::span<const int> offsets, double gamma, double eps);

// Textbook closed forms for the two special topologies, kept as separate code
// paths so the general bounds can be checked against them.
namespace cycle {
double ins_lower(int nodes, double gamma, double eps);
double ins_upper(int nodes, double gamma, double eps);
}  // namespace cycle

namespace lric {
// Cycle plus all chords of length m.
double ins_lower(int nodes, int chord, double gamma, double eps);
double ins_upper(int nodes, int chord, double gamma, double eps);
}  // namespace lric

/// Scan horizon for the instantaneous search: (2 gamma / s_1) ln(2N / eps).
double instantaneous_cap(const RegularNetwork& net, double gamma, double eps);

enum class MixingEngine { closed_form, master_eq };

struct MixingOptions {
  double epsilon = 0.01;
  MixingEngine engine = MixingEngine::closed_form;
  CrossingOptions crossing{};
  TvConvention convention = TvConvention::unhalved;
  bool measure_average = true;
  double hopping = 0.25;  // master_eq engine only
  int origin = 0;
};

struct MixingReport {
  int nodes = 0;
  int range = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  MixingEngine engine = MixingEngine::closed_form;

  std::optional<double> t_ins_measured;
  std::optional<double> t_ave_measured;
  std::optional<double> ins_lower_exact;
  std::optional<double> ins_lower_asym;
  double ins_upper = 0.0;
  double ave_lower = 0.0;
  double ave_upper = 0.0;

  bool epsilon_too_large_for_lower_bound = false;
  bool gamma_below_large_decoherence_gate = false;

  std::vector<std::string> flags() const;
};

MixingReport mixing_report(const RegularNetwork& net, double gamma, const MixingOptions& opt = {});

const char* to_string(MixingEngine engine);

}  // namespace qwalk
