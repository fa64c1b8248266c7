#include "qwalk/mixing.hpp"

#include <cmath>
#include <numbers>

#include "qwalk/large_decoherence.hpp"
#include "qwalk/master_eq.hpp"

namespace qwalk {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

void check_rate_and_eps(int nodes, double gamma, double eps) {
  if (nodes < 3) throw ParameterError("bounds need N >= 3");
  if (!(gamma > 0.0)) throw ParameterError("decoherence rate must be positive");
  if (!(eps > 0.0)) throw ParameterError("epsilon must be positive");
}

double lower_log(int nodes, double eps) { return std::log(2.0 / (nodes * eps)); }

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double total_variation(std::span<const double> d1, std::span<const double> d2,
                       TvConvention convention) {
  if (d1.size() != d2.size()) throw ParameterError("total variation of unequal lengths");
  CompensatedSum sum;
  for (std::size_t j = 0; j < d1.size(); ++j) sum.add(std::abs(d1[j] - d2[j]));
  const double acc = sum.value();
  return convention == TvConvention::halved ? 0.5 * acc : acc;
}

double total_variation(const ProbabilityDist& d1, const ProbabilityDist& d2,
                       TvConvention convention) {
  return total_variation(d1.values, d2.values, convention);
}

double distance_to_uniform(std::span<const double> d, TvConvention convention) {
  if (d.empty()) throw ParameterError("empty distribution");
  // sum |N p - 1| / N: no rounded 1/N in the terms, one division at the end
  const double n = static_cast<double>(d.size());
  CompensatedSum sum;
  for (const double v : d) sum.add(std::abs(std::fma(n, v, -1.0)));
  const double acc = sum.value() / n;
  return convention == TvConvention::halved ? 0.5 * acc : acc;
}

std::optional<double> first_crossing(const std::function<double(double)>& distance_at,
                                     double threshold, double cap, const CrossingOptions& opt) {
  return first_crossing(
      0.0, [](double, double, double to) { return to; },
      [&distance_at](double t) { return distance_at(t); }, threshold, cap, opt);
}

namespace {

std::optional<double> crossing_to_uniform(const DistributionAt& dist_at, int nodes, double eps,
                                          double cap, const CrossingOptions& opt,
                                          TvConvention convention) {
  if (nodes < 1) throw ParameterError("distribution needs at least one node");
  return first_crossing(
      [&](double t) {
        const ProbabilityDist d = dist_at(t);
        if (d.size() != static_cast<std::size_t>(nodes)) {
          throw ParameterError("distribution length differs from N");
        }
        return distance_to_uniform(d.values, convention);
      },
      eps, cap, opt);
}

}  // namespace

std::optional<double> instantaneous_mixing_time(const DistributionAt& dist_at, int nodes,
                                                double eps, double cap,
                                                const CrossingOptions& opt,
                                                TvConvention convention) {
  return crossing_to_uniform(dist_at, nodes, eps, cap, opt, convention);
}

std::optional<double> average_mixing_time(const DistributionAt& avg_dist_at, int nodes,
                                          double eps, double cap, const CrossingOptions& opt,
                                          TvConvention convention) {
  return crossing_to_uniform(avg_dist_at, nodes, eps, cap, opt, convention);
}

// ---------------------------------------------------------------------------
// Analytic bounds

InstantaneousBounds bounds_instantaneous(int nodes, std::span<const int> offsets, double gamma,
                                         double eps) {
  check_rate_and_eps(nodes, gamma, eps);
  if (offsets.empty()) throw ParameterError("at least one link offset is required");
  const double n2 = static_cast<double>(nodes) * nodes;
  const double squares = sum_of_squares(offsets);
  InstantaneousBounds b;
  b.upper = gamma * n2 / (2.0 * squares) * std::log((2.0 + eps) / eps);
  const double log_term = lower_log(nodes, eps);
  if (log_term < 0.0) {
    b.epsilon_too_large = true;
    return b;
  }
  const double s1 = sine_sum(nodes, 1, offsets);
  b.lower_exact = 2.0 * gamma / s1 * log_term;
  b.lower_asym = 2.0 * gamma * n2 / (kPi2 * squares) * log_term;
  return b;
}

InstantaneousBounds bounds_instantaneous(int nodes, int range, double gamma, double eps) {
  const RegularNetwork net(nodes, range);
  const auto offs = net.offsets();
  return bounds_instantaneous(nodes, offs, gamma, eps);
}

AverageBounds bounds_average(int nodes, std::span<const int> offsets, double gamma, double eps) {
  check_rate_and_eps(nodes, gamma, eps);
  if (offsets.empty()) throw ParameterError("at least one link offset is required");
  const double squares = sum_of_squares(offsets);
  const double n = nodes;
  return AverageBounds{4.0 * gamma * n / (eps * kPi2 * squares),
                       gamma * n * n * kPi2 / (6.0 * eps * squares)};
}

AverageBounds bounds_average(int nodes, int range, double gamma, double eps) {
  const RegularNetwork net(nodes, range);
  const auto offs = net.offsets();
  return bounds_average(nodes, offs, gamma, eps);
}

namespace cycle {

double ins_lower(int nodes, double gamma, double eps) {
  check_rate_and_eps(nodes, gamma, eps);
  const double n = nodes;
  return 2.0 * gamma * n * n / kPi2 * lower_log(nodes, eps);
}

double ins_upper(int nodes, double gamma, double eps) {
  check_rate_and_eps(nodes, gamma, eps);
  const double n = nodes;
  return gamma * n * n / 2.0 * std::log((2.0 + eps) / eps);
}

}  // namespace cycle

namespace lric {

double ins_lower(int nodes, int chord, double gamma, double eps) {
  check_rate_and_eps(nodes, gamma, eps);
  const double n = nodes;
  const double m = chord;
  return 2.0 * gamma * n * n / (kPi2 * (1.0 + m * m)) * lower_log(nodes, eps);
}

double ins_upper(int nodes, int chord, double gamma, double eps) {
  check_rate_and_eps(nodes, gamma, eps);
  const double n = nodes;
  const double m = chord;
  return gamma * n * n / (2.0 * (1.0 + m * m)) * std::log((2.0 + eps) / eps);
}

}  // namespace lric

double instantaneous_cap(const RegularNetwork& net, double gamma, double eps) {
  check_rate_and_eps(net.nodes(), gamma, eps);
  const double s1 = sine_sum(net.nodes(), 1, net.offsets());
  return 2.0 * gamma / s1 * std::log(2.0 * net.nodes() / eps);
}

// ---------------------------------------------------------------------------
// Reports

std::vector<std::string> MixingReport::flags() const {
  std::vector<std::string> out;
  if (epsilon_too_large_for_lower_bound) out.emplace_back("epsilon_too_large_for_lower_bound");
  if (gamma_below_large_decoherence_gate) out.emplace_back("gamma_below_large_decoherence_gate");
  return out;
}

const char* to_string(MixingEngine engine) {
  return engine == MixingEngine::closed_form ? "closed_form" : "master_eq";
}

namespace {

// Master-equation state marched forward in time together with the running
// integral of the populations.
struct MarchState {
  DensityMatrix rho;
  std::vector<double> integral;
};

void measure_with_master_eq(const RegularNetwork& net, double gamma, const MixingOptions& opt,
                            double ins_cap, double ave_cap, MixingReport& rep) {
  const MasterEquation eq(net, gamma, opt.hopping);
  const int n = net.nodes();
  auto advance = [&eq](const MarchState& s, double from, double to) {
    MarchState next = s;
    eq.advance(next.rho, to - from, eq.stable_step(), next.integral);
    return next;
  };
  MarchState start{DensityMatrix::pure_node(n, opt.origin),
                   std::vector<double>(static_cast<std::size_t>(n), 0.0)};

  rep.t_ins_measured = first_crossing(
      start, advance,
      [&](const MarchState& s) { return distance_to_uniform(s.rho.populations(), opt.convention); },
      opt.epsilon, ins_cap, opt.crossing);

  if (!opt.measure_average) return;
  rep.t_ave_measured = first_crossing(
      start, advance,
      [&](const MarchState& s) {
        const double t = s.rho.time();
        if (t == 0.0) return distance_to_uniform(s.rho.populations(), opt.convention);
        std::vector<double> avg(s.integral);
        for (auto& v : avg) v /= t;
        return distance_to_uniform(avg, opt.convention);
      },
      opt.epsilon, ave_cap, opt.crossing);
}

}  // namespace

MixingReport mixing_report(const RegularNetwork& net, double gamma, const MixingOptions& opt) {
  MixingReport rep;
  rep.nodes = net.nodes();
  rep.range = net.range();
  rep.gamma = gamma;
  rep.epsilon = opt.epsilon;
  rep.engine = opt.engine;

  const InstantaneousBounds ins = bounds_instantaneous(net.nodes(), net.range(), gamma, opt.epsilon);
  const AverageBounds ave = bounds_average(net.nodes(), net.range(), gamma, opt.epsilon);
  rep.ins_lower_exact = ins.lower_exact;
  rep.ins_lower_asym = ins.lower_asym;
  rep.ins_upper = ins.upper;
  rep.ave_lower = ave.lower;
  rep.ave_upper = ave.upper;
  rep.epsilon_too_large_for_lower_bound = ins.epsilon_too_large;
  rep.gamma_below_large_decoherence_gate = gamma < kLargeDecoherenceGate;

  const double ins_cap = instantaneous_cap(net, gamma, opt.epsilon);
  const double ave_cap = 10.0 * ave.upper;

  if (opt.engine == MixingEngine::master_eq) {
    measure_with_master_eq(net, gamma, opt, ins_cap, ave_cap, rep);
    return rep;
  }

  const auto sums = sine_sums(net.nodes(), net.offsets());
  rep.t_ins_measured = instantaneous_mixing_time(
      [&](double t) { return relaxed_distribution(sums, gamma, t, opt.origin); }, net.nodes(),
      opt.epsilon, ins_cap, opt.crossing, opt.convention);
  if (opt.measure_average) {
    rep.t_ave_measured = average_mixing_time(
        [&](double horizon) { return relaxed_time_avg_distribution(sums, gamma, horizon, opt.origin); },
        net.nodes(), opt.epsilon, ave_cap, opt.crossing, opt.convention);
  }
  return rep;
}

}  // namespace qwalk
