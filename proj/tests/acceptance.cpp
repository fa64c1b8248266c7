// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qwalk/coherent.hpp"
#include "qwalk/large_decoherence.hpp"
#include "qwalk/master_eq.hpp"
#include "qwalk/mixing.hpp"
#include "qwalk/network.hpp"

using namespace qwalk;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0.0 || secs < limit_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  const std::string limit = limit_s > 0.0 ? fmt("limit %.0fs", limit_s) : "no limit";
  std::printf("%s criterion %d: %s | %s | %.2fs (%s%s)\n", ok ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs, limit.c_str(), in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Pure state spread over two nodes with a complex relative phase, so the
// comparison also exercises the coherences.
DensityMatrix superposition(int n) {
  DensityMatrix rho(n);
  const cplx a(std::sqrt(0.7), 0.0);
  const cplx b(0.0, std::sqrt(0.3));
  rho(0, 0) = a * std::conj(a);
  rho(0, 1) = a * std::conj(b);
  rho(1, 0) = b * std::conj(a);
  rho(1, 1) = b * std::conj(b);
  return rho;
}

struct GridPoint {
  int n, l;
  double gamma;
  MixingReport rep;
};

std::vector<GridPoint> sandwich_grid() {
  std::vector<GridPoint> grid;
  for (int n : {50, 100, 200})
    for (int l : {1, 2, 3})
      for (double gamma : {10.0, 20.0}) {
        MixingOptions opt;
        opt.epsilon = 0.01;
        grid.push_back({n, l, gamma, mixing_report(RegularNetwork(n, l), gamma, opt)});
      }
  return grid;
}

}  // namespace

int main() {
  criterion(1, "spectral correctness, N<=64, all l", 5, [] {
    double worst_res = 0.0, worst_id = 0.0;
    int cases = 0;
    for (int n = 3; n <= 64; ++n)
      for (int l = 1; 2 * l + 1 <= n; ++l) {
        const RegularNetwork net(n, l);
        worst_res = std::max(worst_res, verify_spectrum(net));
        const Spectrum sp = spectrum(net);
        for (int k = 0; k < n; ++k)
          worst_id = std::max(worst_id, std::abs(sp.laplacian_rates[k] - 4.0 * sp.sine_sums[k]));
        ++cases;
      }
    return Outcome{worst_res < 1e-10 && worst_id < 1e-12,
                   std::to_string(cases) + " networks, max residual " + fmt("%.2e", worst_res) +
                       ", max |lambda-4s| " + fmt("%.2e", worst_id)};
  });

  criterion(2, "integrator vs exact propagator", 30, [] {
    double worst = 0.0;
    int cases = 0;
    for (int n : {4, 6})
      for (int l : {1, 2}) {
        if (2 * l + 1 > n) continue;  // N=4, l=2 is not a valid network
        for (double gamma : {0.0, 0.5, 5.0, 50.0}) {
          const MasterEquation eq(RegularNetwork(n, l), gamma);
          const DensityMatrix rho0 = superposition(n);
          for (double t : {0.1, 1.0, 5.0}) {
            SimConfig cfg;
            cfg.t_end = t;
            const Trajectory traj = evolve(eq, rho0, cfg);
            const DensityMatrix exact = evolve_exact(eq, rho0, t);
            worst = std::max(worst, DensityMatrix::max_abs_difference(traj.back(), exact));
            ++cases;
          }
        }
      }
    return Outcome{worst < 1e-7, std::to_string(cases) + " runs (N=4,l=2 skipped: invalid), max |diff| " +
                                     fmt("%.2e", worst)};
  });

  criterion(3, "coherent reduction at gamma=0, N=8 l=2", 10, [] {
    const RegularNetwork net(8, 2);
    const MasterEquation eq(net, 0.0);
    SimConfig cfg;
    cfg.t_end = 10.0;
    cfg.record_stride = 0.1;
    double worst = 0.0;
    int samples = 0;
    evolve(eq, init_density(8, 0), cfg, [&](const DensityMatrix& rho) {
      if (rho.time() == 0.0) return;
      const auto coherent = quantum_distribution(net, kDotHopping, rho.time(), 0);
      worst = std::max(worst, max_diff(diagonal(rho).values, coherent.values));
      ++samples;
    });
    return Outcome{worst < 1e-6 && samples == 100,
                   std::to_string(samples) + " samples, max mismatch " + fmt("%.2e", worst)};
  });

  criterion(4, "large-gamma convergence, N=10 l=2, t=2*gamma", 60, [] {
    const RegularNetwork net(10, 2);
    auto tv_at = [&](double gamma) {
      const MasterEquation eq(net, gamma);
      DensityMatrix rho = init_density(10, 0);
      eq.advance(rho, 2.0 * gamma, 0.01);
      return total_variation(diagonal(rho), approx_distribution(net, gamma, 2.0 * gamma, 0));
    };
    const double tv20 = tv_at(20.0);
    const double tv80 = tv_at(80.0);
    const double factor = tv20 / tv80;
    return Outcome{tv20 < 0.05 && factor >= 2.5 && factor <= 6.0,
                   "TV(20)=" + fmt("%.3e", tv20) + " (<0.05: " + (tv20 < 0.05 ? "yes" : "no") +
                       "), TV(80)=" + fmt("%.3e", tv80) + ", shrink factor " + fmt("%.2f", factor) +
                       " (required [2.5, 6])"};
  });

  std::vector<GridPoint> grid;
  criterion(5, "bound sandwich, N in {50,100,200}, l in {1,2,3}, gamma in {10,20}", 60, [&] {
    grid = sandwich_grid();
    int bad = 0;
    double min_lo = 1e300, max_hi = 0.0;
    for (const auto& p : grid) {
      const auto& r = p.rep;
      if (!r.t_ins_measured || !r.t_ave_measured || !r.ins_lower_asym) {
        ++bad;
        continue;
      }
      const double ti = *r.t_ins_measured, ta = *r.t_ave_measured;
      if (!(ti >= *r.ins_lower_asym && ti <= r.ins_upper)) ++bad;
      if (!(ta >= r.ave_lower && ta <= r.ave_upper)) ++bad;
      min_lo = std::min({min_lo, ti / *r.ins_lower_asym, ta / r.ave_lower});
      max_hi = std::max({max_hi, ti / r.ins_upper, ta / r.ave_upper});
    }
    return Outcome{bad == 0, std::to_string(grid.size()) + " points, " + std::to_string(bad) +
                                 " outside; min measured/lower " + fmt("%.3f", min_lo) +
                                 ", max measured/upper " + fmt("%.3f", max_hi)};
  });

  criterion(6, "scaling in gamma and in l", 60, [] {
    MixingOptions opt;
    opt.measure_average = false;
    const RegularNetwork ring(100, 1);
    const double t10 = *mixing_report(ring, 10.0, opt).t_ins_measured;
    double gamma_err = 0.0;
    for (double gamma : {20.0, 40.0}) {
      const double t = *mixing_report(ring, gamma, opt).t_ins_measured;
      gamma_err = std::max(gamma_err, std::abs(t / t10 / (gamma / 10.0) - 1.0));
    }
    const double base = *mixing_report(RegularNetwork(400, 1), 10.0, opt).t_ins_measured;
    double l_err = 0.0;
    std::string ratios;
    for (int l : {2, 3}) {
      const double t = *mixing_report(RegularNetwork(400, l), 10.0, opt).t_ins_measured;
      const double ratio = t / base;
      l_err = std::max(l_err, std::abs(ratio * sum_of_squares(l) - 1.0));
      ratios += " l=" + std::to_string(l) + ":" + fmt("%.5f", ratio);
    }
    return Outcome{gamma_err < 0.01 && l_err < 0.2,
                   "gamma ratio error " + fmt("%.2e", gamma_err) + ", T(l)/T(1)" + ratios +
                       ", max rel. error vs 1/sum m^2 " + fmt("%.2e", l_err)};
  });

  criterion(7, "special-case reductions (cycle, long-range cycle)", 0, [] {
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    for (int n : {11, 50, 100, 257})
      for (double gamma : {5.0, 10.0, 40.0})
        for (double eps : {0.1 / n, 1.0 / n}) {
          const auto b = bounds_instantaneous(n, 1, gamma, eps);
          worst = std::max({worst, rel(*b.lower_asym, cycle::ins_lower(n, gamma, eps)),
                            rel(b.upper, cycle::ins_upper(n, gamma, eps))});
          for (int m = 2; 2 * m < n && m <= 5; ++m) {
            const int offs[] = {1, m};
            const auto lb = bounds_instantaneous(n, offs, gamma, eps);
            worst = std::max({worst, rel(*lb.lower_asym, lric::ins_lower(n, m, gamma, eps)),
                              rel(lb.upper, lric::ins_upper(n, m, gamma, eps))});
            const auto ss = sine_sums(n, offs);
            for (int k = 0; k < n; ++k) {
              const double s1 = std::sin(std::numbers::pi * k / n);
              const double sm = std::sin(std::numbers::pi * k * m / n);
              worst = std::max(worst, std::abs(ss[k] - (s1 * s1 + sm * sm)));
            }
          }
        }
    return Outcome{worst < 1e-12, "max discrepancy " + fmt("%.2e", worst)};
  });

  criterion(8, "conservation: trace, Hermiticity, TV(delta, uniform)", 0, [] {
    double trace_err = 0.0, herm = 0.0;
    int samples = 0;
    const struct {
      int n, l;
      double gamma, t;
    } runs[] = {{5, 1, 0.0, 20.0}, {8, 2, 0.5, 20.0}, {10, 2, 5.0, 20.0},
                {12, 3, 50.0, 5.0}, {32, 4, 10.0, 10.0}, {64, 1, 20.0, 5.0}};
    for (const auto& r : runs) {
      const MasterEquation eq(RegularNetwork(r.n, r.l), r.gamma);
      SimConfig cfg;
      cfg.t_end = r.t;
      cfg.record_stride = r.t / 20.0;
      for (const DensityMatrix& init : {init_density(r.n, 0), superposition(r.n)})
        evolve(eq, init, cfg, [&](const DensityMatrix& rho) {
          trace_err = std::max(trace_err, std::abs(rho.trace() - 1.0));
          herm = std::max(herm, rho.hermiticity_defect());
          ++samples;
        });
    }
    int tv_exact = 0, tv_cases = 0;
    double tv_worst = 0.0;
    for (int n = 3; n <= 64; ++n) {
      const double tv = distance_to_uniform(ProbabilityDist::delta(n, 0).values);
      const double expect = 2.0 * (n - 1) / n;
      tv_worst = std::max(tv_worst, std::abs(tv - expect));
      if (tv == expect) ++tv_exact;
      ++tv_cases;
    }
    return Outcome{trace_err < 1e-9 && herm < 1e-9 && tv_exact == tv_cases,
                   std::to_string(samples) + " samples, max |tr-1| " + fmt("%.2e", trace_err) +
                       ", max Hermiticity " + fmt("%.2e", herm) + "; TV bit-exact for " +
                       std::to_string(tv_exact) + "/" + std::to_string(tv_cases) +
                       " N, max |error| " + fmt("%.2e", tv_worst)};
  });

  criterion(9, "ordering T_ins <= T_ave on the sandwich grid", 60, [&] {
    if (grid.empty()) grid = sandwich_grid();
    int bad = 0;
    double min_ratio = 1e300;
    for (const auto& p : grid) {
      const auto& r = p.rep;
      if (!r.t_ins_measured || !r.t_ave_measured || *r.t_ins_measured > *r.t_ave_measured) ++bad;
      else min_ratio = std::min(min_ratio, *r.t_ave_measured / *r.t_ins_measured);
    }
    return Outcome{bad == 0, std::to_string(grid.size()) + " points, " + std::to_string(bad) +
                                 " violations, min T_ave/T_ins " + fmt("%.2f", min_ratio)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
