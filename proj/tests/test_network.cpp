#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/errors.hpp"
#include "qwalk/network.hpp"

using namespace qwalk;

TEST_CASE("build_network neighbour sets") {
  CHECK(build_network(8, 3).neighbors(0) == std::vector<int>{1, 2, 3, 5, 6, 7});
  CHECK(build_network(4, 1).neighbors(0) == std::vector<int>{1, 3});
  CHECK(build_network(5, 2).neighbors(4) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("build_network rejects colliding or degenerate ranges") {
  CHECK_THROWS_AS(build_network(4, 2), ParameterError);
  CHECK_THROWS_AS(build_network(2, 1), ParameterError);
  CHECK_THROWS_AS(build_network(10, 0), ParameterError);
  CHECK_THROWS_AS(build_network(10, 5), ParameterError);
  CHECK_NOTHROW(build_network(11, 5));
}

TEST_CASE("every node has degree 2l and symmetric links") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 80)(rng);
    const int l = std::uniform_int_distribution<int>(1, (n - 1) / 2)(rng);
    const RegularNetwork net(n, l);
    for (int j = 0; j < n; ++j) {
      const auto nb = net.neighbors(j);
      REQUIRE(nb.size() == static_cast<std::size_t>(2 * l));
      for (std::size_t i = 1; i < nb.size(); ++i) CHECK(nb[i] != nb[i - 1]);
      for (int k : nb) {
        const auto back = net.neighbors(k);
        CHECK(std::find(back.begin(), back.end(), j) != back.end());
      }
    }
  }
}

TEST_CASE("spectrum of the 4-cycle") {
  const Spectrum s = spectrum(build_network(4, 1));
  const std::vector<double> expect{0.0, 2.0, 4.0, 2.0};
  for (int n = 0; n < 4; ++n) CHECK(s.laplacian_rates[n] == doctest::Approx(expect[n]).epsilon(1e-14));
}

TEST_CASE("sine sum for N=8, l=3, k=1") {
  // sin^2(pi/8) + sin^2(pi/4) + sin^2(3 pi/8), evaluated term by term
  double direct = 0.0;
  for (int m = 1; m <= 3; ++m) direct += std::pow(std::sin(std::numbers::pi * m / 8.0), 2);
  CHECK(direct == doctest::Approx(1.5).epsilon(1e-15));
  const Spectrum s = spectrum(build_network(8, 3));
  CHECK(s.sine_sums[1] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("uniform mode has zero rate") {
  for (int n = 3; n <= 40; ++n) {
    for (int l = 1; 2 * l < n; ++l) {
      const Spectrum s = spectrum(build_network(n, l));
      CHECK(s.laplacian_rates[0] == 0.0);
      CHECK(s.sine_sums[0] == 0.0);
    }
  }
}

TEST_CASE("spectrum identities hold for every N <= 64") {
  for (int n = 3; n <= 64; ++n) {
    for (int l = 1; 2 * l < n; ++l) {
      const Spectrum s = spectrum(build_network(n, l), 0.7);
      for (int k = 0; k < n; ++k) {
        CHECK(std::abs(s.laplacian_rates[k] - 4.0 * s.sine_sums[k]) < 1e-12);
        CHECK(s.laplacian_rates[k] >= -1e-13);
        CHECK(s.sine_sums[k] >= 0.0);
        CHECK(s.sine_sums[k] <= l + 1e-12);
        CHECK(s.laplacian_rates[k] == doctest::Approx(s.laplacian_rates[(n - k) % n]).epsilon(1e-12));
        CHECK(s.sine_sums[k] == s.sine_sums[(n - k) % n]);
        double cos_sum = 0.0;
        for (int m = 1; m <= l; ++m) cos_sum += std::cos(m * 2.0 * std::numbers::pi * k / n);
        CHECK(std::abs(s.hop_freqs[k] - 2.0 * 0.7 * cos_sum) < 1e-12);
        CHECK(s.thetas[k] == 2.0 * std::numbers::pi * k / n);
      }
    }
  }
}

TEST_CASE("verify_spectrum residuals") {
  CHECK(verify_spectrum(build_network(16, 2)) < 1e-12);
  CHECK(verify_spectrum(build_network(4, 1)) < 1e-14);
  CHECK(verify_spectrum(build_network(8, 3)) < 1e-12);
}

TEST_CASE("explicit Hamiltonian is symmetric with zero row sums") {
  const RegularNetwork net(9, 3);
  const auto h = hamiltonian_matrix(net);
  for (int i = 0; i < 9; ++i) {
    double row = 0.0;
    for (int j = 0; j < 9; ++j) {
      row += h[i * 9 + j];
      CHECK(h[i * 9 + j] == h[j * 9 + i]);
    }
    CHECK(row == 0.0);
    CHECK(h[i * 9 + i] == -6.0);
  }
}

TEST_CASE("sum of squares closed form matches the loop") {
  for (int l = 1; l <= 50; ++l) {
    double loop = 0.0;
    for (int m = 1; m <= l; ++m) loop += m * m;
    CHECK(sum_of_squares(l) == loop);
    const RegularNetwork net(2 * l + 1, l);
    const auto offs = net.offsets();
    CHECK(sum_of_squares(offs) == loop);
  }
}

TEST_CASE("spectrum rejects non-positive hopping") {
  CHECK_THROWS_AS(spectrum(build_network(5, 1), 0.0), ParameterError);
}
