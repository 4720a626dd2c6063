#include <doctest.h>

#include "emsde/random.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace emsde;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = std::array<std::uint32_t, 4>;
  using K = std::array<std::uint32_t, 2>;
  CHECK(philox4x32(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("open unit mapping stays inside (0, 1)") {
  CHECK(to_open_unit(0) > 0.0);
  CHECK(to_open_unit(~std::uint64_t{0}) < 1.0);
  CHECK(to_open_unit(std::uint64_t{1} << 63) == doctest::Approx(0.5));
}

TEST_CASE("normal quantile inverts the CDF") {
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-15));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-14));
  for (double p : {1e-300, 1e-20, 1e-5, 0.01, 0.2, 0.4999, 0.6, 0.9, 0.999999}) {
    const double x = normal_quantile(p);
    CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-13));
    if (p >= 1e-5) CHECK(normal_quantile(1.0 - p) == doctest::Approx(-x).epsilon(1e-9));
  }
  CHECK(normal_cdf(0.0) == 0.5);
}

TEST_CASE("counter normals are a flat, position-addressable stream") {
  const CounterNormal g(42, 7);
  std::vector<double> all(11);
  g.fill(0, all.data(), all.size());
  for (std::size_t first = 0; first < 11; ++first) {
    for (std::size_t count = 0; first + count <= 11; ++count) {
      std::vector<double> part(count);
      g.fill(first, part.data(), count);
      CHECK(std::equal(part.begin(), part.end(), all.begin() + static_cast<long>(first)));
    }
  }
  CHECK(g.pair(2)[1] == all[5]);

  std::vector<double> other(11);
  CounterNormal(42, 8).fill(0, other.data(), other.size());
  CHECK(other != all);
  CounterNormal(43, 7).fill(0, other.data(), other.size());
  CHECK(other != all);
}

TEST_CASE("counter normals are standard normal") {
  const std::size_t n = 200000;
  std::vector<double> z(n);
  CounterNormal(1, 0).fill(0, z.data(), n);
  double mean = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : z) {
    mean += v;
    m2 += v * v;
    m4 += v * v * v * v;
  }
  mean /= n;
  m2 /= n;
  m4 /= n;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
  CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / n));

  // Kolmogorov-Smirnov at the 0.1% level
  std::sort(z.begin(), z.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = normal_cdf(z[i]);
    ks = std::max({ks, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  CHECK(ks * std::sqrt(static_cast<double>(n)) < 1.95);

  // lag-one correlation across the pair boundary
  double lag = 0.0;
  std::vector<double> w(n);
  CounterNormal(1, 0).fill(0, w.data(), n);
  for (std::size_t i = 0; i + 1 < n; ++i) lag += w[i] * w[i + 1];
  CHECK(std::abs(lag / n) < 4.0 / std::sqrt(n));
}
