#include <doctest.h>

#include "emsde/paths.hpp"

#include <cmath>
#include <sstream>

using namespace emsde;

TEST_CASE("generated increments have variance T / 2^L") {
  const int levels = 10;
  const double horizon = 2.0;
  double sum_sq = 0.0;
  std::size_t count = 0;
  for (std::uint64_t id = 0; id < 50; ++id) {
    const auto p = generate(3, id, levels, horizon, 2);
    for (double v : p.increments()) {
      sum_sq += v * v;
      ++count;
    }
  }
  const double var = sum_sq / count;
  const double expected = horizon / 1024.0;
  CHECK(std::abs(var / expected - 1.0) < 4.0 * std::sqrt(2.0 / count));
}

TEST_CASE("generation is deterministic per (seed, path id)") {
  const auto a = generate(9, 4, 6, 1.0, 3);
  const auto b = generate(9, 4, 6, 1.0, 3);
  CHECK(a.increments() == b.increments());
  CHECK(generate(9, 5, 6, 1.0, 3).increments() != a.increments());
  CHECK(generate(10, 4, 6, 1.0, 3).increments() != a.increments());
  CHECK(a.seed() == 9);
  CHECK(a.path_id() == 4);
  CHECK(a.fine_steps() == 64);
  CHECK(a.fine_dt() == 1.0 / 64.0);
}

TEST_CASE("levels beyond the cap are refused") {
  CHECK_THROWS_AS(generate(1, 0, kMaxLevels + 1, 1.0, 1), ResourceError);
  CHECK_THROWS_AS(generate(1, 0, -1, 1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(generate(1, 0, 3, 0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(generate(1, 0, 3, 1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(MasterPath(1.0, 2, 1, std::vector<double>(3)), InvalidArgument);
}

TEST_CASE("coarsening sums the fine increments") {
  const auto p = generate(5, 1, 8, 1.0, 2);
  for (std::size_t n : {1u, 2u, 4u, 16u, 256u}) {
    const auto inc = coarsen(p, n);
    REQUIRE(inc.size() == n);
    const std::size_t block = 256 / n;
    for (std::size_t j = 0; j < n; ++j) {
      Noise direct = Noise::Zero(2);
      for (std::size_t k = j * block; k < (j + 1) * block; ++k) {
        direct[0] += p.increments()[2 * k];
        direct[1] += p.increments()[2 * k + 1];
      }
      CHECK((inc[j] - direct).norm() <= 1e-13);
    }
  }
  CHECK_THROWS_AS(coarsen(p, 3), InvalidArgument);
  CHECK_THROWS_AS(coarsen(p, 512), InvalidArgument);
  CHECK_THROWS_AS(coarsen(p, 0), InvalidArgument);
}

TEST_CASE("coarsening commutes exactly across resolutions") {
  const auto p = generate(6, 2, 10, 1.0, 1);
  for (std::size_t n : {2u, 8u, 64u, 512u}) {
    const auto coarse = coarsen(p, n);
    const auto fine = coarsen(p, 2 * n);
    for (std::size_t j = 0; j < n; ++j) CHECK(coarse[j][0] == fine[2 * j][0] + fine[2 * j + 1][0]);
  }
  // the path endpoint is the same stored node at every resolution
  const double w_t = coarsen(p, 1)[0][0];
  CHECK(value_at(p, 1.0)[0] == w_t);
  CHECK(p.range_sum(0, 1024)[0] == w_t);
}

TEST_CASE("value_at and index_of on the dyadic grid") {
  const auto p = generate(7, 0, 4, 2.0, 1);
  CHECK(value_at(p, 0.0)[0] == 0.0);
  double w = 0.0;
  for (std::size_t k = 0; k < 16; ++k) w += p.increments()[k];
  CHECK(value_at(p, 2.0)[0] == doctest::Approx(w).epsilon(1e-14));
  CHECK(p.index_of(0.625) == 5);
  CHECK(p.index_of(2.0) == 16);
  CHECK_THROWS_AS(p.index_of(0.3), InvalidArgument);
  CHECK_THROWS_AS(p.index_of(2.5), InvalidArgument);
  CHECK_THROWS_AS(p.index_of(-0.125), InvalidArgument);
  const Noise r = p.range_sum(3, 11);
  double direct = 0.0;
  for (std::size_t k = 3; k < 11; ++k) direct += p.increments()[k];
  CHECK(r[0] == doctest::Approx(direct).epsilon(1e-14));
  CHECK(p.range_sum(5, 5)[0] == 0.0);
  CHECK(p.node(4, 6)[0] == p.increments()[6]);
  CHECK(p.node(0, 0)[0] == value_at(p, 2.0)[0]);
}

TEST_CASE("binary fixture round trip") {
  const auto p = generate(8, 3, 5, 1.5, 2);
  std::stringstream ss;
  write_master_path(ss, p);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 5) == "EMSP1");
  CHECK(bytes.size() == 5 + 8 + 4 + 4 + 32 * 2 * 8);
  const auto q = read_master_path(ss);
  CHECK(q.horizon() == 1.5);
  CHECK(q.levels() == 5);
  CHECK(q.dim() == 2);
  CHECK(q.increments() == p.increments());
  CHECK(coarsen(q, 4)[3] == coarsen(p, 4)[3]);

  std::stringstream bad("EMSP2xxxxxxxxxxxxxxxx");
  CHECK_THROWS(read_master_path(bad));
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS(read_master_path(truncated));
}
