#include <doctest.h>

#include "emsde/config.hpp"
#include "emsde/types.hpp"

#include <filesystem>
#include <fstream>

using namespace emsde;

TEST_CASE("parsing key = value lines") {
  const auto cfg = Config::parse_string(
      "# comment\n"
      "\n"
      "model = cubic1d   # trailing comment\n"
      "N = 64, 256,1024\n"
      "M=1e5\n"
      "T = 0.5\n"
      "expect = below_prefactor, error_monotone\n");
  CHECK(cfg.text("model", "") == "cubic1d");
  CHECK(cfg.counts("N", {}) == std::vector<std::uint64_t>{64, 256, 1024});
  CHECK(cfg.count("M", 0) == 100000);
  CHECK(cfg.real("T", 1.0) == 0.5);
  CHECK(cfg.words("expect") == std::vector<std::string>{"below_prefactor", "error_monotone"});
  CHECK(cfg.real("rho", 2.5) == 2.5);
  CHECK(cfg.reals("t_query", {0.25}) == std::vector<double>{0.25});
  CHECK_FALSE(cfg.has("seed"));
  CHECK(cfg.words("stop").empty());
}

TEST_CASE("syntax errors name the line") {
  CHECK_THROWS_WITH_AS(Config::parse_string("model = cubic1d\nbogus = 1\n"), "line 2: unknown key 'bogus'",
                       ConfigError);
  CHECK_THROWS_WITH_AS(Config::parse_string("M = 10\nM = 20\n"), "line 2: repeated key 'M'", ConfigError);
  CHECK_THROWS_WITH_AS(Config::parse_string("\n\nmodel cubic1d\n"), "line 3: expected key = value",
                       ConfigError);
  CHECK_THROWS_WITH_AS(Config::parse_string("model =\n"), "line 1: empty value", ConfigError);
}

TEST_CASE("value conversions reject malformed input") {
  auto cfg = Config::parse_string("M = 12.5\nT = abc\nN = 4,,8\nq = inf\nseed = -3\n");
  CHECK_THROWS_AS(cfg.count("M", 0), ConfigError);
  CHECK_THROWS_AS(cfg.real("T", 0.0), ConfigError);
  CHECK_THROWS_AS(cfg.counts("N", {}), ConfigError);
  CHECK_THROWS_AS(cfg.real("q", 0.0), ConfigError);
  CHECK_THROWS_AS(cfg.count("seed", 0), ConfigError);
  CHECK(parse_real(" 2.5 ", "x") == 2.5);
  CHECK(parse_count("2e3", "x") == 2000);
  CHECK_THROWS_AS(parse_real("1.0x", "x"), ConfigError);
  CHECK(split_list("a, b ,c") == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("set validates keys") {
  Config cfg;
  cfg.set("M", "100");
  cfg.set("M", "200");
  CHECK(cfg.count("M", 0) == 200);
  CHECK_THROWS_AS(cfg.set("bogus", "1"), ConfigError);
}

TEST_CASE("loading from a file") {
  const auto path = std::filesystem::temp_directory_path() / "emsde_test_config.cfg";
  {
    std::ofstream os(path);
    os << "name = demo\nseed = 7\n";
  }
  const auto cfg = Config::load(path.string());
  CHECK(cfg.text("name", "") == "demo");
  CHECK(cfg.count("seed", 0) == 7);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(Config::load(path.string()), ConfigError);
}
