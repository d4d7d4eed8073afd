#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "rng.hpp"
#include "workload.hpp"

using namespace dtrack;

namespace {

// chi-square critical values at significance 0.001, dof 1..15
constexpr double kChi2Crit[] = {10.828, 13.816, 16.266, 18.467, 20.515,
                                22.458, 24.322, 26.124, 27.877, 29.588,
                                31.264, 32.909, 34.528, 36.123, 37.697};

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::vector<std::uint64_t> sample_counts(Distribution d, std::uint32_t k, std::uint64_t n,
                                         std::uint64_t seed) {
  SyntheticSource source(d, k, seed);
  std::vector<std::uint64_t> counts(k, 0);
  for (std::uint64_t i = 0; i < n; ++i) counts[*source.next()] += 1;
  return counts;
}

}  // namespace

TEST_CASE("distribution names round-trip") {
  for (auto d : {Distribution::Uniform, Distribution::Gaussian, Distribution::Zipfian,
                 Distribution::Exponential}) {
    CHECK(parse_distribution(distribution_name(d)) == d);
  }
  CHECK_THROWS_AS(parse_distribution("pareto"), std::invalid_argument);
}

TEST_CASE("exact cell probabilities") {
  SUBCASE("uniform") {
    const auto p = exact_probabilities(Distribution::Uniform, 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(p[i] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("zipfian with two players") {
    const auto p = exact_probabilities(Distribution::Zipfian, 2);
    // weights 1 and 1/sqrt(2), normalized by hand
    const double w1 = 1.0 / std::sqrt(2.0);
    CHECK(p[0] == doctest::Approx(1.0 / (1.0 + w1)).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(w1 / (1.0 + w1)).epsilon(1e-12));
  }
  SUBCASE("exponential with three players") {
    const auto p = exact_probabilities(Distribution::Exponential, 3);
    const double norm = 1.0 + std::exp(-1.0) + std::exp(-2.0);
    CHECK(p[0] == doctest::Approx(1.0 / norm).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(std::exp(-1.0) / norm).epsilon(1e-12));
    CHECK(p[2] == doctest::Approx(std::exp(-2.0) / norm).epsilon(1e-12));
  }
  SUBCASE("gaussian cells sum to one and peak in the middle") {
    const auto p = exact_probabilities(Distribution::Gaussian, 16);
    double sum = 0.0;
    for (std::size_t i = 0; i < 16; ++i) sum += p[i];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p[7] > p[0]);
    CHECK(p[8] > p[15]);
  }
  SUBCASE("gaussian rejection acceptance mass covers +-3 sigma") {
    const double accept = std::erf(3.0 / std::sqrt(2.0));
    CHECK(accept >= 0.99);
  }
}

TEST_CASE("single player always yields id zero") {
  for (auto d : {Distribution::Uniform, Distribution::Gaussian, Distribution::Zipfian,
                 Distribution::Exponential}) {
    SyntheticSource source(d, 1, 42);
    for (int i = 0; i < 100; ++i) CHECK(*source.next() == 0);
  }
}

TEST_CASE("same seed replays the same stream") {
  for (auto d : {Distribution::Uniform, Distribution::Gaussian, Distribution::Zipfian,
                 Distribution::Exponential}) {
    SyntheticSource a(d, 16, 99);
    SyntheticSource b(d, 16, 99);
    bool equal = true;
    for (int i = 0; i < 20000; ++i) equal = equal && (*a.next() == *b.next());
    CHECK(equal);

    SyntheticSource c(d, 16, 100);
    SyntheticSource e(d, 16, 99);
    bool any_diff = false;
    for (int i = 0; i < 1000; ++i) any_diff = any_diff || (*c.next() != *e.next());
    CHECK(any_diff);
  }
}

TEST_CASE("empirical frequencies converge to the exact probabilities") {
  constexpr std::uint64_t n = 1000000;
  for (auto d : {Distribution::Uniform, Distribution::Gaussian, Distribution::Zipfian,
                 Distribution::Exponential}) {
    CAPTURE(distribution_name(d));
    const auto counts = sample_counts(d, 16, n, 7);
    const auto exact = exact_probabilities(d, 16);
    double max_err = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      max_err = std::max(max_err, std::fabs(counts[i] / static_cast<double>(n) - exact[i]));
    }
    CHECK(max_err <= 0.005);
  }
}

// Goodness of fit at significance 0.001; cells with expected count below 5
// are pooled into their neighbour so the chi-square approximation holds.
TEST_CASE("sampler agrees with the exact probabilities (chi-square)") {
  constexpr std::uint64_t n = 1000000;
  for (auto d : {Distribution::Uniform, Distribution::Gaussian, Distribution::Zipfian,
                 Distribution::Exponential}) {
    CAPTURE(distribution_name(d));
    const auto counts = sample_counts(d, 16, n, 31337);
    const auto exact = exact_probabilities(d, 16);

    std::vector<double> observed, expected;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
      obs_acc += static_cast<double>(counts[i]);
      exp_acc += exact[i] * static_cast<double>(n);
      if (exp_acc >= 5.0) {
        observed.push_back(obs_acc);
        expected.push_back(exp_acc);
        obs_acc = exp_acc = 0.0;
      }
    }
    if (exp_acc > 0.0) {
      observed.back() += obs_acc;
      expected.back() += exp_acc;
    }
    REQUIRE(observed.size() >= 2);

    double chi2 = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      const double diff = observed[i] - expected[i];
      chi2 += diff * diff / expected[i];
    }
    const std::size_t dof = observed.size() - 1;
    REQUIRE(dof <= 15);
    CHECK(chi2 <= kChi2Crit[dof - 1]);
  }
}

TEST_CASE("trace parsing") {
  SUBCASE("plain ids with comments and blanks") {
    const auto path = temp_file("dtrack_trace_basic.txt");
    std::ofstream(path) << "# comment\n0\n1\n\n0\n";
    auto trace = load_trace(path);
    CHECK(trace.player_count() == 2);
    CHECK(*trace.next() == 0);
    CHECK(*trace.next() == 1);
    CHECK(*trace.next() == 0);
    CHECK(!trace.next().has_value());
    std::filesystem::remove(path);
  }
  SUBCASE("empty file ends immediately") {
    const auto path = temp_file("dtrack_trace_empty.txt");
    std::ofstream(path) << "";
    auto trace = load_trace(path);
    CHECK(!trace.next().has_value());
    std::filesystem::remove(path);
  }
  SUBCASE("garbage reports the line number") {
    const auto path = temp_file("dtrack_trace_bad.txt");
    std::ofstream(path) << "0\nnot-a-number\n";
    CHECK_THROWS_WITH_AS(load_trace(path), doctest::Contains(":2:"), ParseError);
    std::filesystem::remove(path);
  }
  SUBCASE("negative ids are rejected") {
    const auto path = temp_file("dtrack_trace_neg.txt");
    std::ofstream(path) << "0\n-3\n";
    CHECK_THROWS_AS(load_trace(path), InvalidPlayerId);
    std::filesystem::remove(path);
  }
  SUBCASE("player count override") {
    const auto path = temp_file("dtrack_trace_override.txt");
    std::ofstream(path) << "0\n1\n";
    auto trace = load_trace(path, 8);
    CHECK(trace.player_count() == 8);
    std::filesystem::remove(path);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_trace("/nonexistent/dtrack.trace"), ParseError);
  }
}

TEST_CASE("trace write/load round-trip") {
  const auto path = temp_file("dtrack_trace_roundtrip.txt");
  std::mt19937_64 gen(5);
  std::vector<std::uint32_t> ids(100000);
  for (auto& id : ids) id = uniform_below(gen, 32);
  write_trace(path, ids);
  const auto trace = load_trace(path);
  CHECK(trace.player_count() == 32);
  CHECK(trace.ids() == ids);
  std::filesystem::remove(path);
}

TEST_CASE("trace frequencies") {
  TraceSource trace({0, 0, 1, 2}, 4);
  const auto mu = trace_frequencies(trace);
  CHECK(mu[0] == doctest::Approx(0.5));
  CHECK(mu[1] == doctest::Approx(0.25));
  CHECK(mu[2] == doctest::Approx(0.25));
  CHECK(mu[3] == doctest::Approx(0.0));
}
