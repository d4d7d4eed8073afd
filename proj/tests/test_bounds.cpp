#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "bounds.hpp"
#include "highprec.hpp"
#include "rng.hpp"

using namespace dtrack;
using namespace dtrack::bounds;

namespace {

// Reference values computed with 40-digit decimal arithmetic.
constexpr double kUbQuarter = 301.394723252865929736861078768325860;
constexpr double kLbQuarter = 198.605276747134070263138921231674140;
constexpr double kStaticT20 = 1025425.026309049648310948987980189;
constexpr double kLearnedMuHalf = 0.502364921775853129708261206336704;
constexpr double kLearnedUb26 = 261963.600366854085687475492720891;
constexpr double kLearnedT105 = 976050.772609981503167526755273148;
constexpr double kBetaKnown = 8.660125055217142352360058820114750;
constexpr double kBetaLearned = 84.37248671849967698707175813237337;

bool rel_close(double a, double b, double rel = 1e-9) {
  return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), 1.0});
}

}  // namespace

TEST_CASE("probability vector validation") {
  CHECK_NOTHROW(ProbVector({0.25, 0.25, 0.25, 0.25}));
  CHECK_NOTHROW(ProbVector({1.0}));
  CHECK_THROWS_AS(ProbVector({}), std::invalid_argument);
  CHECK_THROWS_AS(ProbVector({0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(ProbVector({-0.1, 1.1}), std::invalid_argument);
  CHECK_THROWS_AS(ProbVector({0.5, 0.4}), std::invalid_argument);
  CHECK(ProbVector::uniform(5).size() == 5);
}

TEST_CASE("bernstein bounds match the reference evaluations") {
  const double log400 = std::log(400.0);
  CHECK(bernstein_upper_bound(0.0, 1000, 4, 0.01) == doctest::Approx((2.0 / 3.0) * log400).epsilon(1e-12));
  CHECK(bernstein_upper_bound(1.0, 1000, 4, 0.01) ==
        doctest::Approx(1000.0 + (2.0 / 3.0) * log400).epsilon(1e-12));
  CHECK(rel_close(bernstein_upper_bound(0.25, 1000, 4, 0.01), kUbQuarter));
  CHECK(rel_close(bernstein_lower_bound(0.25, 1000, 4, 0.01), kLbQuarter));
  CHECK(bernstein_lower_bound(0.0, 1000, 4, 0.01) ==
        doctest::Approx(-(2.0 / 3.0) * log400).epsilon(1e-12));

  CHECK(rel_close(bernstein_upper_bound(0.25, 1000, 4, 0.01),
                  static_cast<double>(highprec::bernstein_ub(0.25L, 1000.0L, 4, 0.01L))));
  CHECK(rel_close(bernstein_lower_bound(0.25, 1000, 4, 0.01),
                  static_cast<double>(highprec::bernstein_lb(0.25L, 1000.0L, 4, 0.01L))));
}

TEST_CASE("bernstein bound domain errors") {
  CHECK_THROWS_AS(bernstein_upper_bound(0.5, 1000, 4, 0.0), std::domain_error);
  CHECK_THROWS_AS(bernstein_upper_bound(0.5, 1000, 4, 1.0), std::domain_error);
  CHECK_THROWS_AS(bernstein_upper_bound(0.5, 0.0, 4, 0.01), std::domain_error);
  CHECK_THROWS_AS(bernstein_upper_bound(-0.1, 1000, 4, 0.01), std::domain_error);
  CHECK_THROWS_AS(bernstein_lower_bound(0.5, -1.0, 4, 0.01), std::domain_error);
}

TEST_CASE("upper and lower bounds bracket the mean symmetrically") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 200; ++i) {
    const double mu = uniform_unit(gen);
    const double t = 1.0 + uniform_unit(gen) * 1e6;
    const auto k = static_cast<std::uint32_t>(1 + uniform_below(gen, 64));
    const double delta = 0.001 + uniform_unit(gen) * 0.5;
    const double ub = bernstein_upper_bound(mu, t, k, delta);
    const double lb = bernstein_lower_bound(mu, t, k, delta);
    CHECK(ub >= mu * t);
    CHECK(lb <= mu * t);
    CHECK(rel_close(ub + lb, 2.0 * mu * t, 1e-9));
  }
}

TEST_CASE("closed-form horizon") {
  CHECK(rel_close(static_t(1 << 20, 16, 0.01), kStaticT20));
  CHECK(rel_close(static_t(1 << 20, 16, 0.01),
                  static_cast<double>(highprec::horizon(1048576.0L, 16, 0.01L))));

  const double c = std::sqrt(2.0) + 2.0 / 3.0;
  SUBCASE("boundary threshold collapses to zero") {
    const double boundary = c * c * 16 * std::log(16.0 / 0.01);
    CHECK(static_t(boundary, 16, 0.01) <= 1e-6 * boundary);
    CHECK(static_t(boundary / 2, 16, 0.01) == 0.0);  // below the boundary, clamped
  }
  SUBCASE("above the switching constant the horizon keeps most of N") {
    std::mt19937_64 gen(12);
    for (int i = 0; i < 100; ++i) {
      const auto k = static_cast<std::uint32_t>(2 + uniform_below(gen, 128));
      const double delta = 0.001 + uniform_unit(gen) * 0.2;
      const double floor_n = 2.0 * c * c * k * std::log(k / delta);
      const double n = floor_n * (1.0 + uniform_unit(gen) * 50.0);
      CHECK(static_t(n, k, delta) >= n * (1.0 - 1.0 / std::sqrt(2.0)) - 1e-6 * n);
    }
  }
}

TEST_CASE("slack sum stays within the threshold at the chosen horizon") {
  SUBCASE("uniform distribution, default experiment point") {
    const double t = static_t(1 << 20, 16, 0.01);
    const double f = slack_sum_check(ProbVector::uniform(16), t, 16, 0.01);
    CHECK(f > t);
    CHECK(f <= static_cast<double>(1 << 20));
  }
  SUBCASE("single player collapse") {
    CHECK(rel_close(slack_sum_check(ProbVector({1.0}), 500.0, 1, 0.01),
                    500.0 + (2.0 / 3.0) * std::log(1.0 / 0.01)));
  }
  SUBCASE("random distributions above the switching constant") {
    std::mt19937_64 gen(13);
    const double beta = kBetaKnown;
    for (int trial = 0; trial < 100; ++trial) {
      const auto k = static_cast<std::uint32_t>(2 + uniform_below(gen, 64));
      const double delta = 0.001 + uniform_unit(gen) * 0.1;
      const double n = beta * k * std::log(k / delta) * (1.0 + uniform_unit(gen) * 100.0);
      std::vector<double> w(k);
      double sum = 0.0;
      for (auto& x : w) {
        x = -std::log(1.0 - uniform_unit(gen));
        sum += x;
      }
      for (auto& x : w) x /= sum;
      const ProbVector mu(w);
      const double t = static_t(n, k, delta);
      REQUIRE(t > 0.0);
      CHECK(slack_sum_check(mu, t, k, delta) <= n + 1e-6 * n);
    }
  }
}

TEST_CASE("learned upper confidence bound") {
  CHECK(rel_close(learned_mu_upper(0.5, 524288, 0.01), kLearnedMuHalf));
  CHECK(rel_close(learned_mu_upper(0.5, 524288, 0.01),
                  static_cast<double>(highprec::mu_upper(0.5L, 524288, 0.01L))));
  CHECK(learned_mu_upper(0.0, 100, 0.01) ==
        doctest::Approx(3.0 * std::log(300.0) / 100.0).epsilon(1e-12));
  CHECK(learned_mu_upper(1.0, 100, 0.01) ==
        doctest::Approx(1.0 + 3.0 * std::log(300.0) / 100.0).epsilon(1e-12));

  SUBCASE("monotone on [0, 1/2] and never below the empirical mean") {
    double prev = learned_mu_upper(0.0, 4096, 0.05);
    for (int i = 1; i <= 50; ++i) {
      const double mb = 0.5 * i / 50.0;
      const double cur = learned_mu_upper(mb, 4096, 0.05);
      CHECK(cur >= prev);
      CHECK(cur >= mb);
      prev = cur;
    }
  }
}

TEST_CASE("learned counter bound") {
  CHECK(rel_close(learned_ub(0.26, 1e6, 16, 0.01), kLearnedUb26));
  CHECK(rel_close(learned_ub(0.26, 1e6, 16, 0.01),
                  static_cast<double>(highprec::learned_ub(0.26L, 1e6L, 16, 0.01L))));
  CHECK(learned_ub(0.0, 1000, 4, 0.01) ==
        doctest::Approx((2.0 / 3.0) * std::log(400.0)).epsilon(1e-12));

  std::mt19937_64 gen(14);
  for (int i = 0; i < 100; ++i) {
    const double mu = uniform_unit(gen);
    const double t = 1.0 + uniform_unit(gen) * 1e6;
    CHECK(learned_ub(mu, t, 16, 0.01) >= bernstein_upper_bound(mu, t, 16, 0.01) - 1e-9);
  }
}

TEST_CASE("deflated horizon") {
  CHECK(learned_t(1 << 20, 1.0, 16, 0.01) == static_t(1 << 20, 16, 0.01));
  CHECK(rel_close(learned_t(1 << 20, 1.05, 16, 0.01), kLearnedT105));
  CHECK(rel_close(learned_t(1 << 20, 1.05, 16, 0.01),
                  static_cast<double>(highprec::learned_horizon(1048576.0L, 1.05L, 16, 0.01L))));
  CHECK(learned_t(1 << 20, 1e12, 16, 0.01) == 0.0);
  CHECK_THROWS_AS(learned_t(1 << 20, 0.5, 16, 0.01), std::domain_error);
}

TEST_CASE("switching thresholds") {
  const auto known = switch_thresholds(4, 0.01, false);
  CHECK(known.straightforward_cutoff == 16);
  CHECK(rel_close(known.cmy_cutoff, kBetaKnown * 4.0 * std::log(400.0)));
  CHECK(rel_close(known.cmy_cutoff,
                  static_cast<double>(highprec::beta_constant(false) * 4.0L *
                                      std::log(400.0L))));

  const auto learned = switch_thresholds(4, 0.01, true);
  CHECK(learned.straightforward_cutoff == 16);
  CHECK(rel_close(learned.cmy_cutoff, kBetaLearned * 4.0 * std::log(400.0)));
  CHECK(learned.cmy_cutoff > known.cmy_cutoff);
}

// Multinomial concentration: the upper bound is exceeded by any counter in at
// most a delta fraction of trials (plus sampling noise).
TEST_CASE("monte carlo counter concentration") {
  constexpr std::uint32_t k = 16;
  constexpr std::uint64_t t = 100000;
  constexpr double delta = 0.01;
  constexpr int trials = 10000;

  std::vector<std::uint64_t> limits(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    limits[i] = static_cast<std::uint64_t>(
        std::ceil(bernstein_upper_bound(1.0 / k, static_cast<double>(t), k, delta)));
  }

  std::mt19937_64 gen(2024);
  int exceeded = 0;
  for (int trial = 0; trial < trials; ++trial) {
    // Multinomial via chained binomials.
    std::uint64_t left = t;
    double mass = 1.0;
    bool hit = false;
    for (std::uint32_t i = 0; i < k && left > 0; ++i) {
      const double p = std::min(1.0, (1.0 / k) / mass);
      std::binomial_distribution<std::uint64_t> cell(left, i + 1 == k ? 1.0 : p);
      const std::uint64_t n_i = cell(gen);
      if (n_i >= limits[i]) hit = true;
      left -= n_i;
      mass -= 1.0 / k;
    }
    if (hit) ++exceeded;
  }
  const double fraction = static_cast<double>(exceeded) / trials;
  CHECK(fraction <= delta + 3.0 * std::sqrt(delta / trials));
}
