#include "selfcheck.hpp"

#include <cmath>
#include <sstream>

#include "bounds.hpp"

namespace dtrack {

namespace {

// Reference values computed with 40-digit decimal arithmetic.
constexpr double kUb0 = 3.994309698071987991246964768190054368;       // (2/3)ln(400)
constexpr double kUbQuarter = 301.394723252865929736861078768325860;  // mu=1/4, t=1000, k=4
constexpr double kLbQuarter = 198.605276747134070263138921231674140;
constexpr double kStaticT20 = 1025425.026309049648310948987980189;    // N=2^20, k=16, d=0.01
constexpr double kLearnedMuHalf = 0.502364921775853129708261206336704;  // w=2^19, d=0.01
constexpr double kLearnedUb26 = 261963.600366854085687475492720891;    // mu_hat=0.26, t=1e6
constexpr double kLearnedT105 = 976050.772609981503167526755273148;    // sigma_hat=1.05
constexpr double kBetaKnown = 8.660125055217142352360058820114750;     // 2(sqrt2+2/3)^2
constexpr double kBetaLearned = 84.37248671849967698707175813237337;   // 2(2sqrt2+2/3+3)^2

bool close(double actual, double expected, double rel = 1e-9) {
  const double scale = std::max({std::fabs(actual), std::fabs(expected), 1e-300});
  return std::fabs(actual - expected) / scale <= rel;
}

void check(std::vector<CheckResult>& out, const std::string& name, double actual,
           double expected, double rel = 1e-9) {
  CheckResult r;
  r.name = name;
  r.passed = close(actual, expected, rel);
  std::ostringstream os;
  os.precision(17);
  os << "got " << actual << ", want " << expected;
  r.detail = os.str();
  out.push_back(std::move(r));
}

void check_true(std::vector<CheckResult>& out, const std::string& name, bool condition,
                const std::string& detail) {
  out.push_back(CheckResult{name, condition, detail});
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  using namespace bounds;
  std::vector<CheckResult> out;

  check(out, "upper bound vanishes to the log term at mu=0",
        bernstein_upper_bound(0.0, 1000, 4, 0.01), kUb0);
  check(out, "upper bound at mu=1 is t plus the log term",
        bernstein_upper_bound(1.0, 1000, 4, 0.01), 1000.0 + kUb0);
  check(out, "upper bound at mu=1/4", bernstein_upper_bound(0.25, 1000, 4, 0.01), kUbQuarter);
  check(out, "lower bound at mu=1/4", bernstein_lower_bound(0.25, 1000, 4, 0.01), kLbQuarter);
  check(out, "lower bound mirrors the upper bound at mu=0",
        bernstein_lower_bound(0.0, 1000, 4, 0.01), -kUb0);

  bool symmetric = true;
  for (double mu : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0}) {
    const double sum = bernstein_upper_bound(mu, 777.0, 8, 0.05) +
                       bernstein_lower_bound(mu, 777.0, 8, 0.05);
    symmetric = symmetric && close(sum, 2.0 * mu * 777.0, 1e-9);
  }
  check_true(out, "upper and lower bounds average to the mean", symmetric,
             "UB + LB == 2*mu*t on a grid of mu");

  check(out, "closed-form horizon at N=2^20, k=16", static_t(1 << 20, 16, 0.01), kStaticT20);
  {
    const double c = std::sqrt(2.0) + 2.0 / 3.0;
    const double boundary = c * c * 16.0 * std::log(16.0 / 0.01);
    check_true(out, "horizon collapses to zero at the boundary threshold",
               std::fabs(static_t(boundary, 16, 0.01)) <= 1e-6 * boundary,
               "t(N = c^2 k ln(k/d)) == 0");
  }
  {
    const double t = static_t(1 << 20, 16, 0.01);
    const double f = slack_sum_check(ProbVector::uniform(16), t, 16, 0.01);
    check_true(out, "summed slacks fit the threshold at the chosen horizon",
               f > t && f <= static_cast<double>(1 << 20), "t < f(t) <= N");
  }
  check(out, "single-player slack sum collapses",
        slack_sum_check(ProbVector({1.0}), 500.0, 1, 0.01),
        500.0 + (2.0 / 3.0) * std::log(1.0 / 0.01));

  check(out, "learned upper confidence at mu_bar=1/2, w=2^19",
        learned_mu_upper(0.5, 524288, 0.01), kLearnedMuHalf);
  check(out, "learned upper confidence at mu_bar=0",
        learned_mu_upper(0.0, 100, 0.01), 3.0 * std::log(300.0) / 100.0);
  check(out, "learned upper confidence at mu_bar=1",
        learned_mu_upper(1.0, 100, 0.01), 1.0 + 3.0 * std::log(300.0) / 100.0);

  check(out, "learned counter bound at mu_hat=0",
        learned_ub(0.0, 1000, 4, 0.01), kUb0);
  check(out, "learned counter bound at mu_hat=0.26", learned_ub(0.26, 1e6, 16, 0.01),
        kLearnedUb26);
  {
    bool dominated = true;
    for (double mu : {0.0, 0.05, 0.3, 0.6, 1.0}) {
      dominated = dominated && learned_ub(mu, 5000, 16, 0.01) >=
                                   bernstein_upper_bound(mu, 5000, 16, 0.01) - 1e-12;
    }
    check_true(out, "learned bound dominates the exact-variance bound", dominated,
               "learned_ub >= bernstein_upper_bound on [0,1]");
  }

  check(out, "deflated horizon equals the plain horizon at sigma_hat=1",
        learned_t(1 << 20, 1.0, 16, 0.01), static_t(1 << 20, 16, 0.01));
  check(out, "deflated horizon at sigma_hat=1.05", learned_t(1 << 20, 1.05, 16, 0.01),
        kLearnedT105);
  check_true(out, "deflated horizon clamps to zero for huge sigma_hat",
             learned_t(1 << 20, 1e9, 16, 0.01) == 0.0, "t -> 0 as sigma_hat grows");

  check(out, "known-distribution switching constant",
        switch_thresholds(16, 0.01, false).cmy_cutoff,
        kBetaKnown * 16.0 * std::log(16.0 / 0.01));
  check(out, "learned switching constant", switch_thresholds(16, 0.01, true).cmy_cutoff,
        kBetaLearned * 16.0 * std::log(16.0 / 0.01));
  check_true(out, "straightforward cutoff is four players' worth",
             switch_thresholds(10, 0.5, false).straightforward_cutoff == 40, "4k");

  return out;
}

}  // namespace dtrack
