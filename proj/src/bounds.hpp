#ifndef DTRACK_BOUNDS_HPP
#define DTRACK_BOUNDS_HPP

#include <cstdint>
#include <vector>

// Concentration-bound kernel: Bernstein upper/lower bounds on a player's
// counter after t multinomial arrivals, the closed-form horizon t that keeps
// the summed slacks within the remaining threshold, and the empirical
// (learned) counterparts. Everything here returns exact reals; integer
// rounding happens in the strategy layer so there is a single rounding site.

namespace dtrack {

// Multinomial cell probabilities; entries in [0,1] and summing to 1
// within 1e-9.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> mu);

  static ProbVector uniform(std::uint32_t player_count);

  const std::vector<double>& values() const { return mu_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(mu_.size()); }
  double operator[](std::size_t i) const { return mu_[i]; }

 private:
  std::vector<double> mu_;
};

// Empirical distribution estimate from w observed items: per-player
// frequency, its empirical-Bernstein upper confidence bound, and the sum of
// those bounds (which exceeds 1 for finite w).
struct LearnedProbVector {
  std::vector<double> mu_bar;
  std::vector<double> mu_hat;
  double sigma_hat = 0.0;
  std::uint64_t sample_count = 0;  // w
};

struct SwitchCutoffs {
  std::uint64_t straightforward_cutoff = 0;  // 4k
  double cmy_cutoff = 0.0;                   // beta * k * ln(k/delta)
};

namespace bounds {

// mu*t + sqrt(2*t*mu*(1-mu)*ln(k/delta)) + (2/3)*ln(k/delta).
// With probability >= 1 - delta/k the counter stays below this after the
// first t arrivals of the round.
double bernstein_upper_bound(double mu, double t, std::uint32_t k, double delta);

// Mirror image of the upper bound; may be negative.
double bernstein_lower_bound(double mu, double t, std::uint32_t k, double delta);

// t = N - (sqrt(2)+2/3)*sqrt(k*N*ln(k/delta)), clamped at 0. The largest
// closed-form horizon for which the summed per-player upper bounds fit in N.
double static_t(double n_threshold, std::uint32_t k, double delta);

// f(t) = sum_i bernstein_upper_bound(mu_i, t, k, delta). Test oracle for the
// correctness constraint f(t) <= N.
double slack_sum_check(const ProbVector& mu, double t, std::uint32_t k, double delta);

// Empirical-Bernstein upper confidence bound on a cell probability from w
// samples: mu_bar + sqrt(2*(mu_bar - mu_bar^2)*ln(3/delta)/w) + 3*ln(3/delta)/w.
// Deliberately not clamped to 1; the sum over players exceeding 1 is expected.
double learned_mu_upper(double mu_bar, std::uint64_t w, double delta);

// Counter upper bound driven by an estimated cell probability. The variance
// factor is mu_hat, not mu_hat*(1-mu_hat), so this is looser than
// bernstein_upper_bound at the same argument.
double learned_ub(double mu_hat, double t, std::uint32_t k, double delta);

// static_t evaluated at the deflated threshold N/sigma_hat.
double learned_t(double n_threshold, double sigma_hat, std::uint32_t k, double delta);

// Framework switching points: below 4k run straightforward; below
// beta*k*ln(k/delta) run CMY. beta = 2*(sqrt(2)+2/3)^2 for the
// known-distribution strategies, 2*(2*sqrt(2)+2/3+3)^2 for the learned ones.
SwitchCutoffs switch_thresholds(std::uint32_t k, double delta, bool learned);

}  // namespace bounds
}  // namespace dtrack

#endif
