#include "bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dtrack {

namespace {

constexpr double kSumTolerance = 1e-9;

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

void require_players(std::uint32_t k) {
  if (k < 1) throw std::domain_error("player count must be >= 1");
}

double log_k_over_delta(std::uint32_t k, double delta) {
  require_players(k);
  require_delta(delta);
  return std::log(static_cast<double>(k) / delta);
}

}  // namespace

ProbVector::ProbVector(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) throw std::invalid_argument("probability vector must be nonempty");
  double sum = 0.0;
  for (double p : mu_) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("probability entry outside [0, 1]: " + std::to_string(p));
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
}

ProbVector ProbVector::uniform(std::uint32_t player_count) {
  if (player_count < 1) throw std::invalid_argument("player count must be >= 1");
  return ProbVector(std::vector<double>(player_count, 1.0 / player_count));
}

namespace bounds {

double bernstein_upper_bound(double mu, double t, std::uint32_t k, double delta) {
  const double lkd = log_k_over_delta(k, delta);
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("mu must lie in [0, 1]");
  if (!(t > 0.0)) throw std::domain_error("t must be positive");
  return mu * t + std::sqrt(2.0 * t * mu * (1.0 - mu) * lkd) + (2.0 / 3.0) * lkd;
}

double bernstein_lower_bound(double mu, double t, std::uint32_t k, double delta) {
  const double lkd = log_k_over_delta(k, delta);
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::domain_error("mu must lie in [0, 1]");
  if (!(t > 0.0)) throw std::domain_error("t must be positive");
  return mu * t - std::sqrt(2.0 * t * mu * (1.0 - mu) * lkd) - (2.0 / 3.0) * lkd;
}

double static_t(double n_threshold, std::uint32_t k, double delta) {
  const double lkd = log_k_over_delta(k, delta);
  if (!(n_threshold >= 1.0)) throw std::domain_error("threshold must be >= 1");
  const double c = std::sqrt(2.0) + 2.0 / 3.0;
  const double t = n_threshold - c * std::sqrt(static_cast<double>(k) * n_threshold * lkd);
  // t = 0 is the "horizon collapsed" signal; callers fall back to a CMY round.
  return t > 0.0 ? t : 0.0;
}

double slack_sum_check(const ProbVector& mu, double t, std::uint32_t k, double delta) {
  double sum = 0.0;
  for (double p : mu.values()) sum += bernstein_upper_bound(p, t, k, delta);
  return sum;
}

double learned_mu_upper(double mu_bar, std::uint64_t w, double delta) {
  require_delta(delta);
  if (!(mu_bar >= 0.0 && mu_bar <= 1.0)) throw std::domain_error("mu_bar must lie in [0, 1]");
  if (w < 1) throw std::domain_error("sample count must be >= 1");
  const double l3d = std::log(3.0 / delta);
  const double wd = static_cast<double>(w);
  const double variance = mu_bar - mu_bar * mu_bar;
  return mu_bar + std::sqrt(2.0 * variance * l3d / wd) + 3.0 * l3d / wd;
}

double learned_ub(double mu_hat, double t, std::uint32_t k, double delta) {
  const double lkd = log_k_over_delta(k, delta);
  if (!(mu_hat >= 0.0)) throw std::domain_error("mu_hat must be nonnegative");
  if (!(t > 0.0)) throw std::domain_error("t must be positive");
  return mu_hat * t + std::sqrt(2.0 * t * mu_hat * lkd) + (2.0 / 3.0) * lkd;
}

double learned_t(double n_threshold, double sigma_hat, std::uint32_t k, double delta) {
  const double lkd = log_k_over_delta(k, delta);
  if (!(n_threshold >= 1.0)) throw std::domain_error("threshold must be >= 1");
  if (!(sigma_hat >= 1.0 - kSumTolerance)) {
    throw std::domain_error("sigma_hat must be >= 1, got " + std::to_string(sigma_hat));
  }
  const double deflated = n_threshold / sigma_hat;
  const double c = std::sqrt(2.0) + 2.0 / 3.0;
  const double t = deflated - c * std::sqrt(static_cast<double>(k) * deflated * lkd);
  return t > 0.0 ? t : 0.0;
}

SwitchCutoffs switch_thresholds(std::uint32_t k, double delta, bool learned) {
  const double lkd = log_k_over_delta(k, delta);
  const double root2 = std::sqrt(2.0);
  const double base = learned ? 2.0 * root2 + 2.0 / 3.0 + 3.0 : root2 + 2.0 / 3.0;
  const double beta = 2.0 * base * base;
  return SwitchCutoffs{4ULL * k, beta * static_cast<double>(k) * lkd};
}

}  // namespace bounds
}  // namespace dtrack
