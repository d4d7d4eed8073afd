#ifndef DTRACK_TESTS_HIGHPREC_HPP
#define DTRACK_TESTS_HIGHPREC_HPP

// Independent 80-bit evaluations of the bound formulas, used to cross-check
// the double-precision implementations. Kept free of any library headers.

#include <cmath>
#include <cstdint>

namespace highprec {

inline long double log_kd(unsigned k, long double delta) {
  return std::log(static_cast<long double>(k) / delta);
}

inline long double bernstein_ub(long double mu, long double t, unsigned k, long double delta) {
  const long double L = log_kd(k, delta);
  return mu * t + std::sqrt(2.0L * t * mu * (1.0L - mu) * L) + (2.0L / 3.0L) * L;
}

inline long double bernstein_lb(long double mu, long double t, unsigned k, long double delta) {
  const long double L = log_kd(k, delta);
  return mu * t - std::sqrt(2.0L * t * mu * (1.0L - mu) * L) - (2.0L / 3.0L) * L;
}

inline long double horizon(long double n, unsigned k, long double delta) {
  const long double c = std::sqrt(2.0L) + 2.0L / 3.0L;
  const long double t = n - c * std::sqrt(static_cast<long double>(k) * n * log_kd(k, delta));
  return t > 0.0L ? t : 0.0L;
}

inline long double mu_upper(long double mu_bar, std::uint64_t w, long double delta) {
  const long double L = std::log(3.0L / delta);
  const long double wd = static_cast<long double>(w);
  return mu_bar + std::sqrt(2.0L * (mu_bar - mu_bar * mu_bar) * L / wd) + 3.0L * L / wd;
}

inline long double learned_ub(long double mu_hat, long double t, unsigned k, long double delta) {
  const long double L = log_kd(k, delta);
  return mu_hat * t + std::sqrt(2.0L * t * mu_hat * L) + (2.0L / 3.0L) * L;
}

inline long double learned_horizon(long double n, long double sigma_hat, unsigned k,
                                   long double delta) {
  return horizon(n / sigma_hat, k, delta);
}

inline long double beta_constant(bool learned) {
  const long double b = learned ? 2.0L * std::sqrt(2.0L) + 2.0L / 3.0L + 3.0L
                                : std::sqrt(2.0L) + 2.0L / 3.0L;
  return 2.0L * b * b;
}

}  // namespace highprec

#endif
