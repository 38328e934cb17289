#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace riffle::binomial {

// Above this many trials the pmf is evaluated in log space via lgamma. Below
// it the coefficient is an exact integer and results are bit-stable.
inline constexpr int kDirectLimit = 50;

inline double coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= kDirectLimit) {
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return static_cast<double>(c);
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// P{Bin(n, p) = k}.
inline double pmf(int n, int k, double p) {
  if (n < 0) throw std::invalid_argument("binomial::pmf: negative trial count");
  if (k < 0 || k > n) return 0.0;
  const double q = 1.0 - p;
  if (n <= kDirectLimit) return coefficient(n, k) * std::pow(p, k) * std::pow(q, n - k);
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (q == 0.0) return k == n ? 1.0 : 0.0;
  const double log_mass = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                          k * std::log(p) + (n - k) * std::log1p(-p);
  return std::exp(log_mass);
}

inline std::vector<double> pmf_row(int n, double p) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) row[static_cast<std::size_t>(k)] = pmf(n, k, p);
  return row;
}

// max_k P{Bin(n, p) = k}. The mode is floor((n + 1) p); neighbours are
// checked as well so rounding in (n + 1) p cannot pick the wrong side.
inline double mode_mass(int n, double p) {
  const int mode = static_cast<int>(std::floor((n + 1) * p));
  double best = 0.0;
  for (int k = mode - 1; k <= mode + 1; ++k) best = std::max(best, pmf(n, k, p));
  return best;
}

}  // namespace riffle::binomial
