#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace riffle {

// Raised when a request exceeds one of the size guards (enumeration, DP or
// scan limits). Distinct from std::invalid_argument so callers can tell a bad
// input from a job that is merely too large.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite discrete law on the integers.
///
/// `masses()[i]` is the probability of the value `offset() + i`. Interior
/// zeros are allowed; the masses must be nonnegative and sum to one within
/// `kNormTolerance`.
class Pmf {
 public:
  static constexpr double kNormTolerance = 1e-9;

  Pmf(std::int64_t offset, std::vector<double> masses)
      : offset_(offset), masses_(std::move(masses)) {
    if (masses_.empty()) throw std::invalid_argument("Pmf: empty support");
    double total = 0.0;
    for (double m : masses_) {
      if (!(m >= 0.0)) throw std::invalid_argument("Pmf: negative or NaN mass");
      total += m;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
      throw std::invalid_argument("Pmf: masses sum to " + std::to_string(total));
    }
  }

  static Pmf unit(std::int64_t value) { return Pmf(value, {1.0}); }

  // Empirical law from a histogram of 64-bit counts.
  static Pmf from_counts(std::int64_t offset, std::span<const std::uint64_t> counts) {
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total == 0) throw std::invalid_argument("Pmf::from_counts: no observations");
    std::vector<double> masses(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      masses[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return Pmf(offset, std::move(masses));
  }

  std::int64_t offset() const { return offset_; }
  std::int64_t min_value() const { return offset_; }
  std::int64_t max_value() const { return offset_ + static_cast<std::int64_t>(masses_.size()) - 1; }
  std::size_t size() const { return masses_.size(); }
  const std::vector<double>& masses() const { return masses_; }

  // P{X = value}; zero outside the stored range.
  double operator[](std::int64_t value) const {
    const std::int64_t i = value - offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(masses_.size())) return 0.0;
    return masses_[static_cast<std::size_t>(i)];
  }

  // P{X <= value}.
  double cdf(std::int64_t value) const {
    double acc = 0.0;
    for (std::int64_t k = offset_; k <= value && k <= max_value(); ++k) acc += (*this)[k];
    return acc;
  }

  double moment(int order) const {
    if (order < 1) throw std::invalid_argument("Pmf::moment: order must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < masses_.size(); ++i) {
      acc += std::pow(static_cast<double>(offset_ + static_cast<std::int64_t>(i)), order) * masses_[i];
    }
    return acc;
  }

  double mean() const { return moment(1); }

  // Law of X + delta.
  Pmf shifted(std::int64_t delta) const { return Pmf(offset_ + delta, masses_); }

  // Law of c - X.
  Pmf reflected(std::int64_t c) const {
    std::vector<double> rev(masses_.rbegin(), masses_.rend());
    return Pmf(c - max_value(), std::move(rev));
  }

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::int64_t offset_;
  std::vector<double> masses_;
};

inline double moments(const Pmf& pmf, int order) { return pmf.moment(order); }

}  // namespace riffle
