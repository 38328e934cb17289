#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "riffle/binomial.hpp"
#include "riffle/pmf.hpp"
#include "riffle/shuffle_model.hpp"
#include "riffle/strategy.hpp"

namespace riffle {

inline constexpr int kTwoColorGuard = 4000;  // m1 + m2 for c_pmf
inline constexpr int kXLawGuard = 5000;      // n for x_pmf
inline constexpr int kBruteForceGuard = 24;  // n for x_pmf_bruteforce

struct TwoColorState {
  int a_remaining = 0;
  int b_remaining = 0;
};

/// Laws of the number of correct guesses still to come in the two-color
/// game, for every state on one anti-diagonal a + b = s.
///
/// The law at (a, b) lives on max(a,b)..a+b and is stored densely from
/// max(a,b). advance() moves from s to s + 1 using
///   L(a,b) = a/(a+b) * L(a-1,b) shifted by [a >= b]
///          + b/(a+b) * L(a,b-1) shifted by [a <  b].
class TwoColorLayers {
 public:
  TwoColorLayers() : layer_{{1.0}} {}

  int total() const { return total_; }

  // Masses of L(a, total() - a) starting at max(a, b).
  const std::vector<double>& law(int a) const { return layer_.at(static_cast<std::size_t>(a)); }

  void advance() {
    const int s = total_ + 1;
    std::vector<std::vector<double>> next(static_cast<std::size_t>(s) + 1);
    for (int a = 0; a <= s; ++a) {
      const int b = s - a;
      const int lo = std::max(a, b);
      auto& out = next[static_cast<std::size_t>(a)];
      out.assign(static_cast<std::size_t>(std::min(a, b)) + 1, 0.0);
      const bool guess_a = a >= b;
      if (a > 0) {
        const auto& src = layer_[static_cast<std::size_t>(a - 1)];
        const int src_lo = std::max(a - 1, b);
        const double w = static_cast<double>(a) / s;
        const int shift = src_lo + (guess_a ? 1 : 0) - lo;
        for (std::size_t i = 0; i < src.size(); ++i) out[i + static_cast<std::size_t>(shift)] += w * src[i];
      }
      if (b > 0) {
        const auto& src = layer_[static_cast<std::size_t>(a)];
        const int src_lo = std::max(a, b - 1);
        const double w = static_cast<double>(b) / s;
        const int shift = src_lo + (guess_a ? 0 : 1) - lo;
        for (std::size_t i = 0; i < src.size(); ++i) out[i + static_cast<std::size_t>(shift)] += w * src[i];
      }
    }
    layer_ = std::move(next);
    total_ = s;
  }

 private:
  int total_ = 0;
  std::vector<std::vector<double>> layer_;
};

/// Exact law of C_{m1,m2}: correct guesses when a uniform arrangement of m1
/// a's and m2 b's is guessed by majority with ties going to a.
inline Pmf c_pmf(int m1, int m2) {
  if (m1 < 0 || m2 < 0) throw std::invalid_argument("c_pmf: counts must be nonnegative");
  if (m1 + m2 > kTwoColorGuard) throw guard_error("c_pmf: m1 + m2 exceeds the DP guard");
  // Forward sweep restricted to the rectangle a <= m1, b <= m2. Row a of
  // `laws` holds L(a, b) for the current b.
  std::vector<std::vector<double>> laws(static_cast<std::size_t>(m1) + 1);
  for (int b = 0; b <= m2; ++b) {
    for (int a = 0; a <= m1; ++a) {
      const int s = a + b;
      const int lo = std::max(a, b);
      std::vector<double> out(static_cast<std::size_t>(std::min(a, b)) + 1, 0.0);
      if (s == 0) {
        out[0] = 1.0;
      } else {
        const bool guess_a = a >= b;
        if (a > 0) {
          const auto& src = laws[static_cast<std::size_t>(a - 1)];  // L(a-1, b), this sweep
          const int shift = std::max(a - 1, b) + (guess_a ? 1 : 0) - lo;
          const double w = static_cast<double>(a) / s;
          for (std::size_t i = 0; i < src.size(); ++i) out[i + static_cast<std::size_t>(shift)] += w * src[i];
        }
        if (b > 0) {
          const auto& src = laws[static_cast<std::size_t>(a)];  // L(a, b-1), previous sweep
          const int shift = std::max(a, b - 1) + (guess_a ? 0 : 1) - lo;
          const double w = static_cast<double>(b) / s;
          for (std::size_t i = 0; i < src.size(); ++i) out[i + static_cast<std::size_t>(shift)] += w * src[i];
        }
      }
      laws[static_cast<std::size_t>(a)] = std::move(out);
    }
  }
  return Pmf(std::max(m1, m2), std::move(laws[static_cast<std::size_t>(m1)]));
}

/// J_n: number of a's among the last n - 1 letters, conditioned to be positive.
inline Pmf truncated_binomial_pmf(int n, double p) {
  if (n < 2) throw std::invalid_argument("truncated_binomial_pmf: n must be >= 2");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("truncated_binomial_pmf: p must lie in (0, 1)");
  const double positive = -std::expm1((n - 1) * std::log1p(-p));  // 1 - (1-p)^(n-1)
  std::vector<double> masses(static_cast<std::size_t>(n - 1));
  for (int j = 1; j <= n - 1; ++j) masses[static_cast<std::size_t>(j - 1)] = binomial::pmf(n - 1, j, p) / positive;
  return Pmf(1, std::move(masses));
}

struct XnLawRequest {
  ShuffleParams params;
  StrategyTable strategy;

  XnLawRequest(ShuffleParams prm, StrategyTable table) : params(prm), strategy(std::move(table)) {
    if (strategy.p() != params.p()) throw std::invalid_argument("XnLawRequest: strategy built for a different p");
  }
  explicit XnLawRequest(ShuffleParams prm) : params(prm), strategy(prm.p(), prm.n()) {}
};

/// Exact laws of X_1, X_2, ... by recursion on the deck size.
///
/// Conditioning on the first shuffle letter W_1 (see the README for the
/// derivation and how it is pinned against exhaustive enumeration):
///   W_1 = a            (prob p):          X_{n-1} + [first guess is 1]
///   W = b^n            (prob (1-p)^n):    the identity deck, which scores the
///                                         number of nu <= n whose first
///                                         guess is 1
///   W_1 = b, J = j >= 1 a's among W_2..W_n:
///                                         C_{j, n-1-j} + [first guess is j+1]
/// When every first guess is 1 the identity term is n.
///
/// Each step costs O(n^2 / 4) for the two-color layer, O(n^3 / 24) overall.
class XLawSequence {
 public:
  explicit XLawSequence(StrategyTable table) : table_(std::move(table)), law_{0.0, 1.0} {}

  double p() const { return table_.p(); }
  int n() const { return n_; }

  // Masses of X_n on 0..n.
  const std::vector<double>& masses() const { return law_; }
  Pmf pmf() const { return Pmf(0, law_); }

  // Law of C_{n-1-J_n, J_n} for the current n (>= 2) on 0..n-1.
  const std::vector<double>& cjn_masses() const { return cjn_; }

  void advance() {
    const int n = n_ + 1;
    if (n > kXLawGuard) throw guard_error("x_pmf: n exceeds the recursion guard");
    while (layers_.total() < n - 1) layers_.advance();
    const double p = table_.p();
    const double q = 1.0 - p;
    const int guess = table_.first_guess_for(n);
    if (guess == 1) ++identity_score_;

    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    const std::size_t shift_a = guess == 1 ? 1 : 0;
    for (std::size_t k = 0; k < law_.size(); ++k) next[k + shift_a] += p * law_[k];
    next[static_cast<std::size_t>(identity_score_)] += std::exp(n * std::log1p(-p));

    cjn_.assign(static_cast<std::size_t>(n), 0.0);
    if (n >= 2) {
      const Pmf jn = truncated_binomial_pmf(n, p);
      const double w_rest = q * -std::expm1((n - 1) * std::log1p(-p));
      for (int j = 1; j <= n - 1; ++j) {
        const double wj = jn[j];
        if (wj == 0.0) continue;
        const auto& c = layers_.law(j);  // C_{j, n-1-j}
        const std::size_t lo = static_cast<std::size_t>(std::max(j, n - 1 - j));
        const std::size_t bonus = guess == j + 1 ? 1 : 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
          cjn_[lo + i] += wj * c[i];
          next[lo + i + bonus] += w_rest * wj * c[i];
        }
      }
    } else {
      cjn_.clear();
    }
    law_ = std::move(next);
    n_ = n;
  }

  void advance_to(int n) {
    while (n_ < n) advance();
  }

 private:
  StrategyTable table_;
  int n_ = 1;
  int identity_score_ = 1;
  std::vector<double> law_;  // X_1 = 1
  std::vector<double> cjn_;
  TwoColorLayers layers_;
};

inline Pmf x_pmf(const XnLawRequest& request) {
  const int n = request.params.n();
  if (n > kXLawGuard) throw guard_error("x_pmf: n exceeds the recursion guard");
  XLawSequence seq(request.strategy);
  seq.advance_to(n);
  return seq.pmf();
}

inline Pmf x_pmf(const ShuffleParams& params) { return x_pmf(XnLawRequest(params)); }

// Law of C_{n-1-J_n, J_n}.
inline Pmf cjn_pmf(const ShuffleParams& params) {
  if (params.n() < 2) throw std::invalid_argument("cjn_pmf: n must be >= 2");
  XLawSequence seq(StrategyTable(params.p(), params.n()));
  seq.advance_to(params.n());
  return Pmf(0, seq.cjn_masses());
}

/// Law of X_n by enumerating all 2^n shuffle words, mapping each to its deck
/// and playing it with play_deck.
inline Pmf x_pmf_bruteforce(const ShuffleParams& params, const StrategyTable& strategy) {
  const int n = params.n();
  if (n > kBruteForceGuard) throw guard_error("x_pmf_bruteforce: n exceeds the enumeration guard");
  const double p = params.p();
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) weight[static_cast<std::size_t>(k)] = std::pow(p, k) * std::pow(1.0 - p, n - k);

  std::vector<double> masses(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<Letter> letters(static_cast<std::size_t>(n));
  const std::uint64_t words = std::uint64_t{1} << n;
  for (std::uint64_t w = 0; w < words; ++w) {
    int k = 0;
    for (int i = 0; i < n; ++i) {
      const bool a = (w >> i) & 1U;
      letters[static_cast<std::size_t>(i)] = a ? Letter::a : Letter::b;
      k += a ? 1 : 0;
    }
    const auto t = play_deck(word_to_deck(Word(letters)), strategy);
    masses[static_cast<std::size_t>(t.correct_count)] += weight[static_cast<std::size_t>(k)];
  }
  return Pmf(0, std::move(masses));
}

}  // namespace riffle
