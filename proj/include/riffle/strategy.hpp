#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "riffle/binomial.hpp"
#include "riffle/pmf.hpp"
#include "riffle/shuffle_model.hpp"

namespace riffle {

namespace detail {

inline void require_below_half(double p, const char* who) {
  if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument(std::string(who) + ": requires 0 < p < 1/2");
}

inline double first_card_one(int n, double p) { return p + std::pow(1.0 - p, n); }

// max over m = 2..n of P{FC_n = m}, i.e. (1 - p) times the largest mass of
// Bin(n - 1, p) on 1..n-1. Zero for n = 1.
inline double first_card_best_other(int n, double p) {
  if (n < 2) return 0.0;
  const int mode = static_cast<int>(std::floor(n * p));
  double best = 0.0;
  for (int j = mode - 1; j <= mode + 1; ++j) {
    if (j >= 1 && j <= n - 1) best = std::max(best, binomial::pmf(n - 1, j, p));
  }
  if (mode < 1) best = std::max(best, binomial::pmf(n - 1, 1, p));
  return (1.0 - p) * best;
}

// Upper bound on the scan for the last deck size where a non-1 guess wins.
inline constexpr std::int64_t kThresholdScanLimit = 50'000'000;

}  // namespace detail

/// Largest deck size for which P{FC_n = 1} = p + (1-p)^n stays >= 1/2.
inline int threshold_n0(double p) {
  detail::require_below_half(p, "threshold_n0");
  int n0 = static_cast<int>(std::floor(std::log(0.5 - p) / std::log(1.0 - p)));
  // Guard the floor against rounding right at an integer crossing.
  while (n0 > 0 && detail::first_card_one(n0, p) < 0.5) --n0;
  while (detail::first_card_one(n0 + 1, p) >= 0.5) ++n0;
  return n0;
}

inline int kappa(int n, double p) {
  if (n < 1) throw std::invalid_argument("kappa: n must be >= 1");
  return 1 + static_cast<int>(std::floor(n * p));
}

/// True when guessing card 1 first is at least as good as any other first
/// guess. Always true for p >= 1/2.
inline bool event_A(int n, double p) {
  if (n < 1) throw std::invalid_argument("event_A: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("event_A: p must lie in (0, 1)");
  if (p >= 0.5) return true;
  return detail::first_card_best_other(n, p) <= detail::first_card_one(n, p);
}

/// Last deck size at which the first guess is not card 1 (n0 if there is
/// none). Beyond the returned value card 1 is the first guess for every n.
///
/// The scan stops at the first N with (1-p) max_k P{Bin(N-1,p)=k} < p. The
/// binomial mode mass is non-increasing in the number of trials and
/// P{FC_n = 1} > p, so no n >= N can prefer another card.
inline int threshold_n1(double p) {
  detail::require_below_half(p, "threshold_n1");
  const int n0 = threshold_n0(p);
  int last_other = n0;
  for (std::int64_t n = n0 + 1;; ++n) {
    if (n > detail::kThresholdScanLimit) throw guard_error("threshold_n1: scan limit exceeded");
    const int ni = static_cast<int>(n);
    if (!event_A(ni, p)) last_other = ni;
    if ((1.0 - p) * binomial::mode_mass(ni - 1, p) < p) break;
  }
  return last_other;
}

inline char two_color_guess(int remaining_a, int remaining_b) {
  if (remaining_a < 0 || remaining_b < 0 || remaining_a + remaining_b < 1) {
    throw std::invalid_argument("two_color_guess: need at least one remaining card");
  }
  return remaining_a >= remaining_b ? 'a' : 'b';
}

/// First-guess schedule at a fixed p.
///
/// Rows are tabulated for 1 <= n <= n_max; queries beyond n_max are answered
/// by direct evaluation, so the table can drive decks of any size.
class StrategyTable {
 public:
  StrategyTable(double p, int n_max) : p_(p), n_max_(n_max) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("StrategyTable: p must lie in (0, 1)");
    if (n_max < 1) throw std::invalid_argument("StrategyTable: n_max must be >= 1");
    if (p < 0.5) {
      n0_ = threshold_n0(p);
      n1_ = threshold_n1(p);
    }
    a_.reserve(static_cast<std::size_t>(n_max));
    guess_.reserve(static_cast<std::size_t>(n_max));
    kappa_.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
      a_.push_back(event_A(n, p));
      kappa_.push_back(riffle::kappa(n, p));
      guess_.push_back(a_.back() ? 1 : kappa_.back());
    }
    if (n1_) {
      // Count switches of A_n up to n1 + 1: a single true -> false -> true
      // pattern gives 2. Anything more means the crossing is not monotone.
      bool prev = true;
      for (int n = 1; n <= *n1_ + 1; ++n) {
        const bool cur = event_A(n, p);
        if (cur != prev) ++crossings_;
        prev = cur;
      }
    }
  }

  double p() const { return p_; }
  int n_max() const { return n_max_; }
  std::optional<int> n0() const { return n0_; }
  std::optional<int> n1() const { return n1_; }

  // Number of times A_n changes value along n = 1..n1+1 (0 or 2 when the
  // crossing is monotone).
  int crossings() const { return crossings_; }
  bool monotone_crossing() const { return crossings_ <= 2; }

  bool a_indicator_for(int n) const {
    if (n < 1) throw std::invalid_argument("StrategyTable: n must be >= 1");
    return n <= n_max_ ? a_[static_cast<std::size_t>(n - 1)] : event_A(n, p_);
  }

  int kappa_for(int n) const {
    if (n < 1) throw std::invalid_argument("StrategyTable: n must be >= 1");
    return n <= n_max_ ? kappa_[static_cast<std::size_t>(n - 1)] : riffle::kappa(n, p_);
  }

  // Relative label (1 = smallest remaining card) of the first guess at size n.
  int first_guess_for(int n) const {
    if (n < 1) throw std::invalid_argument("StrategyTable: n must be >= 1");
    if (n <= n_max_) return guess_[static_cast<std::size_t>(n - 1)];
    return event_A(n, p_) ? 1 : riffle::kappa(n, p_);
  }

  bool first_card_at_least_half(int n) const { return detail::first_card_one(n, p_) >= 0.5; }

 private:
  double p_;
  int n_max_;
  std::optional<int> n0_;
  std::optional<int> n1_;
  int crossings_ = 0;
  std::vector<bool> a_;
  std::vector<int> guess_;
  std::vector<int> kappa_;
};

inline StrategyTable build_strategy_table(double p, int n_max) { return StrategyTable(p, n_max); }

/// Sequential guesser for one deck of size n under a StrategyTable.
///
/// While only successive minima have been seen the deck left is an
/// order-isomorphic riffle of the remaining size and the table's first guess
/// is used. The first card above the current minimum reveals the cut; from
/// then on the two runs are tracked and the head of the longer one is
/// guessed (the lower run on ties).
class Guesser {
 public:
  Guesser(const StrategyTable& table, int n)
      : table_(&table), n_(n), seen_(static_cast<std::size_t>(n) + 2, false) {
    if (n < 1) throw std::invalid_argument("Guesser: n must be >= 1");
  }

  bool done() const { return observed_ == n_; }
  bool cut_known() const { return cut_known_; }

  int next_guess() const {
    if (done()) throw std::logic_error("Guesser: deck exhausted");
    if (!cut_known_) return low_ + table_->first_guess_for(n_ - observed_) - 1;
    return two_color_guess(left_a_, left_b_) == 'a' ? head_a_ : head_b_;
  }

  void observe(int card) {
    if (done()) throw std::logic_error("Guesser: deck exhausted");
    if (card < 1 || card > n_ || seen_[static_cast<std::size_t>(card)]) {
      throw std::invalid_argument("Guesser: card out of range or already seen");
    }
    seen_[static_cast<std::size_t>(card)] = true;
    ++observed_;
    if (!cut_known_) {
      if (card == low_) {
        ++low_;
        return;
      }
      cut_known_ = true;
      head_a_ = low_;
      end_a_ = card - 1;
      head_b_ = card + 1;
      end_b_ = n_;
      left_a_ = end_a_ - head_a_ + 1;
      left_b_ = end_b_ - head_b_ + 1;
      return;
    }
    if (card <= end_a_) {
      --left_a_;
      while (head_a_ <= end_a_ && seen_[static_cast<std::size_t>(head_a_)]) ++head_a_;
    } else {
      --left_b_;
      while (head_b_ <= end_b_ && seen_[static_cast<std::size_t>(head_b_)]) ++head_b_;
    }
  }

 private:
  const StrategyTable* table_;
  int n_;
  int observed_ = 0;
  int low_ = 1;
  bool cut_known_ = false;
  int head_a_ = 0, end_a_ = 0, head_b_ = 0, end_b_ = 0;
  int left_a_ = 0, left_b_ = 0;
  std::vector<bool> seen_;
};

struct GuessTranscript {
  std::vector<int> guesses;
  std::vector<bool> outcomes;
  int correct_count = 0;
};

inline GuessTranscript play_deck(const Deck& deck, const StrategyTable& table) {
  const int n = static_cast<int>(deck.size());
  Guesser guesser(table, n);
  GuessTranscript t;
  t.guesses.reserve(deck.size());
  t.outcomes.reserve(deck.size());
  for (int card : deck.cards()) {
    const int g = guesser.next_guess();
    t.guesses.push_back(g);
    t.outcomes.push_back(g == card);
    if (g == card) ++t.correct_count;
    guesser.observe(card);
  }
  return t;
}

inline GuessTranscript play_deck(const Deck& deck, double p) {
  return play_deck(deck, StrategyTable(p, static_cast<int>(deck.size())));
}

}  // namespace riffle
