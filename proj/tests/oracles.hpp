#pragma once

// Test-side reference computations. Nothing here calls into the library's
// strategy or recursion code.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;

// Deck produced by the shuffle word encoded in the low n bits of `mask`
// (bit i set: letter a at position i).
inline Perm deck_of_mask(int n, std::uint32_t mask) {
  int k = 0;
  for (int i = 0; i < n; ++i) k += (mask >> i) & 1U;
  Perm deck;
  int a = 1, b = k + 1;
  for (int i = 0; i < n; ++i) deck.push_back(((mask >> i) & 1U) ? a++ : b++);
  return deck;
}

inline double word_weight(int n, std::uint32_t mask, double p) {
  int k = 0;
  for (int i = 0; i < n; ++i) k += (mask >> i) & 1U;
  return std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// Rif_p as a map deck -> probability, by summing over all 2^n words.
inline std::map<Perm, double> riffle_law(int n, double p) {
  std::map<Perm, double> law;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) law[deck_of_mask(n, mask)] += word_weight(n, mask, p);
  return law;
}

inline double first_card_one(int n, double p) { return p + std::pow(1.0 - p, n); }

inline double first_card_mass(int n, int m, double p) {
  if (m == 1) return first_card_one(n, p);
  double c = 1.0;
  for (int i = 1; i <= m - 1; ++i) c = c * (n - m + i) / i;  // binom(n-1, m-1)
  return (1.0 - p) * c * std::pow(p, m - 1) * std::pow(1.0 - p, n - m);
}

// Best first guess by direct comparison of all first-card masses. Ties go to
// card 1 first, then to 1 + floor(n p).
inline int first_guess(int n, double p) {
  double best = first_card_one(n, p);
  int guess = 1;
  for (int m = 2; m <= n; ++m) {
    const double v = first_card_mass(n, m, p);
    if (v > best) {
      best = v;
      guess = m;
    }
  }
  if (guess != 1) guess = 1 + static_cast<int>(std::floor(n * p));
  return guess;
}

// Plays the strategy on a deck using only the card values seen so far.
inline int play(const Perm& deck, double p) {
  const int n = static_cast<int>(deck.size());
  int correct = 0;
  int low = 1;
  std::size_t i = 0;
  for (; i < deck.size(); ++i) {
    const int guess = low + first_guess(n - static_cast<int>(i), p) - 1;
    correct += guess == deck[i];
    if (deck[i] != low) break;
    ++low;
  }
  if (i == deck.size()) return correct;
  // Cut revealed: the lower run is low..deck[i]-1, the upper run deck[i]+1..n.
  int a = deck[i] - low;
  int b = n - deck[i];
  int next_a = low, next_b = deck[i] + 1;
  for (++i; i < deck.size(); ++i) {
    const int guess = a >= b ? next_a : next_b;
    correct += guess == deck[i];
    if (deck[i] == next_a) {
      ++next_a;
      --a;
    } else {
      ++next_b;
      --b;
    }
  }
  return correct;
}

// Law of the strategy's score by enumerating all words.
inline std::vector<double> x_law(int n, double p) {
  std::vector<double> law(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    law[static_cast<std::size_t>(play(deck_of_mask(n, mask), p))] += word_weight(n, mask, p);
  }
  return law;
}

// Largest achievable expected score over all strategies. With complete
// feedback the guess does not change what is observed, so the optimum picks
// the most likely next card given the history, summed over histories.
inline double optimal_expected_score(int n, double p) {
  const auto law = riffle_law(n, p);
  std::vector<std::pair<Perm, double>> decks(law.begin(), law.end());
  double total = 0.0;
  // Histories are prefixes; decks sorted lexicographically share prefixes in
  // contiguous blocks.
  for (int t = 0; t < n; ++t) {
    std::size_t i = 0;
    while (i < decks.size()) {
      std::size_t j = i;
      std::map<int, double> next;
      while (j < decks.size() && std::equal(decks[i].first.begin(), decks[i].first.begin() + t, decks[j].first.begin())) {
        next[decks[j].first[static_cast<std::size_t>(t)]] += decks[j].second;
        ++j;
      }
      double best = 0.0;
      for (const auto& [card, w] : next) best = std::max(best, w);
      total += best;
      i = j;
    }
  }
  return total;
}

// Law of the majority game's score with m1 a's and m2 b's, by enumerating
// all arrangements.
inline std::vector<double> two_color_law(int m1, int m2) {
  const int s = m1 + m2;
  std::vector<double> law(static_cast<std::size_t>(s) + 1, 0.0);
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1U << s); ++mask) {
    if (std::popcount(mask) != m1) continue;
    int a = m1, b = m2, correct = 0;
    for (int i = 0; i < s; ++i) {
      const bool is_a = (mask >> i) & 1U;
      const bool guess_a = a >= b;
      correct += guess_a == is_a;
      (is_a ? a : b) -= 1;
    }
    law[static_cast<std::size_t>(correct)] += 1.0;
    ++count;
  }
  for (auto& v : law) v /= static_cast<double>(count);
  return law;
}

}  // namespace oracle
