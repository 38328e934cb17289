#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "riffle/binomial.hpp"
#include "riffle/pmf.hpp"

namespace riffle {

/// Deck size and cut bias of one asymmetric riffle shuffle.
class ShuffleParams {
 public:
  ShuffleParams(int n, double p) : n_(n), p_(p) {
    if (n < 1) throw std::invalid_argument("ShuffleParams: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("ShuffleParams: p must lie in (0, 1)");
  }

  int n() const { return n_; }
  double p() const { return p_; }

 private:
  int n_;
  double p_;
};

enum class Letter : std::uint8_t { a, b };

// A shuffle word over {a, b}. Letter a marks a card from the top packet.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word parse(std::string_view text) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char c : text) {
      if (c == 'a') letters.push_back(Letter::a);
      else if (c == 'b') letters.push_back(Letter::b);
      else throw std::invalid_argument("Word::parse: letters must be 'a' or 'b'");
    }
    return Word(std::move(letters));
  }

  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  int count_a() const { return static_cast<int>(std::count(letters_.begin(), letters_.end(), Letter::a)); }

  std::string to_string() const {
    std::string s;
    s.reserve(letters_.size());
    for (Letter l : letters_) s.push_back(l == Letter::a ? 'a' : 'b');
    return s;
  }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// An ordering of the labels 1..n, top card first.
class Deck {
 public:
  explicit Deck(std::vector<int> cards) : cards_(std::move(cards)) {
    std::vector<bool> seen(cards_.size() + 1, false);
    for (int c : cards_) {
      if (c < 1 || c > static_cast<int>(cards_.size()) || seen[static_cast<std::size_t>(c)]) {
        throw std::invalid_argument("Deck: cards must be a permutation of 1..n");
      }
      seen[static_cast<std::size_t>(c)] = true;
    }
  }

  static Deck identity(int n) {
    std::vector<int> cards(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cards[static_cast<std::size_t>(i)] = i + 1;
    return Deck(std::move(cards));
  }

  std::size_t size() const { return cards_.size(); }
  int operator[](std::size_t i) const { return cards_[i]; }
  const std::vector<int>& cards() const { return cards_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < cards_.size(); ++i) {
      if (cards_[i] != static_cast<int>(i) + 1) return false;
    }
    return true;
  }

  friend bool operator==(const Deck&, const Deck&) = default;
  friend auto operator<=>(const Deck& x, const Deck& y) { return x.cards_ <=> y.cards_; }

 private:
  std::vector<int> cards_;
};

inline Pmf cut_pmf(const ShuffleParams& params) {
  return Pmf(0, binomial::pmf_row(params.n(), params.p()));
}

template <std::uniform_random_bit_generator Rng>
Word sample_word(const ShuffleParams& params, Rng& rng) {
  std::bernoulli_distribution is_a(params.p());
  std::vector<Letter> letters(static_cast<std::size_t>(params.n()));
  for (auto& l : letters) l = is_a(rng) ? Letter::a : Letter::b;
  return Word(std::move(letters));
}

// With k letters a, the a-positions get 1..k in order and the b-positions
// get k+1..n in order.
inline Deck word_to_deck(const Word& word) {
  int next_a = 1;
  int next_b = word.count_a() + 1;
  std::vector<int> cards;
  cards.reserve(word.size());
  for (Letter l : word.letters()) cards.push_back(l == Letter::a ? next_a++ : next_b++);
  return Deck(std::move(cards));
}

// Binomial cut, then cards are dropped from the bottoms of the two packets
// with probability proportional to the packet sizes.
template <std::uniform_random_bit_generator Rng>
Deck sample_deck_cut_interleave(const ShuffleParams& params, Rng& rng) {
  const int n = params.n();
  const int cut = std::binomial_distribution<int>(n, params.p())(rng);
  int bottom_top = cut;   // bottom card of packet 1..cut
  int bottom_rest = n;    // bottom card of packet cut+1..n
  std::vector<int> cards(static_cast<std::size_t>(n));
  for (int pos = n - 1; pos >= 0; --pos) {
    const int m1 = bottom_top;
    const int m2 = bottom_rest - cut;
    const bool from_top = std::uniform_int_distribution<int>(1, m1 + m2)(rng) <= m1;
    cards[static_cast<std::size_t>(pos)] = from_top ? bottom_top-- : bottom_rest--;
  }
  return Deck(std::move(cards));
}

inline double identity_probability(const ShuffleParams& params) {
  const int n = params.n();
  const double p = params.p();
  const double q = 1.0 - p;
  if (std::abs(p - 0.5) < 1e-6) {
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) sum += std::pow(p, k) * std::pow(q, n - k);
    return sum;
  }
  return (std::pow(q, n + 1) - std::pow(p, n + 1)) / (1.0 - 2.0 * p);
}

/// Cut positions k in 1..n-1 for which the deck splits into the increasing
/// runs 1..k and k+1..n. Empty for non-riffle decks; the identity admits all.
inline std::vector<int> valid_cuts(const Deck& deck) {
  const int n = static_cast<int>(deck.size());
  std::vector<int> pos(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(deck[static_cast<std::size_t>(i)])] = i;
  // prefix_ok[k]: labels 1..k appear in increasing order.
  std::vector<bool> prefix_ok(static_cast<std::size_t>(n) + 1, true);
  for (int k = 2; k <= n; ++k) {
    prefix_ok[static_cast<std::size_t>(k)] =
        prefix_ok[static_cast<std::size_t>(k - 1)] && pos[static_cast<std::size_t>(k - 1)] < pos[static_cast<std::size_t>(k)];
  }
  // suffix_ok[k]: labels k+1..n appear in increasing order.
  std::vector<bool> suffix_ok(static_cast<std::size_t>(n) + 1, true);
  for (int k = n - 2; k >= 0; --k) {
    suffix_ok[static_cast<std::size_t>(k)] =
        suffix_ok[static_cast<std::size_t>(k + 1)] && pos[static_cast<std::size_t>(k + 1)] < pos[static_cast<std::size_t>(k + 2)];
  }
  std::vector<int> cuts;
  for (int k = 1; k <= n - 1; ++k) {
    if (prefix_ok[static_cast<std::size_t>(k)] && suffix_ok[static_cast<std::size_t>(k)]) cuts.push_back(k);
  }
  return cuts;
}

inline double riffle_measure(const Deck& deck, double p) {
  const int n = static_cast<int>(deck.size());
  if (deck.is_identity()) return identity_probability(ShuffleParams(n, p));
  const auto cuts = valid_cuts(deck);
  if (cuts.empty()) return 0.0;
  if (cuts.size() != 1) throw std::logic_error("riffle_measure: non-identity deck with several cuts");
  const int k = cuts.front();
  return std::pow(p, k) * std::pow(1.0 - p, n - k);
}

// P{first card = m}, m = 1..n.
inline Pmf first_card_pmf(const ShuffleParams& params) {
  const int n = params.n();
  const double p = params.p();
  std::vector<double> masses(static_cast<std::size_t>(n));
  masses[0] = p + std::pow(1.0 - p, n);
  for (int m = 2; m <= n; ++m) {
    masses[static_cast<std::size_t>(m - 1)] = (1.0 - p) * binomial::pmf(n - 1, m - 1, p);
  }
  return Pmf(1, std::move(masses));
}

}  // namespace riffle
