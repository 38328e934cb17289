#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "riffle/binomial.hpp"
#include "riffle/pmf.hpp"
#include "riffle/shuffle_model.hpp"
#include "riffle/strategy.hpp"

namespace riffle {

enum class McEngine {
  automatic,   // deck_play up to kDeckPlayMaxN, decomposed above
  deck_play,   // sample_word -> word_to_deck -> play_deck
  decomposed,  // first-letter decomposition with an exact two-color sampler
};

inline constexpr int kDeckPlayMaxN = 256;

struct McConfig {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t chunk_size = 100'000;
  unsigned workers = 1;
  McEngine engine = McEngine::automatic;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("McConfig: trials must be >= 1");
    if (chunk_size < 1) throw std::invalid_argument("McConfig: chunk_size must be >= 1");
    if (workers < 1) throw std::invalid_argument("McConfig: workers must be >= 1");
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t chunk) {
  return splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632be59bd9b4e019ULL));
}

// Runs `body(rng, trials, histogram)` on every chunk and adds the chunk
// histograms in chunk order.
template <class Body>
std::vector<std::uint64_t> run_chunks(const McConfig& cfg, std::size_t bins, Body body) {
  cfg.validate();
  const std::uint64_t chunks = (cfg.trials + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<std::vector<std::uint64_t>> partial(chunks);
  auto run_one = [&](std::uint64_t i) {
    std::mt19937_64 rng(substream_seed(cfg.seed, i));
    const std::uint64_t count = std::min(cfg.chunk_size, cfg.trials - i * cfg.chunk_size);
    std::vector<std::uint64_t> hist(bins, 0);
    body(rng, count, hist);
    partial[i] = std::move(hist);
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, chunks));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < chunks; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < chunks; i += workers) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> total(bins, 0);
  for (const auto& h : partial) {
    for (std::size_t k = 0; k < bins; ++k) total[k] += h[k];
  }
  return total;
}

inline std::uint64_t fair_coin_sum(std::mt19937_64& rng, std::uint64_t flips) {
  std::uint64_t s = 0;
  while (flips >= 64) {
    s += static_cast<std::uint64_t>(std::popcount(rng()));
    flips -= 64;
  }
  if (flips > 0) s += static_cast<std::uint64_t>(std::popcount(rng() & ((std::uint64_t{1} << flips) - 1)));
  return s;
}

}  // namespace detail

/// Sampler for C_{m1,m2}.
///
/// With a = max, b = min, a > b, M = a + b and Delta = a - b:
///   C = a + Bin(Z, 1/2),
///   P{Z = r} = 2^r (Delta + r) / (M - r) * binom(M - r, a) / binom(M, a),  r = 0..b,
/// where Z counts the tied positions. For a = b the first position is a tie
/// and Z = 1 + Z(a, a - 1). Tie-count laws are cached per composition.
class TwoColorSampler {
 public:
  // Law of Z on 0..min(m1, m2) (a > b) or 1..min + 1 stored from 0.
  static std::vector<double> tie_count_pmf(int m1, int m2) {
    if (m1 < 0 || m2 < 0) throw std::invalid_argument("tie_count_pmf: counts must be nonnegative");
    int a = std::max(m1, m2);
    int b = std::min(m1, m2);
    int extra = 0;
    if (a == b) {
      if (a == 0) return {1.0};
      extra = 1;
      b = a - 1;
    }
    const double m = a + b;
    const double delta = a - b;
    std::vector<double> law(static_cast<std::size_t>(b + extra) + 1, 0.0);
    double cur = delta / m;
    double total = 0.0;
    for (int r = 0; r <= b; ++r) {
      law[static_cast<std::size_t>(r + extra)] = cur;
      total += cur;
      if (r < b) cur *= 2.0 * (delta + r + 1) * (b - r) / ((delta + r) * (m - r - 1));
    }
    for (auto& v : law) v /= total;
    return law;
  }

  std::uint64_t sample(int m1, int m2, std::mt19937_64& rng) {
    const auto& cdf = cdf_for(m1, m2);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto z = static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const std::uint64_t ties = std::min<std::uint64_t>(z, cdf.size() - 1);
    return static_cast<std::uint64_t>(std::max(m1, m2)) + detail::fair_coin_sum(rng, ties);
  }

 private:
  using Key = std::pair<int, int>;

  const std::vector<double>& cdf_for(int m1, int m2) {
    const Key key{std::max(m1, m2), std::min(m1, m2)};
    if (auto it = local_.find(key); it != local_.end()) return *it->second;
    std::shared_ptr<const std::vector<double>> cdf;
    {
      std::lock_guard lock(shared_mutex());
      auto& shared = shared_cache();
      auto it = shared.find(key);
      if (it == shared.end()) {
        auto law = tie_count_pmf(key.first, key.second);
        std::vector<double> c(law.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < law.size(); ++i) c[i] = (acc += law[i]);
        c.back() = 1.0;
        it = shared.emplace(key, std::make_shared<const std::vector<double>>(std::move(c))).first;
      }
      cdf = it->second;
    }
    return *local_.emplace(key, std::move(cdf)).first->second;
  }

  static std::mutex& shared_mutex() {
    static std::mutex m;
    return m;
  }
  static std::map<Key, std::shared_ptr<const std::vector<double>>>& shared_cache() {
    static std::map<Key, std::shared_ptr<const std::vector<double>>> cache;
    return cache;
  }

  std::map<Key, std::shared_ptr<const std::vector<double>>> local_;
};

namespace detail {

// X_n by conditioning on the leading run of a's. With L leading a's the
// deck after them is a riffle of size m = n - L whose first letter is b;
// each consumed a scores when the first guess at that size is 1.
class DecomposedXSampler {
 public:
  DecomposedXSampler(const ShuffleParams& params, const StrategyTable& table)
      : n_(params.n()), p_(params.p()), ones_(static_cast<std::size_t>(n_) + 1, 0), guess_(static_cast<std::size_t>(n_) + 1, 0) {
    for (int v = 1; v <= n_; ++v) {
      guess_[static_cast<std::size_t>(v)] = table.first_guess_for(v);
      ones_[static_cast<std::size_t>(v)] = ones_[static_cast<std::size_t>(v - 1)] + (guess_[static_cast<std::size_t>(v)] == 1 ? 1 : 0);
    }
  }

  std::uint64_t sample(std::mt19937_64& rng, TwoColorSampler& colors) const {
    const auto lead = std::geometric_distribution<std::int64_t>(1.0 - p_)(rng);
    if (lead >= n_) return static_cast<std::uint64_t>(ones_[static_cast<std::size_t>(n_)]);
    const int m = n_ - static_cast<int>(lead);
    std::uint64_t score = static_cast<std::uint64_t>(ones_[static_cast<std::size_t>(n_)] - ones_[static_cast<std::size_t>(m)]);
    const int j = m >= 2 ? std::binomial_distribution<int>(m - 1, p_)(rng) : 0;
    if (j == 0) return score + static_cast<std::uint64_t>(ones_[static_cast<std::size_t>(m)]);
    score += guess_[static_cast<std::size_t>(m)] == j + 1 ? 1 : 0;
    return score + colors.sample(j, m - 1 - j, rng);
  }

 private:
  int n_;
  double p_;
  std::vector<int> ones_;
  std::vector<int> guess_;
};

}  // namespace detail

inline McEngine resolve_engine(McEngine engine, int n) {
  if (engine != McEngine::automatic) return engine;
  return n <= kDeckPlayMaxN ? McEngine::deck_play : McEngine::decomposed;
}

/// Raw counts of X_n over cfg.trials shuffles, indexed 0..n.
inline std::vector<std::uint64_t> simulate_x_counts(const ShuffleParams& params, const StrategyTable& strategy,
                                                    const McConfig& cfg) {
  if (strategy.p() != params.p()) throw std::invalid_argument("simulate_x: strategy built for a different p");
  const int n = params.n();
  const auto bins = static_cast<std::size_t>(n) + 1;
  if (resolve_engine(cfg.engine, n) == McEngine::deck_play) {
    return detail::run_chunks(cfg, bins, [&](std::mt19937_64& rng, std::uint64_t count, std::vector<std::uint64_t>& hist) {
      for (std::uint64_t t = 0; t < count; ++t) {
        const auto tr = play_deck(word_to_deck(sample_word(params, rng)), strategy);
        ++hist[static_cast<std::size_t>(tr.correct_count)];
      }
    });
  }
  const detail::DecomposedXSampler sampler(params, strategy);
  return detail::run_chunks(cfg, bins, [&](std::mt19937_64& rng, std::uint64_t count, std::vector<std::uint64_t>& hist) {
    TwoColorSampler colors;
    for (std::uint64_t t = 0; t < count; ++t) ++hist[static_cast<std::size_t>(sampler.sample(rng, colors))];
  });
}

inline Pmf simulate_x(const ShuffleParams& params, const StrategyTable& strategy, const McConfig& cfg) {
  return Pmf::from_counts(0, simulate_x_counts(params, strategy, cfg));
}

inline Pmf simulate_x(const ShuffleParams& params, const McConfig& cfg) {
  return simulate_x(params, StrategyTable(params.p(), params.n()), cfg);
}

/// Raw counts of C_{n-1-J_n, J_n}, indexed 0..n-1. The deck_play engine
/// shuffles an explicit two-color word and plays majority; the decomposed
/// engine draws from the exact tie-count law.
inline std::vector<std::uint64_t> simulate_cjn_counts(const ShuffleParams& params, const McConfig& cfg) {
  const int n = params.n();
  if (n < 2) throw std::invalid_argument("simulate_cjn: n must be >= 2");
  const double p = params.p();
  const auto bins = static_cast<std::size_t>(n);
  const bool explicit_words = resolve_engine(cfg.engine, n) == McEngine::deck_play;
  return detail::run_chunks(cfg, bins, [&](std::mt19937_64& rng, std::uint64_t count, std::vector<std::uint64_t>& hist) {
    std::binomial_distribution<int> draw_j(n - 1, p);
    TwoColorSampler colors;
    std::vector<char> word(static_cast<std::size_t>(n - 1));
    for (std::uint64_t t = 0; t < count; ++t) {
      int j = 0;
      while (j == 0) j = draw_j(rng);
      const int m1 = n - 1 - j;
      const int m2 = j;
      if (!explicit_words) {
        ++hist[static_cast<std::size_t>(colors.sample(m1, m2, rng))];
        continue;
      }
      std::fill(word.begin(), word.begin() + m1, 'a');
      std::fill(word.begin() + m1, word.end(), 'b');
      std::shuffle(word.begin(), word.end(), rng);
      int a = m1, b = m2, correct = 0;
      for (char c : word) {
        if (two_color_guess(a, b) == c) ++correct;
        (c == 'a' ? a : b) -= 1;
      }
      ++hist[static_cast<std::size_t>(correct)];
    }
  });
}

inline Pmf simulate_cjn(const ShuffleParams& params, const McConfig& cfg) {
  return Pmf::from_counts(0, simulate_cjn_counts(params, cfg));
}

}  // namespace riffle
