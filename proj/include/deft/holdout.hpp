#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "deft/errors.hpp"

namespace deft {

/// Uniform draw in [0, bound) from a 64-bit engine by rejection. Unlike
/// std::uniform_int_distribution this gives the same sequence on every
/// standard library.
inline std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw = 0;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % bound;
}

/// Portable Fisher-Yates permutation of [0, n).
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[uniform_below(engine, i)]);
  }
  return order;
}

template <typename T>
struct Split {
  std::vector<T> train;
  std::vector<T> eval;
};

/// Moves round(fraction * n) randomly chosen items into `eval`. Both halves
/// keep the input order.
template <typename T>
Split<T> holdout_split(const std::vector<T>& items, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ConfigError("holdout fraction must lie in (0,1)");
  if (items.size() < 2) throw DataError("holdout split needs at least two items");
  const auto n = items.size();
  const auto eval_size = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));

  std::vector<bool> in_eval(n, false);
  auto order = seeded_permutation(n, seed);
  for (std::size_t i = 0; i < eval_size; ++i) in_eval[order[i]] = true;

  Split<T> split;
  split.train.reserve(n - eval_size);
  split.eval.reserve(eval_size);
  for (std::size_t i = 0; i < n; ++i) (in_eval[i] ? split.eval : split.train).push_back(items[i]);
  return split;
}

}  // namespace deft
