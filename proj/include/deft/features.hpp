#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deft/corpus.hpp"

namespace deft {

/// Case/digit pattern of a token: A upper, a lower, 9 digit, x any
/// non-ASCII character, other bytes kept. "DNA" -> "AAA".
std::string token_shape(std::string_view token);

/// Binary feature names for one position, sorted and unique: bias, the
/// lowercased word, its shape, prefixes and suffixes up to 3 characters,
/// neighbouring lowercased words and first/last flags.
std::vector<std::string> extract_features(const std::vector<std::string>& words,
                                          std::size_t position);
std::vector<std::string> extract_features(const Sentence& sentence, std::size_t position);

using FeatureId = std::uint32_t;

/// Sorted, duplicate-free feature ids active at one position.
struct FeatureVector {
  std::vector<FeatureId> ids;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Interns feature names to dense ids.
class FeatureIndex {
 public:
  FeatureId intern(std::string_view name);
  std::optional<FeatureId> find(std::string_view name) const;
  const std::string& name(FeatureId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, FeatureId> ids_;
};

/// Adds unseen names to `index`.
FeatureVector intern_features(const std::vector<std::string>& names, FeatureIndex& index);
/// Drops names that are not in `index`.
FeatureVector lookup_features(const std::vector<std::string>& names, const FeatureIndex& index);

std::vector<std::string> sentence_words(const Sentence& sentence);

}  // namespace deft
