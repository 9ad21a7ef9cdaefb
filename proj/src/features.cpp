#include "deft/features.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "deft/text_util.hpp"

namespace deft {

namespace {

// Byte offsets where UTF-8 characters start, plus the end offset.
std::vector<std::size_t> char_boundaries(std::string_view s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) out.push_back(i);
  }
  out.push_back(s.size());
  return out;
}

}  // namespace

std::string token_shape(std::string_view token) {
  std::string shape;
  for (std::size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    auto u = static_cast<unsigned char>(c);
    if (is_upper(c)) {
      shape += 'A';
    } else if (is_lower(c)) {
      shape += 'a';
    } else if (is_digit(c)) {
      shape += '9';
    } else if (u >= 0x80) {
      if ((u & 0xC0) != 0x80) shape += 'x';
    } else {
      shape += c;
    }
  }
  return shape;
}

std::vector<std::string> extract_features(const std::vector<std::string>& words,
                                          std::size_t position) {
  if (position >= words.size()) throw std::out_of_range("feature position past sentence end");
  const std::string& word = words[position];
  const std::string lower = to_lower(word);

  std::vector<std::string> features;
  features.reserve(16);
  features.emplace_back("bias");
  features.push_back("w=" + lower);
  features.push_back("shape=" + token_shape(word));

  auto bounds = char_boundaries(lower);
  const std::size_t chars = bounds.size() - 1;
  for (std::size_t k = 1; k <= std::min<std::size_t>(3, chars); ++k) {
    features.push_back("p" + std::to_string(k) + "=" + lower.substr(0, bounds[k]));
    features.push_back("s" + std::to_string(k) + "=" + lower.substr(bounds[chars - k]));
  }

  if (position == 0) {
    features.emplace_back("first");
  } else {
    features.push_back("pw=" + to_lower(words[position - 1]));
  }
  if (position + 1 == words.size()) {
    features.emplace_back("last");
  } else {
    features.push_back("nw=" + to_lower(words[position + 1]));
  }

  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  return features;
}

std::vector<std::string> sentence_words(const Sentence& sentence) {
  std::vector<std::string> words;
  words.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) words.push_back(token.text);
  return words;
}

std::vector<std::string> extract_features(const Sentence& sentence, std::size_t position) {
  return extract_features(sentence_words(sentence), position);
}

FeatureId FeatureIndex::intern(std::string_view name) {
  auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<FeatureId>(names_.size()));
  if (inserted) {
    if (names_.size() == std::numeric_limits<FeatureId>::max()) {
      throw std::length_error("feature index is full");
    }
    names_.emplace_back(name);
  }
  return it->second;
}

std::optional<FeatureId> FeatureIndex::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

FeatureVector intern_features(const std::vector<std::string>& names, FeatureIndex& index) {
  FeatureVector vector;
  vector.ids.reserve(names.size());
  for (const auto& name : names) vector.ids.push_back(index.intern(name));
  std::sort(vector.ids.begin(), vector.ids.end());
  vector.ids.erase(std::unique(vector.ids.begin(), vector.ids.end()), vector.ids.end());
  return vector;
}

FeatureVector lookup_features(const std::vector<std::string>& names, const FeatureIndex& index) {
  FeatureVector vector;
  vector.ids.reserve(names.size());
  for (const auto& name : names) {
    if (auto id = index.find(name)) vector.ids.push_back(*id);
  }
  std::sort(vector.ids.begin(), vector.ids.end());
  vector.ids.erase(std::unique(vector.ids.begin(), vector.ids.end()), vector.ids.end());
  return vector;
}

}  // namespace deft
