#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deft/corpus.hpp"

namespace deft {

/// Lowercases ASCII and splits on runs of ASCII non-alphanumerics. Bytes
/// >= 0x80 count as word characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

class Vocabulary {
 public:
  Vocabulary() = default;

  /// Indices follow sorted term order, so the result does not depend on
  /// the order of `documents`.
  static Vocabulary build(const std::vector<std::vector<std::string>>& documents);

  /// Terms in index order; document frequencies are unknown (empty).
  static Vocabulary from_terms(std::vector<std::string> terms, std::size_t total_documents);

  std::optional<std::size_t> find(std::string_view term) const;
  const std::string& term(std::size_t index) const { return terms_.at(index); }
  std::size_t size() const { return terms_.size(); }

  /// Empty when the vocabulary was loaded from a model file.
  const std::vector<std::size_t>& document_frequency() const { return document_frequency_; }
  std::size_t total_documents() const { return total_documents_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::size_t> document_frequency_;
  std::size_t total_documents_ = 0;
};

struct Prediction {
  int label = 0;
  double score = 0.0;  // log-odds of class 1

  static Prediction from_score(double score) { return {score > 0.0 ? 1 : 0, score}; }

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Multinomial Naive Bayes over bag-of-words counts with additive smoothing.
class NaiveBayesModel {
 public:
  static constexpr int kFormatVersion = 1;

  NaiveBayesModel() = default;

  const Vocabulary& vocabulary() const { return vocabulary_; }
  double alpha() const { return alpha_; }
  const std::array<double, 2>& log_prior() const { return log_prior_; }
  /// log P(term | class) for the term at `index`.
  double log_likelihood(std::size_t index, int label) const {
    return log_likelihood_.at(index)[static_cast<std::size_t>(label)];
  }

  Prediction predict(std::string_view text) const;

  std::string serialize() const;
  static NaiveBayesModel parse(std::string_view content);
  void save(const std::filesystem::path& path) const;
  static NaiveBayesModel load(const std::filesystem::path& path);

  friend NaiveBayesModel train_nb(const std::vector<ClassificationInstance>& instances,
                                  double alpha);

 private:
  Vocabulary vocabulary_;
  double alpha_ = 1.0;
  std::array<double, 2> log_prior_{};
  std::vector<std::array<double, 2>> log_likelihood_;
};

/// Throws DataError if one of the classes is missing, ConfigError if
/// alpha <= 0.
NaiveBayesModel train_nb(const std::vector<ClassificationInstance>& instances, double alpha = 1.0);

inline Prediction predict_nb(const NaiveBayesModel& model, std::string_view text) {
  return model.predict(text);
}

std::vector<Prediction> predict_file(const NaiveBayesModel& model,
                                     const std::vector<ClassificationInstance>& instances);

/// Parses an external predictions file (`label` or `label<TAB>score` per
/// line). A label-only line gets score +1 or -1. Throws DataError if the
/// line count differs from `instances` or a score disagrees with its label.
std::vector<Prediction> predict_file(std::string_view external_predictions,
                                     const std::vector<ClassificationInstance>& instances);

std::string serialize_predictions(const std::vector<Prediction>& predictions);

}  // namespace deft
