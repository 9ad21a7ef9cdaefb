#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deft/corpus.hpp"
#include "deft/features.hpp"
#include "deft/tag_schema.hpp"

namespace deft {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Transition weights for an alphabet of K tags: rows 0..K-1 are the
/// previous tag, row K is the virtual START state.
class TransitionScores {
 public:
  TransitionScores() = default;
  explicit TransitionScores(std::size_t tags) : weights_(tags + 1, tags) {}

  std::size_t tags() const { return weights_.cols(); }
  std::size_t start_row() const { return weights_.cols(); }
  double& at(std::optional<std::size_t> from, std::size_t to) {
    return weights_(from ? *from : start_row(), to);
  }
  double at(std::optional<std::size_t> from, std::size_t to) const {
    return weights_(from ? *from : start_row(), to);
  }
  Matrix& matrix() { return weights_; }
  const Matrix& matrix() const { return weights_; }

  friend bool operator==(const TransitionScores&, const TransitionScores&) = default;

 private:
  Matrix weights_;
};

struct DecodeResult {
  std::vector<std::size_t> tags;  // schema indices
  double score = 0.0;
};

/// Score of a tag-index sequence: start transition, pairwise transitions
/// and per-position emissions (`emissions` is length x K).
double sequence_score(const Matrix& emissions, const TransitionScores& transitions,
                      const std::vector<std::size_t>& tags);

/// Best BIO-legal sequence. Illegal transitions (including I-X at the
/// start) are excluded from the max; ties go to the lowest tag index.
DecodeResult viterbi_decode(const Matrix& emissions, const TransitionScores& transitions,
                            const TagSchema& schema);

/// Linear-chain model: binary features x tags emission weights plus
/// tag-to-tag transition weights.
class ChainModel {
 public:
  static constexpr int kFormatVersion = 1;

  explicit ChainModel(TagSchema schema);

  const TagSchema& schema() const { return schema_; }
  const FeatureIndex& features() const { return features_; }
  FeatureIndex& features() { return features_; }
  const Matrix& emission_weights() const { return emissions_; }
  Matrix& emission_weights() { return emissions_; }
  const TransitionScores& transitions() const { return transitions_; }
  TransitionScores& transitions() { return transitions_; }

  /// Grows the emission matrix to cover every interned feature.
  void sync_feature_rows();

  std::vector<FeatureVector> featurize(const std::vector<std::string>& words) const;
  Matrix emission_scores(const std::vector<FeatureVector>& features) const;

  /// Requires a non-empty feature list.
  std::vector<BioTag> viterbi_decode(const std::vector<FeatureVector>& features) const;
  std::vector<BioTag> tag(const Sentence& sentence) const;

  std::string serialize() const;
  static ChainModel parse(std::string_view content);
  void save(const std::filesystem::path& path) const;
  static ChainModel load(const std::filesystem::path& path);

 private:
  TagSchema schema_;
  FeatureIndex features_;
  Matrix emissions_;
  TransitionScores transitions_;
};

struct PerceptronOptions {
  int epochs = 10;
  std::uint64_t seed = 0;
};

struct TrainingStats {
  std::vector<std::size_t> mistakes_per_epoch;  // sentences decoded wrongly
};

/// Averaged structured perceptron. Each epoch visits the sentences in an
/// order drawn from `seed`; the result is the average of the weights after
/// every sentence.
ChainModel train_perceptron(const std::vector<Sentence>& sentences, const TagSchema& schema,
                            const PerceptronOptions& options, TrainingStats* stats = nullptr);

struct Violation {
  std::size_t position = 0;
  std::string tag;
  std::string reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every position whose tag is outside the schema or is an I-X not
/// preceded by B-X/I-X. Empty means the sequence is legal.
std::vector<Violation> validate_sequence(const std::vector<BioTag>& tags, const TagSchema& schema);
std::vector<Violation> validate_sequence(const std::vector<std::string>& tags,
                                         const TagSchema& schema);

/// Copy of `sentence` with its tags replaced and its label re-derived.
Sentence with_tags(const Sentence& sentence, const std::vector<BioTag>& tags,
                   LabelRule rule = LabelRule::kDefinitionSubstring);

}  // namespace deft
