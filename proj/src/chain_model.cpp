#include "deft/chain_model.hpp"

#include <limits>
#include <stdexcept>

#include "deft/errors.hpp"
#include "deft/holdout.hpp"
#include "deft/text_util.hpp"

namespace deft {

namespace {

constexpr double kUnreachable = -std::numeric_limits<double>::infinity();
constexpr std::string_view kMagic = "deft-chain";
constexpr std::string_view kStartLabel = "START";

std::vector<std::size_t> gold_indices(const Sentence& sentence, const TagSchema& schema) {
  std::vector<std::size_t> out;
  out.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) {
    auto index = schema.index_of(token.tag);
    if (!index) throw DataError("tag '" + token.tag.str() + "' is outside the schema");
    out.push_back(*index);
  }
  return out;
}

void append_row(std::string& out, std::string_view label, const Matrix& m, std::size_t row) {
  out += label;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    out += '\t';
    out += format_exact(m(row, c));
  }
  out += '\n';
}

void read_row(std::string_view line, std::size_t line_no, std::size_t cols, std::string& label,
              Matrix& m, std::size_t row) {
  auto fields = split(line, '\t');
  if (fields.size() != cols + 1) {
    throw ParseError(line_no, "expected a label and " + std::to_string(cols) + " weights");
  }
  label = std::string(fields[0]);
  for (std::size_t c = 0; c < cols; ++c) m(row, c) = parse_double(fields[c + 1]);
}

std::size_t parse_header_count(std::string_view line, std::size_t line_no, std::string_view key) {
  auto fields = split(line, '\t');
  if (fields.size() != 2 || fields[0] != key) {
    throw ParseError(line_no, "expected '" + std::string(key) + "<TAB>count'");
  }
  double value = parse_double(fields[1]);
  if (value < 0 || value != static_cast<double>(static_cast<std::size_t>(value))) {
    throw ParseError(line_no, "expected a count");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

double sequence_score(const Matrix& emissions, const TransitionScores& transitions,
                      const std::vector<std::size_t>& tags) {
  double score = 0.0;
  std::optional<std::size_t> previous;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    score += transitions.at(previous, tags[i]) + emissions(i, tags[i]);
    previous = tags[i];
  }
  return score;
}

DecodeResult viterbi_decode(const Matrix& emissions, const TransitionScores& transitions,
                            const TagSchema& schema) {
  const std::size_t n = emissions.rows();
  const std::size_t k = schema.size();
  if (n == 0) throw std::invalid_argument("viterbi_decode needs at least one position");
  if (emissions.cols() != k || transitions.tags() != k) {
    throw std::invalid_argument("score dimensions do not match the schema");
  }

  // legal(from, to), with from == k meaning START.
  std::vector<char> legal((k + 1) * k);
  for (std::size_t to = 0; to < k; ++to) {
    legal[k * k + to] = schema.legal_transition(std::nullopt, to);
    for (std::size_t from = 0; from < k; ++from) {
      legal[from * k + to] = schema.legal_transition(from, to);
    }
  }

  Matrix best(n, k, kUnreachable);
  std::vector<std::size_t> back(n * k, 0);
  for (std::size_t t = 0; t < k; ++t) {
    if (legal[k * k + t]) best(0, t) = transitions.at(std::nullopt, t) + emissions(0, t);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      double top = kUnreachable;
      std::size_t arg = 0;
      for (std::size_t s = 0; s < k; ++s) {
        if (!legal[s * k + t] || best(i - 1, s) == kUnreachable) continue;
        double candidate = best(i - 1, s) + transitions.at(s, t);
        if (candidate > top) {
          top = candidate;
          arg = s;
        }
      }
      if (top != kUnreachable) {
        best(i, t) = top + emissions(i, t);
        back[i * k + t] = arg;
      }
    }
  }

  DecodeResult result;
  std::size_t last = 0;
  for (std::size_t t = 1; t < k; ++t) {
    if (best(n - 1, t) > best(n - 1, last)) last = t;
  }
  result.score = best(n - 1, last);
  result.tags.resize(n);
  result.tags[n - 1] = last;
  for (std::size_t i = n - 1; i > 0; --i) result.tags[i - 1] = back[i * k + result.tags[i]];
  return result;
}

ChainModel::ChainModel(TagSchema schema)
    : schema_(std::move(schema)),
      emissions_(0, schema_.size()),
      transitions_(schema_.size()) {}

void ChainModel::sync_feature_rows() {
  if (emissions_.rows() == features_.size()) return;
  Matrix grown(features_.size(), schema_.size());
  std::copy(emissions_.data().begin(), emissions_.data().end(), grown.data().begin());
  emissions_ = std::move(grown);
}

std::vector<FeatureVector> ChainModel::featurize(const std::vector<std::string>& words) const {
  std::vector<FeatureVector> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.push_back(lookup_features(extract_features(words, i), features_));
  }
  return out;
}

Matrix ChainModel::emission_scores(const std::vector<FeatureVector>& features) const {
  const std::size_t k = schema_.size();
  Matrix scores(features.size(), k);
  for (std::size_t i = 0; i < features.size(); ++i) {
    for (FeatureId id : features[i].ids) {
      if (id >= emissions_.rows()) continue;
      for (std::size_t t = 0; t < k; ++t) scores(i, t) += emissions_(id, t);
    }
  }
  return scores;
}

std::vector<BioTag> ChainModel::viterbi_decode(const std::vector<FeatureVector>& features) const {
  auto decoded = deft::viterbi_decode(emission_scores(features), transitions_, schema_);
  std::vector<BioTag> tags;
  tags.reserve(decoded.tags.size());
  for (auto index : decoded.tags) tags.push_back(schema_.tag(index));
  return tags;
}

std::vector<BioTag> ChainModel::tag(const Sentence& sentence) const {
  if (sentence.tokens.empty()) return {};
  return viterbi_decode(featurize(sentence_words(sentence)));
}

std::string ChainModel::serialize() const {
  std::string out;
  out += std::string(kMagic) + '\t' + std::to_string(kFormatVersion) + '\n';
  out += "schema\t" + std::to_string(schema_.types().size()) + '\n';
  out += schema_.to_text();

  const std::size_t k = schema_.size();
  out += "transitions\t" + std::to_string(k + 1) + '\n';
  append_row(out, kStartLabel, transitions_.matrix(), k);
  for (std::size_t from = 0; from < k; ++from) {
    append_row(out, schema_.tag(from).str(), transitions_.matrix(), from);
  }

  std::vector<std::size_t> rows;
  for (std::size_t f = 0; f < emissions_.rows(); ++f) {
    for (std::size_t t = 0; t < k; ++t) {
      if (emissions_(f, t) != 0.0) {
        rows.push_back(f);
        break;
      }
    }
  }
  out += "emissions\t" + std::to_string(rows.size()) + '\n';
  for (auto f : rows) append_row(out, features_.name(static_cast<FeatureId>(f)), emissions_, f);
  return out;
}

ChainModel ChainModel::parse(std::string_view content) {
  auto lines = split_lines(content);
  std::size_t cursor = 0;
  auto next_line = [&]() -> std::string_view {
    if (cursor >= lines.size()) throw DataError("truncated chain model file");
    return lines[cursor++];
  };

  auto header = split(next_line(), '\t');
  if (header.size() != 2 || header[0] != kMagic) throw ParseError(1, "not a chain model");
  if (header[1] != std::to_string(kFormatVersion)) {
    throw ParseError(1, "unsupported model version '" + std::string(header[1]) + "'");
  }

  const std::size_t type_count = parse_header_count(next_line(), cursor, "schema");
  std::vector<std::string> types;
  for (std::size_t i = 0; i < type_count; ++i) types.emplace_back(trim(next_line()));
  ChainModel model{TagSchema(std::move(types))};
  const std::size_t k = model.schema_.size();

  const std::size_t transition_rows = parse_header_count(next_line(), cursor, "transitions");
  if (transition_rows != k + 1) throw ParseError(cursor, "transition block size mismatch");
  std::string label;
  read_row(next_line(), cursor, k, label, model.transitions_.matrix(), k);
  if (label != kStartLabel) throw ParseError(cursor, "expected the START row first");
  for (std::size_t from = 0; from < k; ++from) {
    read_row(next_line(), cursor, k, label, model.transitions_.matrix(), from);
    if (label != model.schema_.tag(from).str()) {
      throw ParseError(cursor, "transition row '" + label + "' out of schema order");
    }
  }

  const std::size_t emission_rows = parse_header_count(next_line(), cursor, "emissions");
  model.emissions_ = Matrix(emission_rows, k);
  for (std::size_t f = 0; f < emission_rows; ++f) {
    read_row(next_line(), cursor, k, label, model.emissions_, f);
    if (model.features_.intern(label) != f) throw ParseError(cursor, "duplicate feature " + label);
  }
  return model;
}

void ChainModel::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

ChainModel ChainModel::load(const std::filesystem::path& path) { return parse(read_file(path)); }

ChainModel train_perceptron(const std::vector<Sentence>& sentences, const TagSchema& schema,
                            const PerceptronOptions& options, TrainingStats* stats) {
  if (options.epochs < 0) throw ConfigError("epochs must be non-negative");
  ChainModel model(schema);
  const std::size_t k = schema.size();

  std::vector<std::vector<FeatureVector>> features;
  std::vector<std::vector<std::size_t>> gold;
  features.reserve(sentences.size());
  gold.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    if (sentence.tokens.empty()) continue;
    auto words = sentence_words(sentence);
    std::vector<FeatureVector> row;
    row.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      row.push_back(intern_features(extract_features(words, i), model.features()));
    }
    features.push_back(std::move(row));
    gold.push_back(gold_indices(sentence, schema));
  }
  model.sync_feature_rows();

  // Averaging via the accumulated-update trick: avg = w - u / c.
  Matrix& emission = model.emission_weights();
  Matrix& transition = model.transitions().matrix();
  Matrix emission_acc(emission.rows(), emission.cols());
  Matrix transition_acc(transition.rows(), transition.cols());
  double step = 1.0;

  auto update = [&](const std::vector<FeatureVector>& feats, const std::vector<std::size_t>& tags,
                    double sign) {
    std::size_t from = k;  // START row
    for (std::size_t i = 0; i < tags.size(); ++i) {
      const std::size_t to = tags[i];
      for (FeatureId id : feats[i].ids) {
        emission(id, to) += sign;
        emission_acc(id, to) += sign * step;
      }
      transition(from, to) += sign;
      transition_acc(from, to) += sign * step;
      from = to;
    }
  };

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::size_t mistakes = 0;
    auto order = seeded_permutation(features.size(), options.seed + static_cast<std::uint64_t>(epoch));
    for (auto s : order) {
      auto predicted = viterbi_decode(model.emission_scores(features[s]), model.transitions(), schema);
      if (predicted.tags != gold[s]) {
        ++mistakes;
        update(features[s], gold[s], +1.0);
        update(features[s], predicted.tags, -1.0);
      }
      step += 1.0;
    }
    if (stats) stats->mistakes_per_epoch.push_back(mistakes);
  }

  for (std::size_t i = 0; i < emission.data().size(); ++i) {
    emission.data()[i] -= emission_acc.data()[i] / step;
  }
  for (std::size_t i = 0; i < transition.data().size(); ++i) {
    transition.data()[i] -= transition_acc.data()[i] / step;
  }
  return model;
}

std::vector<Violation> validate_sequence(const std::vector<BioTag>& tags, const TagSchema& schema) {
  std::vector<Violation> violations;
  std::optional<std::size_t> previous;
  bool previous_known = true;  // false after an out-of-schema tag
  for (std::size_t i = 0; i < tags.size(); ++i) {
    auto index = schema.index_of(tags[i]);
    if (!index) {
      violations.push_back({i, tags[i].str(), "tag outside schema"});
      previous_known = false;
      continue;
    }
    bool legal = previous_known ? schema.legal_transition(previous, *index)
                                : tags[i].position != TagPosition::kInside;
    if (!legal) {
      violations.push_back(
          {i, tags[i].str(), "I-" + tags[i].type + " must follow B-" + tags[i].type + " or I-" +
                                 tags[i].type});
    }
    previous = index;
    previous_known = true;
  }
  return violations;
}

std::vector<Violation> validate_sequence(const std::vector<std::string>& tags,
                                         const TagSchema& schema) {
  std::vector<BioTag> parsed;
  std::vector<Violation> malformed;
  parsed.reserve(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) {
    auto tag = BioTag::parse(tags[i]);
    if (tag) {
      parsed.push_back(std::move(*tag));
    } else {
      // Placeholder that is never in a schema, so it reports as outside.
      parsed.push_back(BioTag{TagPosition::kOutside, tags[i]});
      malformed.push_back({i, tags[i], "malformed tag"});
    }
  }
  auto violations = validate_sequence(parsed, schema);
  for (auto& v : violations) {
    for (const auto& m : malformed) {
      if (m.position == v.position) v = m;
    }
  }
  return violations;
}

Sentence with_tags(const Sentence& sentence, const std::vector<BioTag>& tags, LabelRule rule) {
  if (tags.size() != sentence.tokens.size()) {
    throw DataError("tag count does not match token count");
  }
  Sentence out = sentence;
  for (std::size_t i = 0; i < tags.size(); ++i) out.tokens[i].tag = tags[i];
  out.label = derive_label(out.tokens, rule);
  return out;
}

}  // namespace deft
