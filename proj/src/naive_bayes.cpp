#include "deft/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "deft/errors.hpp"
#include "deft/text_util.hpp"

namespace deft {

namespace {

bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return is_digit(c) || is_lower(c) || is_upper(c) || u >= 0x80;
}

constexpr std::string_view kMagic = "deft-naive-bayes";

std::vector<std::string_view> expect_fields(std::string_view line, std::size_t line_no,
                                            std::string_view key, std::size_t count) {
  auto fields = split(line, '\t');
  if (fields.size() != count || fields[0] != key) {
    throw ParseError(line_no, "expected '" + std::string(key) + "' with " +
                                  std::to_string(count - 1) + " value(s)");
  }
  return fields;
}

std::size_t parse_count(std::string_view text, std::size_t line_no) {
  double value = parse_double(text);
  if (value < 0 || value != std::floor(value)) throw ParseError(line_no, "expected a count");
  return static_cast<std::size_t>(value);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> terms;
  std::string current;
  for (char c : text) {
    if (is_word_byte(c)) {
      current += to_lower(c);
    } else if (!current.empty()) {
      terms.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) terms.push_back(std::move(current));
  return terms;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& documents) {
  std::map<std::string, std::size_t> frequency;
  for (const auto& document : documents) {
    std::set<std::string_view> unique(document.begin(), document.end());
    for (auto term : unique) ++frequency[std::string(term)];
  }
  Vocabulary vocabulary;
  vocabulary.total_documents_ = documents.size();
  vocabulary.terms_.reserve(frequency.size());
  vocabulary.document_frequency_.reserve(frequency.size());
  for (auto& [term, df] : frequency) {
    vocabulary.index_.emplace(term, vocabulary.terms_.size());
    vocabulary.terms_.push_back(term);
    vocabulary.document_frequency_.push_back(df);
  }
  return vocabulary;
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms, std::size_t total_documents) {
  Vocabulary vocabulary;
  vocabulary.total_documents_ = total_documents;
  vocabulary.terms_ = std::move(terms);
  for (std::size_t i = 0; i < vocabulary.terms_.size(); ++i) {
    if (!vocabulary.index_.emplace(vocabulary.terms_[i], i).second) {
      throw DataError("duplicate vocabulary term '" + vocabulary.terms_[i] + "'");
    }
  }
  return vocabulary;
}

std::optional<std::size_t> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NaiveBayesModel train_nb(const std::vector<ClassificationInstance>& instances, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("smoothing alpha must be > 0");

  std::vector<std::vector<std::string>> documents;
  documents.reserve(instances.size());
  std::array<std::size_t, 2> class_docs{};
  for (const auto& instance : instances) {
    if (instance.label != 0 && instance.label != 1) throw DataError("labels must be 0 or 1");
    documents.push_back(tokenize(instance.text));
    ++class_docs[static_cast<std::size_t>(instance.label)];
  }
  if (class_docs[0] == 0 || class_docs[1] == 0) {
    throw DataError("training data must contain both labels");
  }

  NaiveBayesModel model;
  model.alpha_ = alpha;
  model.vocabulary_ = Vocabulary::build(documents);
  const std::size_t vocab_size = model.vocabulary_.size();

  std::vector<std::array<std::size_t, 2>> counts(vocab_size, {0, 0});
  std::array<std::size_t, 2> totals{};
  for (std::size_t d = 0; d < documents.size(); ++d) {
    auto label = static_cast<std::size_t>(instances[d].label);
    for (const auto& term : documents[d]) {
      ++counts[*model.vocabulary_.find(term)][label];
      ++totals[label];
    }
  }

  const auto n = static_cast<double>(instances.size());
  for (std::size_t c = 0; c < 2; ++c) {
    model.log_prior_[c] = std::log(static_cast<double>(class_docs[c]) / n);
  }
  model.log_likelihood_.resize(vocab_size);
  for (std::size_t c = 0; c < 2; ++c) {
    const double denominator =
        static_cast<double>(totals[c]) + alpha * static_cast<double>(vocab_size);
    for (std::size_t t = 0; t < vocab_size; ++t) {
      model.log_likelihood_[t][c] =
          std::log((static_cast<double>(counts[t][c]) + alpha) / denominator);
    }
  }
  return model;
}

Prediction NaiveBayesModel::predict(std::string_view text) const {
  // Counting first and summing in index order keeps the score independent
  // of word order down to the last bit.
  std::map<std::size_t, std::size_t> counts;
  for (const auto& term : tokenize(text)) {
    if (auto index = vocabulary_.find(term)) ++counts[*index];
  }
  double score = log_prior_[1] - log_prior_[0];
  for (auto [index, count] : counts) {
    score += static_cast<double>(count) * (log_likelihood_[index][1] - log_likelihood_[index][0]);
  }
  return Prediction::from_score(score);
}

std::string NaiveBayesModel::serialize() const {
  std::string out;
  out += std::string(kMagic) + '\t' + std::to_string(kFormatVersion) + '\n';
  out += "alpha\t" + format_exact(alpha_) + '\n';
  out += "vocabulary\t" + std::to_string(vocabulary_.size()) + '\n';
  out += "documents\t" + std::to_string(vocabulary_.total_documents()) + '\n';
  out += "prior\t" + format_exact(log_prior_[0]) + '\t' + format_exact(log_prior_[1]) + '\n';
  for (std::size_t t = 0; t < vocabulary_.size(); ++t) {
    out += vocabulary_.term(t);
    out += '\t';
    out += format_exact(log_likelihood_[t][0]);
    out += '\t';
    out += format_exact(log_likelihood_[t][1]);
    out += '\n';
  }
  return out;
}

NaiveBayesModel NaiveBayesModel::parse(std::string_view content) {
  auto lines = split_lines(content);
  if (lines.size() < 5) throw DataError("truncated Naive Bayes model file");

  auto header = split(lines[0], '\t');
  if (header.size() != 2 || header[0] != kMagic) throw ParseError(1, "not a Naive Bayes model");
  if (header[1] != std::to_string(kFormatVersion)) {
    throw ParseError(1, "unsupported model version '" + std::string(header[1]) + "'");
  }

  NaiveBayesModel model;
  model.alpha_ = parse_double(expect_fields(lines[1], 2, "alpha", 2)[1]);
  const std::size_t vocab_size = parse_count(expect_fields(lines[2], 3, "vocabulary", 2)[1], 3);
  const std::size_t documents = parse_count(expect_fields(lines[3], 4, "documents", 2)[1], 4);
  auto prior = expect_fields(lines[4], 5, "prior", 3);
  model.log_prior_ = {parse_double(prior[1]), parse_double(prior[2])};

  if (lines.size() < 5 + vocab_size) throw DataError("model file lists fewer terms than declared");
  std::vector<std::string> terms;
  terms.reserve(vocab_size);
  model.log_likelihood_.reserve(vocab_size);
  for (std::size_t t = 0; t < vocab_size; ++t) {
    const std::size_t line_no = 6 + t;
    auto fields = split(lines[5 + t], '\t');
    if (fields.size() != 3) throw ParseError(line_no, "expected term<TAB>log_lik_0<TAB>log_lik_1");
    terms.emplace_back(fields[0]);
    model.log_likelihood_.push_back({parse_double(fields[1]), parse_double(fields[2])});
  }
  model.vocabulary_ = Vocabulary::from_terms(std::move(terms), documents);
  return model;
}

void NaiveBayesModel::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

NaiveBayesModel NaiveBayesModel::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

std::vector<Prediction> predict_file(const NaiveBayesModel& model,
                                     const std::vector<ClassificationInstance>& instances) {
  std::vector<Prediction> out;
  out.reserve(instances.size());
  for (const auto& instance : instances) out.push_back(model.predict(instance.text));
  return out;
}

std::vector<Prediction> predict_file(std::string_view external_predictions,
                                     const std::vector<ClassificationInstance>& instances) {
  std::vector<Prediction> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(external_predictions)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(trim(line), '\t');
    if (fields.size() > 2 || (fields[0] != "0" && fields[0] != "1")) {
      throw ParseError(line_no, "expected 'label' or 'label<TAB>score'");
    }
    const int label = fields[0] == "1" ? 1 : 0;
    if (fields.size() == 1) {
      out.push_back({label, label ? 1.0 : -1.0});
      continue;
    }
    Prediction prediction = Prediction::from_score(parse_double(fields[1]));
    if (prediction.label != label) throw ParseError(line_no, "score disagrees with label");
    out.push_back(prediction);
  }
  if (out.size() != instances.size()) {
    throw DataError("prediction count " + std::to_string(out.size()) +
                    " does not match instance count " + std::to_string(instances.size()));
  }
  return out;
}

std::string serialize_predictions(const std::vector<Prediction>& predictions) {
  std::string out;
  for (const auto& p : predictions) {
    out += p.label ? '1' : '0';
    out += '\t';
    out += format_exact(p.score);
    out += '\n';
  }
  return out;
}

}  // namespace deft
