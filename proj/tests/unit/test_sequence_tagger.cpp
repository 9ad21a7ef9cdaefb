#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "deft/chain_model.hpp"
#include "deft/errors.hpp"
#include "deft/features.hpp"
#include "doctest.h"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace deft;

namespace {

Matrix random_emissions(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  Matrix m(n, k);
  for (auto& v : m.data()) v = dist(rng);
  return m;
}

TransitionScores random_transitions(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  TransitionScores t(k);
  for (auto& v : t.matrix().data()) v = dist(rng);
  return t;
}

std::vector<BioTag> to_bio(const std::vector<std::size_t>& ids, const TagSchema& schema) {
  std::vector<BioTag> out;
  for (auto id : ids) out.push_back(schema.tag(id));
  return out;
}

}  // namespace

TEST_CASE("feature extraction") {
  std::vector<std::string> words = {"The", "DNA", "strand", "."};
  auto first = extract_features(words, 0);
  auto has = [](const std::vector<std::string>& f, const std::string& name) {
    return std::find(f.begin(), f.end(), name) != f.end();
  };
  CHECK(has(first, "first"));
  CHECK_FALSE(has(extract_features(words, 1), "first"));
  CHECK(has(extract_features(words, 3), "last"));
  CHECK(token_shape("DNA") == "AAA");
  CHECK(token_shape("Cell2.") == "Aaaa9.");
  CHECK(has(extract_features(words, 1), "shape=AAA"));
  CHECK(has(extract_features(words, 1), "w=dna"));
  CHECK(has(extract_features(words, 1), "pw=the"));
  CHECK(has(extract_features(words, 1), "nw=strand"));
  CHECK(extract_features(words, 2) == extract_features(words, 2));
  CHECK(std::is_sorted(first.begin(), first.end()));

  FeatureIndex index;
  auto a = intern_features(first, index);
  CHECK(a.ids.size() == first.size());
  CHECK(lookup_features(first, index) == a);
  CHECK(lookup_features({"never-seen"}, index).ids.empty());
}

TEST_CASE("Viterbi matches exhaustive search") {
  std::mt19937_64 rng(99);
  const std::vector<std::vector<std::string>> type_sets = {{"Term"}, {"Term", "Definition"}};
  for (int trial = 0; trial < 100; ++trial) {
    TagSchema schema(type_sets[trial % 2]);
    const std::size_t n = 1 + rng() % 4;
    auto emissions = random_emissions(rng, n, schema.size());
    auto transitions = random_transitions(rng, schema.size());
    auto fast = viterbi_decode(emissions, transitions, schema);
    auto slow = testing::brute_force_decode(emissions, transitions, schema);
    CHECK(std::abs(fast.score - slow.score) < 1e-9);
    CHECK(std::abs(sequence_score(emissions, transitions, fast.tags) - slow.score) < 1e-9);
    CHECK(validate_sequence(to_bio(fast.tags, schema), schema).empty());
  }
}

TEST_CASE("legality holds against adversarial weights") {
  TagSchema schema({"Term", "Definition"});
  const auto it = *schema.index_of("I-Term");

  // I-Term is hugely favoured at the first position but cannot start.
  Matrix emissions(3, schema.size());
  for (std::size_t i = 0; i < 3; ++i) emissions(i, it) = 100.0;
  TransitionScores transitions(schema.size());
  auto result = viterbi_decode(emissions, transitions, schema);
  CHECK(result.tags[0] != it);
  CHECK(schema.tag(result.tags[0]) == BioTag::begin("Term"));
  CHECK(result.tags[1] == it);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto single = random_emissions(rng, 1, schema.size());
    single(0, it) = 1e6;
    auto tags = viterbi_decode(single, random_transitions(rng, schema.size()), schema).tags;
    CHECK(schema.tag(tags[0]).position != TagPosition::kInside);
  }

  std::size_t violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    auto decoded = viterbi_decode(random_emissions(rng, n, schema.size()),
                                  random_transitions(rng, schema.size()), schema);
    violations += validate_sequence(to_bio(decoded.tags, schema), schema).size();
  }
  CHECK(violations == 0);
}

TEST_CASE("adding a constant per position leaves the argmax unchanged") {
  TagSchema schema({"Term", "Definition"});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    auto emissions = random_emissions(rng, n, schema.size());
    auto transitions = random_transitions(rng, schema.size());
    auto shifted = emissions;
    // Powers of two keep the shifted scores exactly representable.
    for (std::size_t i = 0; i < n; ++i) {
      const double shift = std::ldexp(1.0, static_cast<int>(rng() % 6));
      for (std::size_t k = 0; k < schema.size(); ++k) shifted(i, k) += shift;
    }
    CHECK(viterbi_decode(emissions, transitions, schema).tags ==
          viterbi_decode(shifted, transitions, schema).tags);
  }
}

TEST_CASE("ties and zero weights decode to all-O") {
  TagSchema schema = TagSchema::default_schema();
  Matrix emissions(5, schema.size());
  auto result = viterbi_decode(emissions, TransitionScores(schema.size()), schema);
  CHECK(result.tags == std::vector<std::size_t>(5, 0));
  CHECK_THROWS_AS(viterbi_decode(Matrix(0, schema.size()), TransitionScores(schema.size()), schema),
                  std::invalid_argument);
}

TEST_CASE("validator agrees with the pairwise oracle") {
  auto schema = TagSchema::default_schema();
  std::vector<std::string> alphabet;
  for (const auto& tag : schema.alphabet()) alphabet.push_back(tag.str());
  for (const auto& a : alphabet) {
    CHECK(validate_sequence(std::vector<std::string>{a}, schema).empty() ==
          testing::oracle_legal("<start>", a));
    for (const auto& b : alphabet) {
      auto found = validate_sequence(std::vector<std::string>{a, b}, schema);
      const bool legal = testing::oracle_legal("<start>", a) && testing::oracle_legal(a, b);
      CHECK(found.empty() == legal);
    }
  }
}

TEST_CASE("validate_sequence reports positions and reasons") {
  auto schema = TagSchema::default_schema();
  auto found = validate_sequence(std::vector<std::string>{"I-Term", "O", "B-Term", "I-Definition",
                                                          "B-Widget", "bad"},
                                 schema);
  REQUIRE(found.size() == 4);
  CHECK(found[0].position == 0);
  CHECK(found[0].tag == "I-Term");
  CHECK(found[1].position == 3);
  CHECK(found[2].position == 4);
  CHECK(found[3].position == 5);
  CHECK(found[3].reason == "malformed tag");
  CHECK(validate_sequence(std::vector<std::string>{"B-Term", "I-Term", "I-Term", "O"}, schema)
            .empty());
}

TEST_CASE("perceptron with zero epochs predicts all-O") {
  auto schema = TagSchema::default_schema();
  auto corpus = testing::templated_corpus(20, 1);
  PerceptronOptions options;
  options.epochs = 0;
  auto model = train_perceptron(corpus, schema, options);
  for (const auto& sentence : corpus) {
    for (const auto& tag : model.tag(sentence)) CHECK(tag.is_outside());
  }
}

TEST_CASE("perceptron is deterministic for a fixed seed") {
  auto schema = TagSchema::default_schema();
  auto corpus = testing::templated_corpus(60, 2);
  PerceptronOptions options;
  options.epochs = 3;
  options.seed = 8;
  auto a = train_perceptron(corpus, schema, options);
  auto b = train_perceptron(corpus, schema, options);
  CHECK(a.serialize() == b.serialize());
}

TEST_CASE("perceptron learns the separable templated corpus") {
  auto schema = TagSchema::default_schema();
  auto train = testing::templated_corpus(500, 21);
  auto test = testing::templated_corpus(100, 22);
  TrainingStats stats;
  PerceptronOptions options;
  options.epochs = 10;
  auto model = train_perceptron(train, schema, options, &stats);
  REQUIRE(stats.mistakes_per_epoch.size() == 10);
  CHECK(stats.mistakes_per_epoch.back() == 0);

  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto& sentence : test) {
    auto predicted = model.tag(sentence);
    CHECK(validate_sequence(predicted, schema).empty());
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      correct += predicted[i] == sentence.tokens[i].tag ? 1 : 0;
      ++total;
    }
  }
  CHECK(static_cast<double>(correct) / static_cast<double>(total) >= 0.95);
}

TEST_CASE("chain model file round trip") {
  auto schema = TagSchema::default_schema();
  auto corpus = testing::templated_corpus(40, 3);
  PerceptronOptions options;
  options.epochs = 2;
  auto model = train_perceptron(corpus, schema, options);
  auto text = model.serialize();
  CHECK(text.rfind("deft-chain\t1\n", 0) == 0);
  auto loaded = ChainModel::parse(text);
  CHECK(loaded.serialize() == text);
  for (const auto& sentence : corpus) CHECK(loaded.tag(sentence) == model.tag(sentence));
  CHECK_THROWS_AS(ChainModel::parse("deft-chain\t2\n"), DataError);
  CHECK_THROWS_AS(ChainModel::parse(text.substr(0, text.size() / 2)), DataError);
}

TEST_CASE("with_tags re-derives the label") {
  auto sentence = testing::make_sentence({{"Heat", "O"}, {"flows", "O"}});
  auto tagged = with_tags(sentence, {BioTag::begin("Definition"), BioTag::inside("Definition")});
  CHECK(tagged.label == 1);
  CHECK(tagged.tokens[1].tag == BioTag::inside("Definition"));
  CHECK_THROWS(with_tags(sentence, {BioTag::outside()}));
}
