#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "deft/errors.hpp"
#include "deft/metrics.hpp"
#include "deft/text_util.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace deft;

namespace {

constexpr double kTol = 1e-12;

void check_scores(const Scores& got, const Scores& want) {
  CHECK(std::abs(got.precision - want.precision) <= kTol);
  CHECK(std::abs(got.recall - want.recall) <= kTol);
  CHECK(std::abs(got.f1 - want.f1) <= kTol);
}

const ClassMetrics& find_class(const EvalReport& report, const std::string& key) {
  for (const auto& c : report.classes) {
    if (c.key == key) return c;
  }
  throw std::runtime_error("no class " + key);
}

std::vector<BioTag> random_tags(std::mt19937_64& rng, const TagSchema& schema, std::size_t n) {
  std::vector<BioTag> out;
  for (std::size_t i = 0; i < n; ++i) {
    // Lean towards O like real data.
    out.push_back(rng() % 3 == 0 ? schema.tag(rng() % schema.size()) : BioTag::outside());
  }
  return out;
}

}  // namespace

TEST_CASE("worked classification example") {
  auto report = score_classification({1, 1, 1, 0}, {1, 1, 0, 1});
  const auto& positive = find_class(report, "1");
  const auto& negative = find_class(report, "0");
  CHECK(positive.name == "Definition");
  CHECK(negative.name == "Not Definition");
  CHECK(positive.scores.precision == doctest::Approx(2.0 / 3.0));
  CHECK(positive.scores.recall == doctest::Approx(2.0 / 3.0));
  CHECK(positive.scores.f1 == doctest::Approx(2.0 / 3.0));
  CHECK(negative.scores.f1 == 0.0);
  CHECK(report.macro.f1 == doctest::Approx(1.0 / 3.0));
  CHECK(report.weighted.f1 == doctest::Approx(0.5));
  CHECK(report.micro.f1 == doctest::Approx(0.5));
  CHECK(report.items == 4);
}

TEST_CASE("scores_from_counts conventions") {
  auto vacuous = scores_from_counts(0, 0, 0);
  CHECK(vacuous.precision == 1.0);
  CHECK(vacuous.recall == 1.0);
  CHECK(vacuous.f1 == 1.0);
  auto missed = scores_from_counts(0, 0, 3);
  CHECK(missed.precision == 0.0);
  CHECK(missed.recall == 0.0);
  CHECK(missed.f1 == 0.0);
  auto spurious = scores_from_counts(0, 2, 0);
  CHECK(spurious.precision == 0.0);
  CHECK(spurious.f1 == 0.0);
}

TEST_CASE("classification errors") {
  CHECK_THROWS_AS(score_classification({1, 0}, {1}), DataError);
  CHECK_THROWS_AS(score_classification({}, {}), DataError);
  CHECK_THROWS_AS(score_classification({2}, {1}), DataError);
}

TEST_CASE("classification agrees with the counting oracle") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<int> gold(n);
    std::vector<int> pred(n);
    std::vector<std::string> gs(n);
    std::vector<std::string> ps(n);
    for (std::size_t i = 0; i < n; ++i) {
      gold[i] = static_cast<int>(rng() % 2);
      pred[i] = static_cast<int>(rng() % 2);
      gs[i] = std::to_string(gold[i]);
      ps[i] = std::to_string(pred[i]);
    }
    auto report = score_classification(gold, pred);
    auto oracle = testing::oracle_report(gs, ps, {"0", "1"}, {}, false);
    for (const char* key : {"0", "1"}) check_scores(find_class(report, key).scores,
                                                   oracle.per_class[key]);
    check_scores(report.weighted, oracle.weighted);
    check_scores(report.macro, oracle.macro);
    check_scores(report.micro, oracle.micro);

    // Single-label binary task: micro P = R = F1 = accuracy.
    CHECK(std::abs(report.micro.precision - report.micro.recall) <= kTol);
    CHECK(std::abs(report.micro.f1 - report.micro.precision) <= kTol);
    const double lo = std::min(find_class(report, "0").scores.f1, find_class(report, "1").scores.f1);
    const double hi = std::max(find_class(report, "0").scores.f1, find_class(report, "1").scores.f1);
    CHECK(report.weighted.f1 >= lo - kTol);
    CHECK(report.weighted.f1 <= hi + kTol);

    // Reordering items changes nothing.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> g2;
    std::vector<int> p2;
    for (auto i : order) {
      g2.push_back(gold[i]);
      p2.push_back(pred[i]);
    }
    CHECK(render_machine(score_classification(g2, p2)) == render_machine(report));
  }
}

TEST_CASE("perfect prediction scores 1 everywhere") {
  auto report = score_classification({1, 1, 1}, {1, 1, 1});
  for (const auto& c : report.classes) CHECK(c.scores.f1 == 1.0);
  CHECK(report.macro.f1 == 1.0);

  auto schema = TagSchema::default_schema();
  std::vector<std::vector<BioTag>> gold = {{BioTag::begin("Term"), BioTag::outside()}};
  auto tokens = score_tokens(gold, gold, schema);
  CHECK(tokens.macro.f1 == 1.0);
  CHECK(tokens.micro.f1 == 1.0);
  CHECK(tokens.weighted.f1 == 1.0);
}

TEST_CASE("token scoring on small cases") {
  auto schema = TagSchema::default_schema();
  auto report = score_tokens({{BioTag::begin("Term"), BioTag::outside()}},
                             {{BioTag::outside(), BioTag::outside()}}, schema);
  const auto& term = find_class(report, "B-Term");
  CHECK(term.tp == 0);
  CHECK(term.fn == 1);
  CHECK(term.scores.f1 == 0.0);
  CHECK_FALSE(find_class(report, "O").included);
  CHECK(report.micro.f1 == 0.0);
  CHECK(report.macro.f1 == 0.0);
  CHECK(report.items == 2);
  CHECK(report.classes.size() == schema.size());

  // All-O prediction against a gold with definitions.
  std::vector<std::vector<BioTag>> gold = {
      {BioTag::begin("Term"), BioTag::outside(), BioTag::begin("Definition"),
       BioTag::inside("Definition")}};
  std::vector<std::vector<BioTag>> none = {std::vector<BioTag>(4, BioTag::outside())};
  auto all_o = score_tokens(gold, none, schema);
  CHECK(all_o.micro.recall == 0.0);
  CHECK(all_o.micro.f1 == 0.0);
  CHECK(all_o.weighted.f1 == 0.0);

  CHECK_THROWS_AS(score_tokens(gold, {}, schema), DataError);
  try {
    score_tokens(gold, {{BioTag::outside()}}, schema);
    FAIL("expected a length error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("sentence 0") != std::string::npos);
  }
}

TEST_CASE("token scoring agrees with the counting oracle") {
  auto schema = TagSchema::default_schema();
  std::vector<std::string> labels;
  for (const auto& tag : schema.alphabet()) labels.push_back(tag.str());
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<BioTag>> gold;
    std::vector<std::vector<BioTag>> pred;
    std::vector<std::string> gs;
    std::vector<std::string> ps;
    const auto sentences = 1 + rng() % 5;
    for (std::size_t s = 0; s < sentences; ++s) {
      const auto n = 1 + rng() % 10;
      gold.push_back(random_tags(rng, schema, n));
      pred.push_back(random_tags(rng, schema, n));
      for (std::size_t i = 0; i < n; ++i) {
        gs.push_back(gold.back()[i].str());
        ps.push_back(pred.back()[i].str());
      }
    }
    auto report = score_tokens(gold, pred, schema);
    auto oracle = testing::oracle_report(gs, ps, labels, {"O"}, true);
    for (const auto& label : labels) {
      const auto& c = find_class(report, label);
      CHECK(c.tp == oracle.counts[label].tp);
      CHECK(c.fp == oracle.counts[label].fp);
      CHECK(c.fn == oracle.counts[label].fn);
      check_scores(c.scores, oracle.per_class[label]);
    }
    check_scores(report.weighted, oracle.weighted);
    check_scores(report.macro, oracle.macro);
    check_scores(report.micro, oracle.micro);
  }
}

TEST_CASE("rendered table") {
  auto report = score_classification({1, 1, 1, 0}, {1, 1, 0, 1});
  auto table = render_report(report);
  CHECK(table.find("0.67") != std::string::npos);
  CHECK(table.find("0.00") != std::string::npos);
  CHECK(table.find("Weighted Average") != std::string::npos);
  CHECK(table.find("Macro") != std::string::npos);

  // Every rendered number equals the report value rounded to 2 places.
  std::istringstream in(table);
  std::string line;
  std::vector<double> numbers;
  while (std::getline(in, line)) {
    for (auto field : split_ws(line)) {
      if (field.find('.') != std::string_view::npos) {
        numbers.push_back(parse_double(field));
      }
    }
  }
  std::vector<double> expected;
  auto add = [&expected](const Scores& s) {
    expected.push_back(s.precision);
    expected.push_back(s.recall);
    expected.push_back(s.f1);
  };
  for (const auto& c : report.classes) add(c.scores);
  add(report.weighted);
  add(report.macro);
  add(report.micro);
  REQUIRE(numbers.size() == expected.size());
  for (std::size_t i = 0; i < numbers.size(); ++i) {
    CHECK(std::abs(numbers[i] - expected[i]) <= 0.005 + 1e-12);
  }

  auto tokens = render_report(score_tokens({{BioTag::begin("Term")}}, {{BioTag::outside()}},
                                           TagSchema::default_schema()));
  CHECK(tokens.find("O*") != std::string::npos);
  CHECK(render_machine(report).find("class.1.f1 ") != std::string::npos);
}
