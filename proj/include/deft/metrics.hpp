#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "deft/tag_schema.hpp"

namespace deft {

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassMetrics {
  std::string key;   // "0"/"1" or a tag string
  std::string name;  // display name
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t support = 0;  // tp + fn
  Scores scores;
  bool included = true;  // counted in weighted/macro/micro aggregates
};

struct EvalReport {
  std::vector<ClassMetrics> classes;
  Scores weighted;  // weights = gold support
  Scores macro;     // unweighted means
  Scores micro;     // pooled counts
  std::size_t items = 0;
};

/// Precision, recall and F1 from raw counts. A ratio with a zero
/// denominator is 1 when the class never occurs in gold or prediction
/// (tp = fp = fn = 0) and 0 otherwise; F1 is 0 when P + R = 0.
Scores scores_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Binary sentence scoring: class 0 "Not Definition", class 1
/// "Definition". Macro averages both classes.
EvalReport score_classification(const std::vector<int>& gold, const std::vector<int>& pred);

/// Token-level exact tag match. The per-tag table covers the whole schema
/// alphabet; aggregates skip `exclude`, and macro only averages included
/// tags with gold support.
EvalReport score_tokens(const std::vector<std::vector<BioTag>>& gold,
                        const std::vector<std::vector<BioTag>>& pred, const TagSchema& schema,
                        const std::set<std::string>& exclude = {"O"});

/// Fixed-width table, two decimals.
std::string render_report(const EvalReport& report);

/// `key value` lines at full precision.
std::string render_machine(const EvalReport& report);

}  // namespace deft
