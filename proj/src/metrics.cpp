#include "deft/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "deft/errors.hpp"
#include "deft/text_util.hpp"

namespace deft {

namespace {

double ratio(std::size_t num, std::size_t den, bool vacuous) {
  if (den == 0) return vacuous ? 1.0 : 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

void finish_aggregates(EvalReport& report, bool macro_over_supported_only) {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double support_total = 0.0;
  Scores weighted;
  Scores macro;
  std::size_t macro_count = 0;
  for (const auto& c : report.classes) {
    if (!c.included) continue;
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
    const auto w = static_cast<double>(c.support);
    support_total += w;
    weighted.precision += w * c.scores.precision;
    weighted.recall += w * c.scores.recall;
    weighted.f1 += w * c.scores.f1;
    if (macro_over_supported_only && c.support == 0) continue;
    macro.precision += c.scores.precision;
    macro.recall += c.scores.recall;
    macro.f1 += c.scores.f1;
    ++macro_count;
  }
  report.micro = scores_from_counts(tp, fp, fn);
  if (support_total > 0) {
    report.weighted = {weighted.precision / support_total, weighted.recall / support_total,
                       weighted.f1 / support_total};
  } else {
    report.weighted = report.micro;
  }
  if (macro_count > 0) {
    const auto n = static_cast<double>(macro_count);
    report.macro = {macro.precision / n, macro.recall / n, macro.f1 / n};
  } else {
    report.macro = report.micro;
  }
}

std::string fixed2(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

Scores scores_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  const bool vacuous = tp == 0 && fp == 0 && fn == 0;
  Scores s;
  s.precision = ratio(tp, tp + fp, vacuous);
  s.recall = ratio(tp, tp + fn, vacuous);
  const double sum = s.precision + s.recall;
  s.f1 = sum > 0.0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

EvalReport score_classification(const std::vector<int>& gold, const std::vector<int>& pred) {
  if (gold.size() != pred.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) + " labels but prediction has " +
                    std::to_string(pred.size()));
  }
  if (gold.empty()) throw DataError("nothing to score");

  EvalReport report;
  report.items = gold.size();
  report.classes.resize(2);
  report.classes[0].key = "0";
  report.classes[0].name = "Not Definition";
  report.classes[1].key = "1";
  report.classes[1].name = "Definition";
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if ((gold[i] != 0 && gold[i] != 1) || (pred[i] != 0 && pred[i] != 1)) {
      throw DataError("labels must be 0 or 1 (item " + std::to_string(i) + ")");
    }
    auto g = static_cast<std::size_t>(gold[i]);
    auto p = static_cast<std::size_t>(pred[i]);
    if (g == p) {
      ++report.classes[g].tp;
    } else {
      ++report.classes[p].fp;
      ++report.classes[g].fn;
    }
  }
  for (auto& c : report.classes) {
    c.support = c.tp + c.fn;
    c.scores = scores_from_counts(c.tp, c.fp, c.fn);
  }
  finish_aggregates(report, /*macro_over_supported_only=*/false);
  return report;
}

EvalReport score_tokens(const std::vector<std::vector<BioTag>>& gold,
                        const std::vector<std::vector<BioTag>>& pred, const TagSchema& schema,
                        const std::set<std::string>& exclude) {
  if (gold.size() != pred.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) + " sentences but prediction has " +
                    std::to_string(pred.size()));
  }

  std::map<std::string, std::size_t> slot;
  EvalReport report;
  auto slot_of = [&](const std::string& key) {
    auto [it, inserted] = slot.try_emplace(key, report.classes.size());
    if (inserted) {
      ClassMetrics c;
      c.key = key;
      c.name = key;
      report.classes.push_back(std::move(c));
    }
    return it->second;
  };
  for (const auto& tag : schema.alphabet()) slot_of(tag.str());

  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != pred[s].size()) {
      throw DataError("sentence " + std::to_string(s) + ": gold has " +
                      std::to_string(gold[s].size()) + " tokens but prediction has " +
                      std::to_string(pred[s].size()));
    }
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      const auto g = slot_of(gold[s][i].str());
      const auto p = slot_of(pred[s][i].str());
      ++report.items;
      if (g == p) {
        ++report.classes[g].tp;
      } else {
        ++report.classes[p].fp;
        ++report.classes[g].fn;
      }
    }
  }
  for (auto& c : report.classes) {
    c.support = c.tp + c.fn;
    c.scores = scores_from_counts(c.tp, c.fp, c.fn);
    c.included = exclude.count(c.key) == 0;
  }
  finish_aggregates(report, /*macro_over_supported_only=*/true);
  return report;
}

std::string render_report(const EvalReport& report) {
  std::size_t label_width = std::string("Weighted Average").size();
  for (const auto& c : report.classes) label_width = std::max(label_width, c.name.size());

  auto row = [&](const std::string& label, const Scores& s, const std::string& support) {
    return pad_right(label, label_width) + pad_left(fixed2(s.precision), 8) +
           pad_left(fixed2(s.recall), 8) + pad_left(fixed2(s.f1), 8) + pad_left(support, 10) +
           '\n';
  };

  std::string out = pad_right("", label_width) + pad_left("P", 8) + pad_left("R", 8) +
                    pad_left("F1", 8) + pad_left("Support", 10) + '\n';
  std::size_t included_support = 0;
  for (const auto& c : report.classes) {
    out += row(c.name + (c.included ? "" : "*"), c.scores, std::to_string(c.support));
    if (c.included) included_support += c.support;
  }
  out += std::string(label_width + 34, '-') + '\n';
  out += row("Weighted Average", report.weighted, std::to_string(included_support));
  out += row("Macro", report.macro, "");
  out += row("Micro", report.micro, std::to_string(included_support));
  bool any_excluded = std::any_of(report.classes.begin(), report.classes.end(),
                                  [](const ClassMetrics& c) { return !c.included; });
  if (any_excluded) out += "* excluded from averages\n";
  return out;
}

std::string render_machine(const EvalReport& report) {
  std::string out = "items " + std::to_string(report.items) + '\n';
  auto put = [&out](const std::string& prefix, const Scores& s) {
    out += prefix + ".precision " + format_exact(s.precision) + '\n';
    out += prefix + ".recall " + format_exact(s.recall) + '\n';
    out += prefix + ".f1 " + format_exact(s.f1) + '\n';
  };
  for (const auto& c : report.classes) {
    const std::string prefix = "class." + c.key;
    out += prefix + ".tp " + std::to_string(c.tp) + '\n';
    out += prefix + ".fp " + std::to_string(c.fp) + '\n';
    out += prefix + ".fn " + std::to_string(c.fn) + '\n';
    out += prefix + ".support " + std::to_string(c.support) + '\n';
    put(prefix, c.scores);
  }
  put("weighted", report.weighted);
  put("macro", report.macro);
  put("micro", report.micro);
  return out;
}

}  // namespace deft
