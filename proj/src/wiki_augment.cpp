#include "deft/wiki_augment.hpp"

#include <set>

#include "deft/errors.hpp"
#include "deft/text_util.hpp"

namespace deft {

namespace {

bool is_leading_punct(char c) { return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{'; }

bool is_trailing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' ||
         c == '\'' || c == ')' || c == ']' || c == '}';
}

bool is_copula(std::string_view word) {
  for (std::string_view copula : {"is", "are", "was", "were", "refers", "means"}) {
    if (iequals(word, copula)) return true;
  }
  return false;
}

bool is_final_punct(std::string_view word) {
  return word == "." || word == "!" || word == "?";
}

std::vector<BioTag> tags_for(const AugmentExample& example, const EmitOptions& options) {
  std::vector<BioTag> tags(example.words.size());
  for (std::size_t i = example.term_span.start; i < example.term_span.end; ++i) {
    tags[i] = i == example.term_span.start ? BioTag::begin("Term") : BioTag::inside("Term");
  }
  if (!options.copula_split) return tags;

  std::size_t copula = example.term_span.end;
  while (copula < example.words.size() && !is_copula(example.words[copula].text)) ++copula;
  if (copula >= example.words.size()) return tags;
  std::size_t begin = copula + 1;
  if (iequals(example.words[copula].text, "refers") && begin < example.words.size() &&
      iequals(example.words[begin].text, "to")) {
    ++begin;
  }
  std::size_t end = example.words.size();
  if (end > begin && is_final_punct(example.words[end - 1].text)) --end;
  for (std::size_t i = begin; i < end; ++i) {
    tags[i] = i == begin ? BioTag::begin("Definition") : BioTag::inside("Definition");
  }
  return tags;
}

}  // namespace

std::vector<std::string> extract_terms(const std::vector<Sentence>& sentences) {
  std::vector<std::string> terms;
  std::set<std::string> seen;
  auto flush = [&](std::vector<std::string>& span) {
    if (span.empty()) return;
    std::string term = join(span, " ");
    if (seen.insert(to_lower(term)).second) terms.push_back(std::move(term));
    span.clear();
  };
  for (const auto& sentence : sentences) {
    std::vector<std::string> span;
    for (const auto& token : sentence.tokens) {
      const bool term_tag = !token.tag.is_outside() && token.tag.type == "Term";
      if (term_tag && token.tag.position == TagPosition::kBegin) {
        flush(span);
        span.push_back(token.text);
      } else if (term_tag) {
        span.push_back(token.text);
      } else {
        flush(span);
      }
    }
    flush(span);
  }
  return terms;
}

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    std::size_t end = i;
    if (end == start) break;

    std::vector<Word> trailing;
    while (start < end && is_leading_punct(text[start])) {
      words.push_back({std::string(1, text[start]), start, start + 1});
      ++start;
    }
    while (end > start && is_trailing_punct(text[end - 1])) {
      trailing.push_back({std::string(1, text[end - 1]), end - 1, end});
      --end;
    }
    if (end > start) words.push_back({std::string(text.substr(start, end - start)), start, end});
    words.insert(words.end(), trailing.rbegin(), trailing.rend());
  }
  return words;
}

std::optional<AugmentExample> label_term(std::string_view sentence, std::string_view term) {
  auto words = split_words(sentence);
  auto term_words = split_words(term);
  if (term_words.empty() || term_words.size() > words.size()) return std::nullopt;
  for (std::size_t i = 0; i + term_words.size() <= words.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < term_words.size() && match; ++j) {
      match = iequals(words[i + j].text, term_words[j].text);
    }
    if (!match) continue;
    AugmentExample example;
    example.term = std::string(term);
    example.sentence = std::string(sentence);
    example.words = std::move(words);
    example.term_span = {i, i + term_words.size()};
    return example;
  }
  return std::nullopt;
}

AugmentOutput emit_augmented(const std::vector<AugmentExample>& examples, int task,
                             const EmitOptions& options) {
  if (task != 1 && task != 2) throw ConfigError("task must be 1 or 2");
  AugmentOutput output;
  std::vector<Sentence> sentences;
  for (const auto& example : examples) {
    ++output.start_histogram[example.term_span.start];
    if (task == 1) {
      output.data += collapse_whitespace(example.sentence) + "\t1\n";
      continue;
    }
    auto tags = tags_for(example, options);
    Sentence sentence;
    sentence.source = example.source_url;
    sentence.index = sentences.size();
    for (std::size_t i = 0; i < example.words.size(); ++i) {
      Token token;
      token.text = example.words[i].text;
      token.source = example.source_url.empty() ? "wikipedia" : example.source_url;
      token.start_char = example.words[i].start;
      token.end_char = example.words[i].end;
      token.tag = tags[i];
      sentence.tokens.push_back(std::move(token));
    }
    sentence.label = derive_label(sentence.tokens, LabelRule::kDefinitionSubstring);
    sentences.push_back(std::move(sentence));
  }
  if (task == 2) output.data = serialize_file(sentences);

  output.bias_report = "start_index\tcount\n";
  for (auto [start, count] : output.start_histogram) {
    output.bias_report += std::to_string(start) + '\t' + std::to_string(count) + '\n';
  }
  output.bias_report += "total\t" + std::to_string(examples.size()) + '\n';
  return output;
}

AugmentRun run_augmentation(const std::vector<std::string>& terms, WikiClient& client) {
  AugmentRun run;
  for (const auto& term : terms) {
    if (trim(term).empty()) {
      run.skips.push_back({term, "empty term"});
      continue;
    }
    FetchOutcome outcome;
    try {
      outcome = client.fetch_first_sentence(term);
    } catch (const NetworkError& e) {
      run.skips.push_back({term, std::string("network: ") + e.what(), true});
      continue;
    }
    if (outcome.status != FetchStatus::kFound) {
      run.skips.push_back({term, outcome.reason});
      continue;
    }
    auto example = label_term(outcome.sentence, term);
    if (!example) {
      run.skips.push_back({term, "term not in first sentence"});
      continue;
    }
    example->source_url = outcome.url;
    example->fetched_at = outcome.fetched_at;
    run.examples.push_back(std::move(*example));
  }
  return run;
}

std::string serialize_skips(const std::vector<AugmentSkip>& skips) {
  std::string out;
  for (const auto& skip : skips) {
    out += skip.term + '\t' + skip.reason + '\n';
  }
  return out;
}

}  // namespace deft
