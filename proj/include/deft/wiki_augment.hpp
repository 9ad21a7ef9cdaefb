#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deft/corpus.hpp"
#include "deft/wiki_client.hpp"

namespace deft {

/// Contiguous B-Term/I-Term spans joined with spaces, deduplicated
/// case-insensitively, in order of first occurrence.
std::vector<std::string> extract_terms(const std::vector<Sentence>& sentences);

struct Word {
  std::string text;
  std::size_t start = 0;  // byte offsets into the sentence
  std::size_t end = 0;
};

/// Whitespace split with leading/trailing ASCII punctuation peeled off into
/// separate words.
std::vector<Word> split_words(std::string_view text);

struct TermSpan {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  friend bool operator==(const TermSpan&, const TermSpan&) = default;
};

struct AugmentExample {
  std::string term;
  std::string sentence;
  std::vector<Word> words;
  TermSpan term_span;
  std::string source_url;
  std::string fetched_at;
};

/// First case-insensitive, word-aligned occurrence of `term` in `sentence`.
std::optional<AugmentExample> label_term(std::string_view sentence, std::string_view term);

struct EmitOptions {
  /// Tag the words after the first copula following the term as
  /// B-/I-Definition. Off gives term-only labeling.
  bool copula_split = true;
};

struct AugmentOutput {
  std::string data;         // instances (task 1) or token file (task 2)
  std::string bias_report;  // histogram of term-span start indices
  std::map<std::size_t, std::size_t> start_histogram;
};

/// Throws ConfigError for a task other than 1 or 2.
AugmentOutput emit_augmented(const std::vector<AugmentExample>& examples, int task,
                             const EmitOptions& options = {});

struct AugmentSkip {
  std::string term;
  std::string reason;
  bool retryable = false;
};

struct AugmentRun {
  std::vector<AugmentExample> examples;
  std::vector<AugmentSkip> skips;
};

/// Fetches and labels every term. Each input term ends up either as an
/// example or as a skip with a reason.
AugmentRun run_augmentation(const std::vector<std::string>& terms, WikiClient& client);

std::string serialize_skips(const std::vector<AugmentSkip>& skips);

}  // namespace deft
