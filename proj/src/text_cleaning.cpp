#include "deft/text_cleaning.hpp"

#include <optional>

#include "deft/text_util.hpp"

namespace deft {

namespace {

bool is_enumeration_mark(char c) { return c == '.' || c == ')' || c == ':'; }

std::size_t skip_spaces(std::string_view text, std::size_t i) {
  while (i < text.size() && is_space(text[i])) ++i;
  return i;
}

// "[link]", allowing whitespace inside the brackets as produced by
// space-joined tokens ("[ link ]"). Returns the end offset on a match.
std::optional<std::size_t> match_link(std::string_view text, std::size_t i) {
  if (i >= text.size() || text[i] != '[') return std::nullopt;
  i = skip_spaces(text, i + 1);
  if (text.substr(i, 4) != "link") return std::nullopt;
  i = skip_spaces(text, i + 4);
  if (i >= text.size() || text[i] != ']') return std::nullopt;
  return i + 1;
}

// "([link])", again tolerating inner whitespace: "( [link] )".
std::optional<std::size_t> match_parenthesized_link(std::string_view text, std::size_t i) {
  if (i >= text.size() || text[i] != '(') return std::nullopt;
  auto inner = match_link(text, skip_spaces(text, i + 1));
  if (!inner) return std::nullopt;
  std::size_t j = skip_spaces(text, *inner);
  if (j >= text.size() || text[j] != ')') return std::nullopt;
  return j + 1;
}

std::size_t count_bare_links(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (auto end = match_parenthesized_link(text, i)) {
      i = *end - 1;
    } else if (auto link_end = match_link(text, i)) {
      ++count;
      i = *link_end - 1;
    }
  }
  return count;
}

}  // namespace

CleanReport strip_enumeration(std::string_view text) {
  CleanReport report;
  report.original = std::string(text);
  report.kept_links = count_bare_links(text);

  std::size_t i = skip_spaces(text, 0);
  const std::size_t digits = i;
  while (i < text.size() && is_digit(text[i])) ++i;
  bool matched = i > digits;
  if (matched) {
    i = skip_spaces(text, i);  // tokenized form "41 ."
    matched = i < text.size() && is_enumeration_mark(text[i]);
  }
  if (matched) {
    const std::size_t after_mark = i + 1;
    i = skip_spaces(text, after_mark);
    matched = i > after_mark;
  }
  if (matched) {
    report.cleaned = std::string(text.substr(i));
    report.removed_enumeration = true;
  } else {
    report.cleaned = report.original;
  }
  return report;
}

CleanReport strip_links(std::string_view text) {
  CleanReport report;
  report.original = std::string(text);
  std::string out(text);

  std::size_t at = 0;
  while (at < out.size()) {
    auto end = match_parenthesized_link(out, at);
    if (!end) {
      ++at;
      continue;
    }
    std::size_t begin = at;
    std::size_t stop = *end;
    while (begin > 0 && is_space(out[begin - 1])) --begin;
    if (begin == 0) stop = skip_spaces(out, stop);
    out.erase(begin, stop - begin);
    ++report.removed_links;
    at = begin;
  }
  report.kept_links = count_bare_links(out);
  report.cleaned = std::move(out);
  return report;
}

CleanReport clean_sentence(std::string_view text) {
  CleanReport report;
  report.original = std::string(text);
  std::string current = collapse_whitespace(text);
  report.kept_links = count_bare_links(current);
  while (true) {
    auto enumeration = strip_enumeration(current);
    auto links = strip_links(enumeration.cleaned);
    report.removed_enumeration = report.removed_enumeration || enumeration.removed_enumeration;
    report.removed_links += links.removed_links;
    report.kept_links = links.kept_links;
    std::string next = collapse_whitespace(links.cleaned);
    if (next == current) break;
    current = std::move(next);
  }
  report.cleaned = std::move(current);
  return report;
}

}  // namespace deft
