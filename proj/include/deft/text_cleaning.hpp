#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace deft {

struct CleanReport {
  std::string original;
  std::string cleaned;
  bool removed_enumeration = false;
  std::size_t removed_links = 0;
  std::size_t kept_links = 0;
};

inline constexpr std::string_view kLinkPlaceholder = "[link]";
inline constexpr std::string_view kParenthesizedLink = "([link])";

/// Removes one leading enumerator: optional whitespace, digits, one of
/// '.', ')' or ':', then at least one whitespace character (all of which
/// is dropped). Whitespace between the digits and the mark is allowed so
/// that space-joined tokens ("41 . The") match. "3.5 million" is left alone.
CleanReport strip_enumeration(std::string_view text);

/// Deletes every "([link])" together with the whitespace before it (or
/// after it, at the start of the text). Inner whitespace is tolerated
/// ("( [link] )"). Bare "[link]" is kept.
CleanReport strip_links(std::string_view text);

/// Both rules, then whitespace collapsed and trimmed; repeated until the
/// text stops changing so that cleaning is idempotent.
CleanReport clean_sentence(std::string_view text);

}  // namespace deft
