#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deft {

enum class TagPosition { kOutside, kBegin, kInside };

/// One BIO tag: "O", "B-<type>" or "I-<type>".
struct BioTag {
  TagPosition position = TagPosition::kOutside;
  std::string type;  // empty iff position == kOutside

  static BioTag outside() { return {}; }
  static BioTag begin(std::string type) { return {TagPosition::kBegin, std::move(type)}; }
  static BioTag inside(std::string type) { return {TagPosition::kInside, std::move(type)}; }

  /// Parses the hyphenated string form. Returns nullopt for anything that
  /// is not "O", "B-x" or "I-x" with a non-empty x.
  static std::optional<BioTag> parse(std::string_view text);

  std::string str() const;

  bool is_outside() const { return position == TagPosition::kOutside; }

  friend bool operator==(const BioTag&, const BioTag&) = default;
};

/// Sentence-label rule applied when a file is parsed.
enum class LabelRule {
  kDefinitionSubstring,  // any tag type containing "Definition"
  kPrimaryDefinition,    // only the plain "Definition" type
};

/// The closed tag alphabet. Index 0 is always O; type k owns indices
/// 2k+1 (B) and 2k+2 (I).
class TagSchema {
 public:
  explicit TagSchema(std::vector<std::string> types);

  /// Term, Definition, Alias-Term, Referential-Term, Referential-Definition,
  /// Ordered-Term, Ordered-Definition, Secondary-Definition.
  static TagSchema default_schema();

  /// The default inventory plus the extra types that occur in the public
  /// corpus release (Qualifier and the "-frag" variants).
  static TagSchema corpus_release();

  /// One type per line; blank lines and lines starting with '#' are ignored.
  static TagSchema from_file(const std::filesystem::path& path);
  static TagSchema from_text(std::string_view text);

  const std::vector<std::string>& types() const { return types_; }
  std::size_t size() const { return 2 * types_.size() + 1; }

  const BioTag& tag(std::size_t index) const { return alphabet_.at(index); }
  const std::vector<BioTag>& alphabet() const { return alphabet_; }

  std::optional<std::size_t> index_of(const BioTag& tag) const;
  std::optional<std::size_t> index_of(std::string_view tag) const;
  bool contains(const BioTag& tag) const { return index_of(tag).has_value(); }

  /// `previous` is nullopt at sentence start. I-X is legal only after B-X or
  /// I-X; everything else is legal.
  bool legal_transition(std::optional<std::size_t> previous, std::size_t next) const;

  std::string to_text() const;

  friend bool operator==(const TagSchema& a, const TagSchema& b) { return a.types_ == b.types_; }

 private:
  std::vector<std::string> types_;
  std::vector<BioTag> alphabet_;
};

bool is_definition_tag(const BioTag& tag, LabelRule rule);

}  // namespace deft
