#include "deft/tag_schema.hpp"

#include <set>
#include <stdexcept>

#include "deft/errors.hpp"
#include "deft/text_util.hpp"

namespace deft {

std::optional<BioTag> BioTag::parse(std::string_view text) {
  if (text == "O") return BioTag::outside();
  if (text.size() < 3 || text[1] != '-') return std::nullopt;
  std::string type(text.substr(2));
  switch (text[0]) {
    case 'B':
      return BioTag::begin(std::move(type));
    case 'I':
      return BioTag::inside(std::move(type));
    default:
      return std::nullopt;
  }
}

std::string BioTag::str() const {
  switch (position) {
    case TagPosition::kBegin:
      return "B-" + type;
    case TagPosition::kInside:
      return "I-" + type;
    case TagPosition::kOutside:
      break;
  }
  return "O";
}

TagSchema::TagSchema(std::vector<std::string> types) : types_(std::move(types)) {
  std::set<std::string> seen;
  alphabet_.reserve(2 * types_.size() + 1);
  alphabet_.push_back(BioTag::outside());
  for (const auto& type : types_) {
    if (type.empty() || type.find_first_of(" \t\r\n") != std::string::npos) {
      throw ConfigError("invalid tag type '" + type + "'");
    }
    if (!seen.insert(type).second) throw ConfigError("duplicate tag type '" + type + "'");
    alphabet_.push_back(BioTag::begin(type));
    alphabet_.push_back(BioTag::inside(type));
  }
}

TagSchema TagSchema::default_schema() {
  return TagSchema({"Term", "Definition", "Alias-Term", "Referential-Term",
                    "Referential-Definition", "Ordered-Term", "Ordered-Definition",
                    "Secondary-Definition"});
}

TagSchema TagSchema::corpus_release() {
  auto types = default_schema().types();
  for (const char* extra : {"Qualifier", "Term-frag", "Definition-frag", "Alias-Term-frag",
                            "Referential-Term-frag", "Referential-Definition-frag",
                            "Ordered-Term-frag", "Ordered-Definition-frag",
                            "Secondary-Definition-frag"}) {
    types.emplace_back(extra);
  }
  return TagSchema(std::move(types));
}

TagSchema TagSchema::from_text(std::string_view text) {
  std::vector<std::string> types;
  for (auto line : split_lines(text)) {
    auto trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    types.emplace_back(trimmed);
  }
  if (types.empty()) throw ConfigError("schema defines no tag types");
  return TagSchema(std::move(types));
}

TagSchema TagSchema::from_file(const std::filesystem::path& path) {
  return from_text(read_file(path));
}

std::optional<std::size_t> TagSchema::index_of(const BioTag& tag) const {
  if (tag.is_outside()) return tag.type.empty() ? std::optional<std::size_t>(0) : std::nullopt;
  for (std::size_t k = 0; k < types_.size(); ++k) {
    if (types_[k] == tag.type) return 2 * k + (tag.position == TagPosition::kBegin ? 1 : 2);
  }
  return std::nullopt;
}

std::optional<std::size_t> TagSchema::index_of(std::string_view tag) const {
  auto parsed = BioTag::parse(tag);
  if (!parsed) return std::nullopt;
  return index_of(*parsed);
}

bool TagSchema::legal_transition(std::optional<std::size_t> previous, std::size_t next) const {
  const BioTag& to = alphabet_.at(next);
  if (to.position != TagPosition::kInside) return true;
  if (!previous) return false;
  const BioTag& from = alphabet_.at(*previous);
  return !from.is_outside() && from.type == to.type;
}

std::string TagSchema::to_text() const {
  std::string out;
  for (const auto& type : types_) {
    out += type;
    out += '\n';
  }
  return out;
}

bool is_definition_tag(const BioTag& tag, LabelRule rule) {
  if (tag.is_outside()) return false;
  if (rule == LabelRule::kPrimaryDefinition) return tag.type == "Definition";
  return tag.type.find("Definition") != std::string::npos;
}

}  // namespace deft
