#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "deft/tag_schema.hpp"

namespace deft {

/// One row of a token file.
struct Token {
  std::string text;
  std::string source;
  std::uint64_t start_char = 0;
  std::uint64_t end_char = 0;
  BioTag tag;
  std::string tag_id = "-1";
  std::string root_id = "-1";
  std::string relation = "0";

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string source;      // file the sentence was read from
  std::size_t index = 0;   // position within that file
  int label = 0;

  std::vector<BioTag> tags() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct ClassificationInstance {
  std::string text;
  int label = 0;

  friend bool operator==(const ClassificationInstance&, const ClassificationInstance&) = default;
};

/// Column layouts of token files:
///   8: TOKEN SOURCE START END TAG TAG_ID ROOT_ID RELATION
///   5: TOKEN SOURCE START END TAG (relation columns read as -1/-1/0)
///   4: TOKEN SOURCE START END (untagged; every tag reads as O)
enum class ColumnLayout { kFull = 8, kTagged = 5, kUntagged = 4 };

ColumnLayout column_layout_from_count(int columns);

struct ParseOptions {
  ColumnLayout layout = ColumnLayout::kFull;
  LabelRule label_rule = LabelRule::kDefinitionSubstring;
  std::string source_name;  // copied into Sentence::source
};

/// Label derived from the tags of a sentence.
int derive_label(const std::vector<Token>& tokens, LabelRule rule);

/// Parses a token file. Accepts LF and CRLF, runs of blank lines and
/// trailing whitespace; fields are trimmed. Throws ParseError or SchemaError.
std::vector<Sentence> parse_file(std::string_view content, const TagSchema& schema,
                                 const ParseOptions& options = {});

/// Tab-separated rows, LF endings, one blank line between sentences and
/// none after the last.
std::string serialize_file(const std::vector<Sentence>& sentences,
                           ColumnLayout layout = ColumnLayout::kFull);

/// Canonical form used to compare files: CRLF -> LF, fields trimmed,
/// blank-line runs collapsed, leading/trailing blank lines dropped.
std::string normalize_token_file(std::string_view content);

/// Regular, non-hidden files directly under `folder`, sorted by path.
std::vector<std::filesystem::path> list_corpus_files(const std::filesystem::path& folder);

struct FileSentences {
  std::filesystem::path path;
  std::vector<Sentence> sentences;
};

/// Parses every file (paths sorted lexicographically) and keeps them grouped.
std::vector<FileSentences> parse_files(std::vector<std::filesystem::path> paths,
                                       const TagSchema& schema, ParseOptions options = {});

/// Concatenation of parse_files in path order. Errors name the failing file.
std::vector<Sentence> concat_folder(std::vector<std::filesystem::path> paths,
                                    const TagSchema& schema, ParseOptions options = {});

std::vector<ClassificationInstance> to_classification(const std::vector<Sentence>& sentences);

/// `text<TAB>label` per line.
std::string serialize_instances(const std::vector<ClassificationInstance>& instances);
std::vector<ClassificationInstance> parse_instances(std::string_view content);

}  // namespace deft
