#include "deft/corpus.hpp"

#include <algorithm>
#include <charconv>

#include "deft/errors.hpp"
#include "deft/text_util.hpp"

namespace deft {

namespace {

std::uint64_t parse_offset(std::string_view field, std::size_t line, const char* name) {
  std::uint64_t value = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
    throw ParseError(line, std::string(name) + " offset '" + std::string(field) +
                               "' is not a non-negative integer");
  }
  return value;
}

Sentence finish_sentence(std::vector<Token>&& tokens, const ParseOptions& options,
                         std::size_t index) {
  Sentence sentence;
  sentence.label = derive_label(tokens, options.label_rule);
  sentence.tokens = std::move(tokens);
  sentence.source = options.source_name;
  sentence.index = index;
  return sentence;
}

}  // namespace

std::vector<BioTag> Sentence::tags() const {
  std::vector<BioTag> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) out.push_back(token.tag);
  return out;
}

ColumnLayout column_layout_from_count(int columns) {
  switch (columns) {
    case 8:
      return ColumnLayout::kFull;
    case 5:
      return ColumnLayout::kTagged;
    case 4:
      return ColumnLayout::kUntagged;
    default:
      throw ConfigError("unsupported column count " + std::to_string(columns) +
                        " (expected 4, 5 or 8)");
  }
}

int derive_label(const std::vector<Token>& tokens, LabelRule rule) {
  return std::any_of(tokens.begin(), tokens.end(),
                     [rule](const Token& t) { return is_definition_tag(t.tag, rule); })
             ? 1
             : 0;
}

std::vector<Sentence> parse_file(std::string_view content, const TagSchema& schema,
                                 const ParseOptions& options) {
  const auto columns = static_cast<std::size_t>(options.layout);
  std::vector<Sentence> sentences;
  std::vector<Token> current;
  std::size_t line_no = 0;

  for (auto raw : split_lines(content)) {
    ++line_no;
    if (trim(raw).empty()) {
      if (!current.empty()) {
        sentences.push_back(finish_sentence(std::move(current), options, sentences.size()));
        current.clear();
      }
      continue;
    }
    auto fields = split(raw, '\t');
    if (fields.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, found " +
                                    std::to_string(fields.size()));
    }
    for (auto& field : fields) field = trim(field);

    Token token;
    token.text = std::string(fields[0]);
    if (token.text.empty()) throw ParseError(line_no, "empty token");
    token.source = std::string(fields[1]);
    token.start_char = parse_offset(fields[2], line_no, "start");
    token.end_char = parse_offset(fields[3], line_no, "end");
    if (token.end_char <= token.start_char) {
      throw ParseError(line_no, "end offset must exceed start offset");
    }
    if (!current.empty() && token.start_char < current.back().start_char) {
      throw ParseError(line_no, "offsets decrease within a sentence");
    }
    if (options.layout != ColumnLayout::kUntagged) {
      auto tag = BioTag::parse(fields[4]);
      if (!tag || !schema.contains(*tag)) throw SchemaError(std::string(fields[4]), line_no);
      token.tag = std::move(*tag);
    }
    if (options.layout == ColumnLayout::kFull) {
      token.tag_id = std::string(fields[5]);
      token.root_id = std::string(fields[6]);
      token.relation = std::string(fields[7]);
    }
    current.push_back(std::move(token));
  }
  if (!current.empty()) {
    sentences.push_back(finish_sentence(std::move(current), options, sentences.size()));
  }
  return sentences;
}

std::string serialize_file(const std::vector<Sentence>& sentences, ColumnLayout layout) {
  std::string out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (s) out += '\n';
    for (const auto& token : sentences[s].tokens) {
      out += token.text;
      out += '\t';
      out += token.source;
      out += '\t';
      out += std::to_string(token.start_char);
      out += '\t';
      out += std::to_string(token.end_char);
      if (layout != ColumnLayout::kUntagged) {
        out += '\t';
        out += token.tag.str();
      }
      if (layout == ColumnLayout::kFull) {
        out += '\t';
        out += token.tag_id;
        out += '\t';
        out += token.root_id;
        out += '\t';
        out += token.relation;
      }
      out += '\n';
    }
  }
  return out;
}

std::string normalize_token_file(std::string_view content) {
  std::string out;
  bool pending_blank = false;
  for (auto line : split_lines(content)) {
    if (trim(line).empty()) {
      pending_blank = !out.empty();
      continue;
    }
    if (pending_blank) out += '\n';
    pending_blank = false;
    auto fields = split(line, '\t');
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += '\t';
      out += trim(fields[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::filesystem::path> list_corpus_files(const std::filesystem::path& folder) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(folder)) throw ConfigError("not a directory: " + folder.string());
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(folder)) {
    if (!entry.is_regular_file()) continue;
    auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<FileSentences> parse_files(std::vector<std::filesystem::path> paths,
                                       const TagSchema& schema, ParseOptions options) {
  std::sort(paths.begin(), paths.end());
  std::vector<FileSentences> out;
  out.reserve(paths.size());
  for (const auto& path : paths) {
    options.source_name = path.string();
    std::string content = read_file(path);
    try {
      out.push_back({path, parse_file(content, schema, options)});
    } catch (const DataError& e) {
      throw DataError(path.string() + ": " + e.what());
    }
  }
  return out;
}

std::vector<Sentence> concat_folder(std::vector<std::filesystem::path> paths,
                                    const TagSchema& schema, ParseOptions options) {
  std::vector<Sentence> all;
  for (auto& file : parse_files(std::move(paths), schema, std::move(options))) {
    std::move(file.sentences.begin(), file.sentences.end(), std::back_inserter(all));
  }
  return all;
}

std::vector<ClassificationInstance> to_classification(const std::vector<Sentence>& sentences) {
  std::vector<ClassificationInstance> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) {
    std::vector<std::string> words;
    words.reserve(sentence.tokens.size());
    for (const auto& token : sentence.tokens) words.push_back(token.text);
    out.push_back({join(words, " "), sentence.label});
  }
  return out;
}

std::string serialize_instances(const std::vector<ClassificationInstance>& instances) {
  std::string out;
  for (const auto& instance : instances) {
    out += instance.text;
    out += '\t';
    out += instance.label ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::vector<ClassificationInstance> parse_instances(std::string_view content) {
  std::vector<ClassificationInstance> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(content)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto tab = line.rfind('\t');
    if (tab == std::string_view::npos) throw ParseError(line_no, "missing label column");
    auto label = trim(line.substr(tab + 1));
    if (label != "0" && label != "1") {
      throw ParseError(line_no, "label must be 0 or 1, got '" + std::string(label) + "'");
    }
    out.push_back({std::string(line.substr(0, tab)), label == "1" ? 1 : 0});
  }
  return out;
}

}  // namespace deft
