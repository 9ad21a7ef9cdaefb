#include "commands.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deft/chain_model.hpp"
#include "deft/corpus.hpp"
#include "deft/errors.hpp"
#include "deft/holdout.hpp"
#include "deft/metrics.hpp"
#include "deft/naive_bayes.hpp"
#include "deft/tag_schema.hpp"
#include "deft/text_cleaning.hpp"
#include "deft/text_util.hpp"
#include "deft/wiki_augment.hpp"
#include "deft/wiki_client.hpp"
#include "json.hpp"

namespace deft::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

// ---------------------------------------------------------------------------
// Options shared by every subcommand.

struct Common {
  std::string out;
  std::string schema_file;
  std::string schema_preset = "release";
  std::string label_rule = "substring";
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--out", c.out, "Output directory (created if missing)")->required();
  cmd.add_option("--schema", c.schema_file, "Tag schema file, one type per line");
  cmd.add_option("--schema-preset", c.schema_preset, "Built-in schema when --schema is absent")
      ->check(CLI::IsMember({"default", "release"}))
      ->capture_default_str();
  cmd.add_option("--label-rule", c.label_rule,
                 "substring: any *Definition* tag makes a sentence positive; primary: only "
                 "B-/I-Definition")
      ->check(CLI::IsMember({"substring", "primary"}))
      ->capture_default_str();
}

json common_config(const Common& c) {
  return {{"out", c.out},
          {"schema", c.schema_file},
          {"schema-preset", c.schema_preset},
          {"label-rule", c.label_rule}};
}

void require_exists(const std::string& path, const std::string& what) {
  if (path.empty()) throw ConfigError(what + " is required");
  if (!fs::exists(path)) throw ConfigError(what + " '" + path + "' does not exist");
}

TagSchema resolve_schema(const Common& c) {
  if (!c.schema_file.empty()) {
    require_exists(c.schema_file, "schema file");
    return TagSchema::from_file(c.schema_file);
  }
  return c.schema_preset == "default" ? TagSchema::default_schema() : TagSchema::corpus_release();
}

LabelRule resolve_rule(const Common& c) {
  return c.label_rule == "primary" ? LabelRule::kPrimaryDefinition
                                   : LabelRule::kDefinitionSubstring;
}

std::vector<fs::path> corpus_paths(const std::string& input) {
  if (fs::is_directory(input)) {
    auto files = list_corpus_files(input);
    if (files.empty()) throw DataError("no corpus files in " + input);
    return files;
  }
  return {fs::path(input)};
}

std::vector<Sentence> load_sentences(const std::string& input, const TagSchema& schema,
                                     ParseOptions options) {
  return concat_folder(corpus_paths(input), schema, std::move(options));
}

std::vector<ClassificationInstance> load_instances(const std::string& input,
                                                   const TagSchema& schema,
                                                   const ParseOptions& options) {
  if (fs::is_directory(input)) return to_classification(load_sentences(input, schema, options));
  try {
    return parse_instances(read_file(input));
  } catch (const DataError& e) {
    throw DataError(input + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Manifest: everything needed to rerun a command and check its outputs.

class Manifest {
 public:
  Manifest(std::string command, json config)
      : command_(std::move(command)), config_(std::move(config)) {}

  void add_input(const std::string& path) {
    if (fs::is_directory(path)) {
      for (const auto& file : list_corpus_files(path)) add_input(file.string());
      return;
    }
    inputs_.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64(read_file(path)))}});
  }

  void write_output(const fs::path& dir, const std::string& name, std::string_view content) {
    write_file(dir / name, content);
    outputs_.push_back({{"path", name}, {"fnv1a64", hex64(fnv1a64(content))}});
  }

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  json& counts() { return counts_; }

  void write(const fs::path& dir) const {
    json m;
    m["tool"] = "deft";
    m["version"] = kToolVersion;
    m["command"] = command_;
    m["config"] = config_;
    m["config_hash"] = hex64(fnv1a64(config_.dump()));
    m["seed"] = seed_ ? json(*seed_) : json(nullptr);
    m["command_line"] = command_line();
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    m["counts"] = counts_;
    m["created_at"] = SystemClock().utc_timestamp();
    write_file(dir / "manifest.json", m.dump(2) + "\n");
  }

 private:
  json command_line() const {
    json args = json::array({"deft", command_});
    for (const auto& [key, value] : config_.items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) args.push_back("--" + key);
      } else if (value.is_string()) {
        if (!value.get<std::string>().empty()) {
          args.push_back("--" + key);
          args.push_back(value.get<std::string>());
        }
      } else if (value.is_array()) {
        for (const auto& item : value) {
          args.push_back("--" + key);
          args.push_back(item.is_string() ? item.get<std::string>() : item.dump());
        }
      } else {
        args.push_back("--" + key);
        args.push_back(value.dump());
      }
    }
    return args;
  }

  std::string command_;
  json config_;
  std::optional<std::uint64_t> seed_;
  json inputs_ = json::array();
  json outputs_ = json::array();
  json counts_ = json::object();
};

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

json label_counts(const std::vector<ClassificationInstance>& instances) {
  std::size_t positive = 0;
  for (const auto& instance : instances) positive += instance.label == 1 ? 1 : 0;
  return {{"0", instances.size() - positive}, {"1", positive}};
}

struct CleanSummary {
  std::size_t sentences = 0;
  std::size_t enumerations = 0;
  std::size_t links_removed = 0;
  std::size_t links_kept = 0;

  void add(const CleanReport& report) {
    ++sentences;
    enumerations += report.removed_enumeration ? 1 : 0;
    links_removed += report.removed_links;
    links_kept += report.kept_links;
  }
  json to_json() const {
    return {{"sentences", sentences},
            {"enumerations_stripped", enumerations},
            {"links_removed", links_removed},
            {"links_kept", links_kept}};
  }
  std::string line() const {
    return "sentences " + std::to_string(sentences) + ", enumerations stripped " +
           std::to_string(enumerations) + ", links removed " + std::to_string(links_removed) +
           ", links kept " + std::to_string(links_kept);
  }
};

CleanSummary clean_instances(std::vector<ClassificationInstance>& instances) {
  CleanSummary summary;
  for (auto& instance : instances) {
    auto report = clean_sentence(instance.text);
    summary.add(report);
    instance.text = std::move(report.cleaned);
  }
  return summary;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertOptions {
  Common common;
  std::string input;
  int task = 1;
  bool clean = false;
};

int run_convert(const ConvertOptions& o) {
  require_exists(o.input, "input");
  if (o.task == 2 && o.clean) throw ConfigError("--clean applies to task 1 sentence text only");
  const auto schema = resolve_schema(o.common);
  ParseOptions parse;
  parse.label_rule = resolve_rule(o.common);

  json config = common_config(o.common);
  config["input"] = o.input;
  config["task"] = o.task;
  config["clean"] = o.clean;
  Manifest manifest("convert", config);
  manifest.add_input(o.input);
  const auto out = prepare_out(o.common.out);

  auto groups = parse_files(corpus_paths(o.input), schema, parse);
  std::vector<Sentence> all;
  json files = json::array();
  for (const auto& group : groups) {
    files.push_back({{"path", group.path.string()},
                     {"sentences", group.sentences.size()},
                     {"labels", label_counts(to_classification(group.sentences))}});
    all.insert(all.end(), group.sentences.begin(), group.sentences.end());
  }
  manifest.counts()["files"] = files;
  manifest.counts()["sentences"] = all.size();

  if (o.task == 1) {
    auto instances = to_classification(all);
    manifest.counts()["labels"] = label_counts(instances);
    if (o.clean) {
      auto summary = clean_instances(instances);
      manifest.counts()["cleaning"] = summary.to_json();
      std::cout << "clean: " << summary.line() << '\n';
    }
    manifest.write_output(out, "instances.tsv", serialize_instances(instances));
    std::cout << "convert: " << instances.size() << " instances from " << groups.size()
              << " file(s) -> " << (out / "instances.tsv").string() << '\n';
  } else {
    std::string report = "source\tsentence\tposition\ttag\treason\n";
    std::size_t violations = 0;
    for (const auto& sentence : all) {
      for (const auto& v : validate_sequence(sentence.tags(), schema)) {
        report += sentence.source + '\t' + std::to_string(sentence.index) + '\t' +
                  std::to_string(v.position) + '\t' + v.tag + '\t' + v.reason + '\n';
        ++violations;
      }
    }
    manifest.counts()["bio_violations"] = violations;
    manifest.write_output(out, "tokens.deft", serialize_file(all));
    manifest.write_output(out, "validation.tsv", report);
    std::cout << "convert: " << all.size() << " sentences from " << groups.size()
              << " file(s), " << violations << " BIO violation(s) -> "
              << (out / "tokens.deft").string() << '\n';
  }
  manifest.write(out);
  return kOk;
}

// ---------------------------------------------------------------------------
// clean

struct CleanOptions {
  Common common;
  std::string input;
};

int run_clean(const CleanOptions& o) {
  require_exists(o.input, "input");
  const auto schema = resolve_schema(o.common);
  ParseOptions parse;
  parse.label_rule = resolve_rule(o.common);
  json config = common_config(o.common);
  config["input"] = o.input;
  Manifest manifest("clean", config);
  manifest.add_input(o.input);
  const auto out = prepare_out(o.common.out);

  auto instances = load_instances(o.input, schema, parse);
  auto summary = clean_instances(instances);
  manifest.counts()["cleaning"] = summary.to_json();
  manifest.write_output(out, "instances.tsv", serialize_instances(instances));
  manifest.write(out);
  std::cout << "clean: " << summary.line() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainOptions {
  Common common;
  std::string input;
  int task = 1;
  double alpha = 1.0;
  int epochs = 10;
  std::uint64_t seed = 0;
  double holdout = 0.0;
};

int run_train(const TrainOptions& o) {
  require_exists(o.input, "input");
  if (o.holdout != 0.0 && !(o.holdout > 0.0 && o.holdout < 1.0)) {
    throw ConfigError("--holdout must lie strictly between 0 and 1");
  }
  const auto schema = resolve_schema(o.common);
  ParseOptions parse;
  parse.label_rule = resolve_rule(o.common);

  json config = common_config(o.common);
  config["input"] = o.input;
  config["task"] = o.task;
  config["alpha"] = o.alpha;
  config["epochs"] = o.epochs;
  config["seed"] = o.seed;
  config["holdout"] = o.holdout;
  Manifest manifest("train", config);
  manifest.set_seed(o.seed);
  manifest.add_input(o.input);
  const auto out = prepare_out(o.common.out);

  if (o.task == 1) {
    auto instances = load_instances(o.input, schema, parse);
    if (o.holdout > 0.0) {
      auto split = holdout_split(instances, o.holdout, o.seed);
      manifest.write_output(out, "holdout.tsv", serialize_instances(split.eval));
      manifest.counts()["holdout_instances"] = split.eval.size();
      instances = std::move(split.train);
    }
    auto model = train_nb(instances, o.alpha);
    manifest.write_output(out, "model.nb", model.serialize());
    manifest.counts()["train_instances"] = instances.size();
    manifest.counts()["labels"] = label_counts(instances);
    manifest.counts()["vocabulary"] = model.vocabulary().size();
    std::cout << "train: naive bayes on " << instances.size() << " instances, vocabulary "
              << model.vocabulary().size() << " -> " << (out / "model.nb").string() << '\n';
  } else {
    auto sentences = load_sentences(o.input, schema, parse);
    if (o.holdout > 0.0) {
      auto split = holdout_split(sentences, o.holdout, o.seed);
      manifest.write_output(out, "holdout.deft", serialize_file(split.eval));
      manifest.counts()["holdout_sentences"] = split.eval.size();
      sentences = std::move(split.train);
    }
    PerceptronOptions options;
    options.epochs = o.epochs;
    options.seed = o.seed;
    TrainingStats stats;
    auto model = train_perceptron(sentences, schema, options, &stats);
    manifest.write_output(out, "model.chain", model.serialize());
    manifest.counts()["train_sentences"] = sentences.size();
    manifest.counts()["features"] = model.features().size();
    manifest.counts()["mistakes_per_epoch"] = stats.mistakes_per_epoch;
    std::cout << "train: perceptron on " << sentences.size() << " sentences, " << o.epochs
              << " epoch(s) -> " << (out / "model.chain").string() << '\n';
  }
  manifest.write(out);
  return kOk;
}

// ---------------------------------------------------------------------------
// tag

struct TagOptions {
  Common common;
  std::string model;
  std::string input;
  int task = 1;
  int columns = 8;
};

int run_tag(const TagOptions& o) {
  require_exists(o.model, "model");
  require_exists(o.input, "input");
  const auto schema = resolve_schema(o.common);
  ParseOptions parse;
  parse.label_rule = resolve_rule(o.common);
  parse.layout = column_layout_from_count(o.columns);

  json config = common_config(o.common);
  config["model"] = o.model;
  config["input"] = o.input;
  config["task"] = o.task;
  config["columns"] = o.columns;
  Manifest manifest("tag", config);
  manifest.add_input(o.model);
  manifest.add_input(o.input);
  const auto out = prepare_out(o.common.out);

  auto with_context = [&o](auto&& parse_model) {
    try {
      return parse_model(read_file(o.model));
    } catch (const DataError& e) {
      throw DataError(o.model + ": " + e.what());
    }
  };

  if (o.task == 1) {
    auto model = with_context([](const std::string& text) { return NaiveBayesModel::parse(text); });
    auto instances = load_instances(o.input, schema, parse);
    auto predictions = predict_file(model, instances);
    std::size_t positive = 0;
    for (const auto& p : predictions) positive += p.label == 1 ? 1 : 0;
    manifest.write_output(out, "predictions.txt", serialize_predictions(predictions));
    manifest.counts()["items"] = predictions.size();
    manifest.counts()["predicted_positive"] = positive;
    std::cout << "tag: " << predictions.size() << " sentence(s), " << positive
              << " predicted positive -> " << (out / "predictions.txt").string() << '\n';
  } else {
    auto model = with_context([](const std::string& text) { return ChainModel::parse(text); });
    auto sentences = load_sentences(o.input, schema, parse);
    std::vector<Sentence> tagged;
    tagged.reserve(sentences.size());
    std::size_t tokens = 0;
    std::size_t violations = 0;
    for (const auto& sentence : sentences) {
      auto tags = model.tag(sentence);
      violations += validate_sequence(tags, model.schema()).size();
      auto result = with_tags(sentence, tags, parse.label_rule);
      // Relation columns describe gold annotations, not predictions.
      for (auto& token : result.tokens) {
        token.tag_id = "-1";
        token.root_id = "-1";
        token.relation = "0";
      }
      tokens += result.tokens.size();
      tagged.push_back(std::move(result));
    }
    manifest.write_output(out, "predictions.deft", serialize_file(tagged));
    manifest.counts()["sentences"] = tagged.size();
    manifest.counts()["tokens"] = tokens;
    manifest.counts()["bio_violations"] = violations;
    std::cout << "tag: " << tagged.size() << " sentence(s), " << tokens << " token(s) -> "
              << (out / "predictions.deft").string() << '\n';
  }
  manifest.write(out);
  return kOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
  Common common;
  std::string gold;
  std::string pred;
  int task = 1;
  std::vector<std::string> exclude = {"O"};
};

int run_evaluate(const EvaluateOptions& o) {
  require_exists(o.gold, "gold");
  require_exists(o.pred, "prediction file");
  const auto schema = resolve_schema(o.common);
  ParseOptions parse;
  parse.label_rule = resolve_rule(o.common);

  json config = common_config(o.common);
  config["gold"] = o.gold;
  config["pred"] = o.pred;
  config["task"] = o.task;
  config["exclude"] = o.exclude;
  Manifest manifest("evaluate", config);
  manifest.add_input(o.gold);
  manifest.add_input(o.pred);
  const auto out = prepare_out(o.common.out);

  EvalReport report;
  if (o.task == 1) {
    auto gold = load_instances(o.gold, schema, parse);
    std::vector<Prediction> predictions;
    try {
      predictions = predict_file(read_file(o.pred), gold);
    } catch (const DataError& e) {
      throw DataError(o.pred + ": " + e.what());
    }
    std::vector<int> g;
    std::vector<int> p;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      g.push_back(gold[i].label);
      p.push_back(predictions[i].label);
    }
    report = score_classification(g, p);
  } else {
    auto gold = load_sentences(o.gold, schema, parse);
    auto pred = load_sentences(o.pred, schema, parse);
    std::vector<std::vector<BioTag>> g;
    std::vector<std::vector<BioTag>> p;
    for (const auto& s : gold) g.push_back(s.tags());
    for (const auto& s : pred) p.push_back(s.tags());
    report = score_tokens(g, p, schema, std::set<std::string>(o.exclude.begin(), o.exclude.end()));
  }

  const auto table = render_report(report);
  manifest.write_output(out, "report.txt", table);
  manifest.write_output(out, "report.machine.txt", render_machine(report));
  manifest.counts()["items"] = report.items;
  manifest.counts()["macro_f1"] = report.macro.f1;
  manifest.counts()["weighted_f1"] = report.weighted.f1;
  manifest.counts()["micro_f1"] = report.micro.f1;
  manifest.write(out);
  std::cout << table;
  return kOk;
}

// ---------------------------------------------------------------------------
// augment

struct AugmentOptions {
  Common common;
  std::string terms;
  std::string terms_from;
  int task = 1;
  bool offline = false;
  std::string cache;
  double rate = 1.0;
  std::string base_url = std::string(kDefaultSummaryEndpoint);
  std::string contact;
  int timeout = 10;
  bool term_only = false;
};

std::vector<std::string> read_terms(const std::string& path) {
  std::vector<std::string> terms;
  const std::string content = read_file(path);
  for (auto line : split_lines(content)) {
    auto term = trim(line);
    if (term.empty() || term.front() == '#') continue;
    terms.emplace_back(term);
  }
  return terms;
}

int run_augment(const AugmentOptions& o) {
  if (o.terms.empty() == o.terms_from.empty()) {
    throw ConfigError("give exactly one of --terms or --terms-from");
  }
  require_exists(o.terms.empty() ? o.terms_from : o.terms, "terms source");
  if (o.timeout <= 0) throw ConfigError("--timeout must be positive");
  const auto schema = resolve_schema(o.common);
  ParseOptions parse;
  parse.label_rule = resolve_rule(o.common);

  json config = common_config(o.common);
  config["terms"] = o.terms;
  config["terms-from"] = o.terms_from;
  config["task"] = o.task;
  config["offline"] = o.offline;
  config["cache"] = o.cache;
  config["rate"] = o.rate;
  config["base-url"] = o.base_url;
  config["contact"] = o.contact;
  config["timeout"] = o.timeout;
  config["term-only"] = o.term_only;
  Manifest manifest("augment", config);
  manifest.add_input(o.terms.empty() ? o.terms_from : o.terms);

  FetchPolicy policy;
  policy.rate_limit = o.rate;
  policy.cache_dir = o.cache;
  policy.offline = o.offline;
  policy.base_url = o.base_url;
  policy.timeout = std::chrono::seconds(o.timeout);
  std::string contact = o.contact;
  if (contact.empty()) {
    if (const char* env = std::getenv(kContactEnvVar)) contact = env;
  }
  policy.user_agent = user_agent_for(contact);
  validate_policy(policy);

  auto terms = o.terms.empty() ? extract_terms(load_sentences(o.terms_from, schema, parse))
                               : read_terms(o.terms);
  const auto out = prepare_out(o.common.out);

  std::unique_ptr<HttpTransport> transport;
  if (!policy.offline) transport = make_http_transport(policy.timeout);
  SystemClock clock;
  WikiClient client(policy, transport.get(), clock);
  auto run = run_augmentation(terms, client);

  EmitOptions emit;
  emit.copula_split = !o.term_only;
  auto output = emit_augmented(run.examples, o.task, emit);
  std::size_t retryable = 0;
  for (const auto& skip : run.skips) retryable += skip.retryable ? 1 : 0;

  manifest.write_output(out, o.task == 1 ? "augmented.tsv" : "augmented.deft", output.data);
  manifest.write_output(out, "position_bias.tsv", output.bias_report);
  manifest.write_output(out, "skips.tsv", serialize_skips(run.skips));
  manifest.counts()["terms"] = terms.size();
  manifest.counts()["examples"] = run.examples.size();
  manifest.counts()["skipped"] = run.skips.size();
  manifest.counts()["retryable"] = retryable;
  manifest.write(out);

  std::cout << "augment: " << run.examples.size() << " example(s), " << run.skips.size()
            << " skipped (" << retryable << " retryable), " << client.network_requests()
            << " network request(s)\n";
  if (retryable > 0) {
    std::cerr << "deft: " << retryable
              << " term(s) failed with network errors; rerun to retry them\n";
    return kNetworkError;
  }
  return kOk;
}

void add_task(CLI::App& cmd, int& task) {
  cmd.add_option("--task", task, "1: sentence classification, 2: sequence labeling")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Definition-extraction toolkit for DEFT-format corpora"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Concatenate a corpus folder into task data");
  add_common(*convert_cmd, convert.common);
  convert_cmd->add_option("--input", convert.input, "Corpus folder or single token file")
      ->required();
  add_task(*convert_cmd, convert.task);
  convert_cmd->add_flag("--clean", convert.clean, "Strip enumerators and parenthesized links");

  CleanOptions clean;
  auto* clean_cmd = app.add_subcommand("clean", "Clean an instances file (text<TAB>label)");
  add_common(*clean_cmd, clean.common);
  clean_cmd->add_option("--input", clean.input, "Instances file or corpus folder")->required();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train Naive Bayes (task 1) or the tagger (task 2)");
  add_common(*train_cmd, train.common);
  train_cmd->add_option("--input", train.input, "Training data: corpus folder or converted file")
      ->required();
  add_task(*train_cmd, train.task);
  train_cmd->add_option("--alpha", train.alpha, "Additive smoothing")->capture_default_str();
  train_cmd->add_option("--epochs", train.epochs, "Perceptron epochs")->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Shuffling and hold-out seed")->capture_default_str();
  train_cmd->add_option("--holdout", train.holdout,
                        "Fraction held out for evaluation (0 disables)")
      ->capture_default_str();

  TagOptions tag;
  auto* tag_cmd = app.add_subcommand("tag", "Predict with a trained model");
  tag_cmd->alias("predict");
  add_common(*tag_cmd, tag.common);
  tag_cmd->add_option("--model", tag.model, "Model file from train")->required();
  tag_cmd->add_option("--input", tag.input, "Data to label")->required();
  add_task(*tag_cmd, tag.task);
  tag_cmd->add_option("--columns", tag.columns, "Columns in token files (8, 5 or 4)")
      ->check(CLI::IsMember({4, 5, 8}))
      ->capture_default_str();

  EvaluateOptions evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against gold data");
  add_common(*evaluate_cmd, evaluate.common);
  evaluate_cmd->add_option("--gold", evaluate.gold, "Gold instances/token file or folder")
      ->required();
  evaluate_cmd->add_option("--pred", evaluate.pred, "Predictions (label[<TAB>score] or token file)")
      ->required();
  add_task(*evaluate_cmd, evaluate.task);
  evaluate_cmd->add_option("--exclude", evaluate.exclude, "Tags left out of task 2 averages")
      ->capture_default_str();

  AugmentOptions augment;
  auto* augment_cmd = app.add_subcommand("augment", "Build extra positives from encyclopedia summaries");
  add_common(*augment_cmd, augment.common);
  augment_cmd->add_option("--terms", augment.terms, "File with one term per line");
  augment_cmd->add_option("--terms-from", augment.terms_from, "Corpus folder to take Term spans from");
  add_task(*augment_cmd, augment.task);
  augment_cmd->add_flag("--offline", augment.offline, "Serve from the cache only");
  augment_cmd->add_option("--cache", augment.cache, "Response cache directory");
  augment_cmd->add_option("--rate", augment.rate, "Requests per second")->capture_default_str();
  augment_cmd->add_option("--base-url", augment.base_url, "Summary endpoint prefix")
      ->capture_default_str();
  augment_cmd->add_option("--contact", augment.contact,
                          std::string("Contact for the User-Agent (default: $") + kContactEnvVar +
                              ")");
  augment_cmd->add_option("--timeout", augment.timeout, "Request timeout in seconds")
      ->capture_default_str();
  augment_cmd->add_flag("--term-only", augment.term_only,
                        "Task 2: tag only the term, not the text after the copula");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (convert_cmd->parsed()) return run_convert(convert);
    if (clean_cmd->parsed()) return run_clean(clean);
    if (train_cmd->parsed()) return run_train(train);
    if (tag_cmd->parsed()) return run_tag(tag);
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate);
    if (augment_cmd->parsed()) return run_augment(augment);
  } catch (const ConfigError& e) {
    std::cerr << "deft: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NetworkError& e) {
    std::cerr << "deft: network error: " << e.what() << '\n';
    return kNetworkError;
  } catch (const DataError& e) {
    std::cerr << "deft: data error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "deft: file error: " << e.what() << '\n';
    return kDataError;
  }
  return kConfigError;
}

}  // namespace deft::cli
