#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cskb/agreement.hpp"
#include "cskb/classify.hpp"
#include "cskb/error.hpp"
#include "cskb/hash.hpp"
#include "cskb/ingest.hpp"
#include "cskb/io.hpp"
#include "cskb/lexicon.hpp"
#include "cskb/metrics.hpp"
#include "cskb/mitigate.hpp"
#include "cskb/promptgen.hpp"
#include "cskb/report.hpp"
#include "cskb/sentiment.hpp"
#include "cskb/statement_io.hpp"
#include "cskb/statementize.hpp"

#ifndef CSKB_AUDIT_VERSION
#define CSKB_AUDIT_VERSION "0.0.0"
#endif

namespace cskb::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kStreamBlock = 65536;

// --- manifest ----------------------------------------------------------------

std::uint64_t hash_file(const fs::path& path, std::uintmax_t& bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Fnv1a64 h;
  std::string buf(1 << 16, '\0');
  bytes = 0;
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    h.update(std::string_view(buf.data(), got));
    bytes += got;
  }
  return h.digest();
}

std::string hex64(std::uint64_t v) { return StatementId(v).hex(); }

class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void input(const std::string& role, const fs::path& path) {
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) input(role, f);
      return;
    }
    std::uintmax_t bytes = 0;
    const std::uint64_t digest = hash_file(path, bytes);
    inputs_.push_back({{"role", role}, {"path", path.string()}, {"bytes", bytes}, {"fnv1a64", hex64(digest)}});
  }
  void output(const fs::path& path) { outputs_.push_back(path.string()); }
  json& stats() { return stats_; }

  // Effective option values of the subcommand, whether given on the command
  // line, in a config file, or left at their defaults.
  void options_from(const CLI::App& sub) {
    std::map<std::string, json> sorted;
    for (const CLI::Option* opt : sub.get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name.empty()) continue;
      const auto& results = opt->results();
      if (!results.empty()) {
        sorted[name] = results.size() == 1 ? json(results.front()) : json(results);
      } else if (!opt->get_default_str().empty()) {
        sorted[name] = opt->get_default_str();
      }
    }
    options_ = json::object();
    for (auto& [k, v] : sorted) options_[k] = std::move(v);
  }

  void write(const fs::path& path) const {
    json j;
    j["tool"] = "cskb-audit";
    j["version"] = CSKB_AUDIT_VERSION;
    j["command"] = command_;
    j["options"] = options_;
    j["config_hash"] = hex64(fnv1a64(options_.dump()));
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    j["stats"] = stats_.is_null() ? json::object() : stats_;
    write_file_atomic(path, j.dump(2) + "\n");
  }

 private:
  std::string command_;
  json options_ = json::object();
  json inputs_ = json::array();
  json outputs_ = json::array();
  json stats_;
};

fs::path manifest_path_for(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

// --- shared option groups ----------------------------------------------------

struct LexiconFlags {
  std::string targets;
  bool no_plural = false;

  void add(CLI::App* app, bool required) {
    auto* o = app->add_option("--targets", targets, "Target lexicon TSV (target, category, aliases)");
    if (required) o->required();
    app->add_flag("--no-plural-aliases", no_plural, "Do not add '<form>s' plural surface forms");
  }
  TargetLexicon load(Manifest& m) const {
    m.input("targets", targets);
    TargetLoadOptions o;
    o.plural_aliases = !no_plural;
    return load_targets(targets, o);
  }
};

struct ClassifierFlags {
  std::string kind;
  std::string vader_lexicon;
  std::string emoji_lexicon;
  double threshold = kDefaultPolarityThreshold;
  std::string keywords_pos;
  std::string keywords_neg;
  std::string endpoint;
  std::size_t batch_size = 100;
  std::size_t max_in_flight = 4;
  std::size_t retries = 2;
  std::size_t timeout_ms = 30000;
  std::string remote_measure = "regard";
  std::size_t threads = 0;

  void add(CLI::App* app, bool required) {
    auto* o = app->add_option("--classifier", kind, "sentiment | keyword | remote")
                  ->check(CLI::IsMember({"sentiment", "keyword", "remote"}));
    if (required) o->required();
    app->add_option("--vader-lexicon", vader_lexicon, "VADER lexicon file (sentiment classifier)");
    app->add_option("--emoji-lexicon", emoji_lexicon, "Emoji description file (sentiment classifier, optional)");
    app->add_option("--threshold", threshold, "Compound score threshold for polarity")->capture_default_str();
    app->add_option("--keywords-pos", keywords_pos, "Positive keyword list (keyword classifier)");
    app->add_option("--keywords-neg", keywords_neg, "Negative keyword list (keyword classifier)");
    app->add_option("--endpoint", endpoint, "Labeler service base URL (remote classifier)");
    app->add_option("--batch-size", batch_size, "Texts per labeler request")->capture_default_str();
    app->add_option("--max-in-flight", max_in_flight, "Concurrent labeler requests")->capture_default_str();
    app->add_option("--retries", retries, "Retries after a connection failure or 5xx")->capture_default_str();
    app->add_option("--timeout-ms", timeout_ms, "Per-request timeout in milliseconds")->capture_default_str();
    app->add_option("--remote-measure", remote_measure, "Measure recorded for remote labels")
        ->check(CLI::IsMember({"sentiment", "regard", "keyword"}))
        ->capture_default_str();
    app->add_option("--threads", threads, "Classifier worker threads (0: all cores)")->capture_default_str();
  }

  static void need(const std::string& value, const char* flag, const std::string& kind) {
    if (value.empty()) throw ConfigError(std::string(flag) + " is required with --classifier " + kind);
  }

  std::unique_ptr<Classifier> build(Manifest& m) const {
    if (kind == "sentiment") {
      need(vader_lexicon, "--vader-lexicon", kind);
      m.input("vader_lexicon", vader_lexicon);
      std::optional<fs::path> emoji;
      if (!emoji_lexicon.empty()) {
        emoji = emoji_lexicon;
        m.input("emoji_lexicon", emoji_lexicon);
      }
      return std::make_unique<SentimentClassifier>(SentimentLexicon::load(vader_lexicon, emoji), threshold);
    }
    if (kind == "keyword") {
      need(keywords_pos, "--keywords-pos", kind);
      need(keywords_neg, "--keywords-neg", kind);
      m.input("keywords_pos", keywords_pos);
      m.input("keywords_neg", keywords_neg);
      return std::make_unique<KeywordClassifier>(load_keyword_lexicon(keywords_pos, keywords_neg));
    }
    if (kind == "remote") {
      need(endpoint, "--endpoint", kind);
      RemoteOptions o;
      o.endpoint = endpoint;
      o.batch_size = batch_size;
      o.max_in_flight = max_in_flight;
      o.retries = retries;
      o.timeout = std::chrono::milliseconds(timeout_ms);
      return std::make_unique<RemoteClassifier>(o, *parse_measure(remote_measure));
    }
    throw ConfigError("unknown classifier '" + kind + "'");
  }
};

// Loads sidecar label files into one set per measure. A measure appearing in
// two files is a conflict.
std::vector<LabelSet> load_label_sets(const std::vector<std::string>& paths, Manifest& m) {
  std::vector<LabelSet> sets;
  for (const auto& p : paths) {
    m.input("labels", p);
    for (auto& set : LabelSet::from_sidecar(load_sidecar_labels(p))) {
      for (const auto& existing : sets)
        if (existing.measure == set.measure)
          throw ConflictError("measure '" + std::string(to_string(set.measure)) + "' labeled in more than one file");
      sets.push_back(std::move(set));
    }
  }
  return sets;
}

template <typename F>
void for_each_block(const fs::path& statements, F&& f) {
  StatementReader reader(statements);
  std::vector<Statement> block;
  block.reserve(kStreamBlock);
  while (auto s = reader.next()) {
    block.push_back(std::move(*s));
    if (block.size() == kStreamBlock) {
      f(std::span<const Statement>(block));
      block.clear();
    }
  }
  if (!block.empty()) f(std::span<const Statement>(block));
}

// --- ingest ------------------------------------------------------------------

struct IngestCmd {
  std::string source;
  std::string input;
  LexiconFlags lexicon;
  std::string relations;
  std::string out;
  std::string skips;
  std::string mask_token = std::string(kDefaultMaskToken);
  std::string term_column = "TERM";
  std::string sentence_column = "GENERIC SENTENCE";
  std::string columns = "sro";

  void add(CLI::App* app) {
    app->add_option("--source", source, "conceptnet | genericskb | generated_triples | generated_stories")
        ->required()
        ->check(CLI::IsMember({"conceptnet", "genericskb", "generated_triples", "generated_stories"}));
    app->add_option("--input", input, "Source file (plain or gzip)")->required();
    lexicon.add(app, true);
    app->add_option("--relations", relations, "Relation template TSV (triple sources)");
    app->add_option("--out", out, "Statements JSONL output")->required();
    app->add_option("--skips", skips, "Skip report JSONL (default: <out>.skips.jsonl)");
    app->add_option("--mask-token", mask_token, "Token replacing target mentions")->capture_default_str();
    app->add_option("--term-column", term_column, "GenericsKB topic column")->capture_default_str();
    app->add_option("--sentence-column", sentence_column, "GenericsKB sentence column")->capture_default_str();
    app->add_option("--columns", columns, "Generated triple layout: sro (subject relation object) or comet")
        ->check(CLI::IsMember({"sro", "comet"}))
        ->capture_default_str();
  }

  int run(const CLI::App& app, std::ostream& out_stream) {
    Manifest m("ingest");
    m.options_from(app);
    const Source src = *parse_source(source);
    const TargetLexicon lex = lexicon.load(m);
    RelationTemplateTable templates;
    const bool triples = src == Source::conceptnet || src == Source::generated_triples;
    if (triples) {
      if (relations.empty()) throw ConfigError("--relations is required with --source " + source);
      m.input("relations", relations);
      templates = load_relation_templates(relations);
    }
    m.input("input", input);

    IngestOptions opts;
    opts.genericskb.term_column = term_column;
    opts.genericskb.sentence_column = sentence_column;
    opts.genericskb.mask_token = mask_token;
    opts.triple_columns = columns == "comet" ? TripleColumns::comet() : TripleColumns{};

    SkipReport skip_report;
    std::size_t written = 0;
    AtomicFile file(out);
    const IngestStats stats = ingest_statements(src, input, lex, templates, opts, skip_report, [&](Statement&& s) {
      file.stream() << to_json_line(s) << '\n';
      ++written;
    });
    file.commit();
    m.output(out);

    const fs::path skip_path = skips.empty() ? fs::path(out + ".skips.jsonl") : fs::path(skips);
    {
      AtomicFile sf(skip_path);
      skip_report.write_jsonl(sf.stream());
      sf.commit();
    }
    m.output(skip_path);

    m.stats() = {{"lines", stats.lines},         {"records", stats.records},
                 {"statements", written},        {"skipped", stats.skipped},
                 {"non_english", stats.non_english}, {"no_target", stats.no_target},
                 {"duplicates", stats.duplicates}, {"empty_text", stats.empty_text},
                 {"unmatched_subject", stats.unmatched_subject}};
    m.write(manifest_path_for(out));
    out_stream << "ingest: " << written << " statements from " << stats.lines << " lines (" << stats.skipped
               << " skipped)\n";
    return kExitOk;
  }
};

// --- classify ----------------------------------------------------------------

struct ClassifyCmd {
  std::string statements;
  std::string out;
  ClassifierFlags classifier;

  void add(CLI::App* app) {
    app->add_option("--statements", statements, "Statements JSONL")->required();
    app->add_option("--out", out, "Labels TSV output")->required();
    classifier.add(app, true);
  }

  int run(const CLI::App& app, std::ostream& out_stream) {
    Manifest m("classify");
    m.options_from(app);
    const auto clf = classifier.build(m);
    m.input("statements", statements);
    ClassifyOptions copts;
    copts.threads = classifier.threads;

    AtomicFile file(out);
    file.stream() << kLabelFileHeader << '\n';
    std::size_t counts[3] = {0, 0, 0};
    for_each_block(statements, [&](std::span<const Statement> block) {
      for (const auto& l : classify_batch(block, *clf, copts)) {
        file.stream() << l.statement_id.hex() << '\t' << to_string(l.measure) << '\t' << to_string(l.label) << '\n';
        ++counts[static_cast<int>(l.label)];
      }
    });
    file.commit();
    m.output(out);
    m.stats() = {{"measure", to_string(clf->measure())},
                 {"positive", counts[0]},
                 {"negative", counts[1]},
                 {"neutral", counts[2]}};
    m.write(manifest_path_for(out));
    out_stream << "classify: " << counts[0] + counts[1] + counts[2] << " labels (" << counts[0] << " positive, "
               << counts[1] << " negative, " << counts[2] << " neutral)\n";
    return kExitOk;
  }
};

// --- audit -------------------------------------------------------------------

struct AuditCmd {
  std::string statements;
  LexiconFlags lexicon;
  std::vector<std::string> labels;
  ClassifierFlags classifier;
  std::string out_dir;
  std::optional<double> tau_pos;
  std::optional<double> tau_neg;

  void add(CLI::App* app) {
    app->add_option("--statements", statements, "Statements JSONL")->required();
    lexicon.add(app, true);
    app->add_option("--labels", labels, "Sidecar label TSV (repeatable)");
    classifier.add(app, false);
    app->add_option("--out-dir", out_dir, "Directory for report.csv, summary.json and manifest.json")->required();
    app->add_option("--tau-pos", tau_pos, "Favoritism threshold in percent (default: per-category 75th percentile)");
    app->add_option("--tau-neg", tau_neg, "Prejudice threshold in percent (default: per-category 75th percentile)");
  }

  int run(const CLI::App& app, std::ostream& out_stream) {
    Manifest m("audit");
    m.options_from(app);
    if (labels.empty() && classifier.kind.empty())
      throw ConfigError("audit needs --labels or --classifier");
    const TargetLexicon lex = lexicon.load(m);
    std::vector<LabelSet> sets = load_label_sets(labels, m);
    std::unique_ptr<Classifier> clf;
    if (!classifier.kind.empty()) {
      clf = classifier.build(m);
      for (const auto& s : sets)
        if (s.measure == clf->measure())
          throw ConflictError("measure '" + std::string(to_string(s.measure)) +
                              "' comes from both a label file and --classifier");
    }
    m.input("statements", statements);

    std::vector<Measure> measures;
    for (const auto& s : sets) measures.push_back(s.measure);
    if (clf) measures.push_back(clf->measure());
    AuditAccumulator acc(lex, measures);

    ClassifyOptions copts;
    copts.threads = classifier.threads;
    std::size_t missing = 0;
    std::string first_missing;
    std::vector<Polarity> row(measures.size());
    for_each_block(statements, [&](std::span<const Statement> block) {
      std::vector<PolarityLabel> inline_labels;
      if (clf) inline_labels = classify_batch(block, *clf, copts);
      for (std::size_t i = 0; i < block.size(); ++i) {
        bool complete = true;
        for (std::size_t k = 0; k < sets.size(); ++k) {
          const Polarity* p = sets[k].find(block[i].id);
          if (!p) {
            complete = false;
            break;
          }
          row[k] = *p;
        }
        if (!complete) {
          if (missing++ == 0) first_missing = block[i].id.hex();
          continue;
        }
        if (clf) row.back() = inline_labels[i].label;
        acc.add(block[i].target_id, row);
      }
    });
    if (missing)
      throw ValidationError(std::to_string(missing) + " statement(s) lack a label in some label file, e.g. " +
                            first_missing);

    const auto reports = acc.reports();
    SummaryOptions sopts;
    sopts.tau_pos = tau_pos;
    sopts.tau_neg = tau_neg;
    const AuditSummary summary = summarize(reports, measures, sopts);

    fs::create_directories(out_dir);
    const fs::path report_path = fs::path(out_dir) / "report.csv";
    const fs::path summary_path = fs::path(out_dir) / "summary.json";
    {
      AtomicFile f(report_path);
      write_report_csv(f.stream(), reports);
      f.commit();
    }
    write_file_atomic(summary_path, summary_to_json(summary));
    m.output(report_path);
    m.output(summary_path);
    m.stats() = {{"statements", acc.statements()},
                 {"targets", reports.size()},
                 {"empty_targets", summary.empty_targets.size()}};
    m.write(fs::path(out_dir) / "manifest.json");

    out_stream << "audit: " << acc.statements() << " statements over " << reports.size() - summary.empty_targets.size()
               << " of " << reports.size() << " targets\n";
    for (const auto& o : summary.overall)
      out_stream << "  " << to_string(o.measure) << ": overgeneralized "
                 << (o.overgeneralized_pct ? format_fixed(*o.overgeneralized_pct, 2) + "%" : std::string("n/a"))
                 << '\n';
    return kExitOk;
  }
};

// --- filter ------------------------------------------------------------------

struct FilterCmd {
  std::string kb;
  std::string format;
  std::string statements;
  std::vector<std::string> labels;
  std::string mode = "any";
  std::string out;
  std::string report;
  LexiconFlags lexicon;
  std::string relations;
  std::vector<std::string> split_names{"train.txt", "dev1.txt", "dev2.txt", "test.txt"};
  std::string mask_token = std::string(kDefaultMaskToken);

  void add(CLI::App* app) {
    app->add_option("--kb", kb, "Knowledge-base file, or split directory for split_files")->required();
    app->add_option("--format", format, "conceptnet_csv | triples_tsv | genericskb_tsv | split_files")
        ->required()
        ->check(CLI::IsMember({"conceptnet_csv", "triples_tsv", "genericskb_tsv", "split_files"}));
    app->add_option("--statements", statements, "Statements JSONL ingested from --kb (not for split_files)");
    app->add_option("--labels", labels, "Sidecar label TSV (repeatable)")->required();
    app->add_option("--mode", mode, "any: drop if any measure is polar; all: only if every measure is")
        ->check(CLI::IsMember({"any", "all"}))
        ->capture_default_str();
    app->add_option("--out", out, "Filtered KB file, or output directory for split_files")->required();
    app->add_option("--report", report, "FilterReport JSON (default: <out>.filter.json)");
    lexicon.add(app, false);
    app->add_option("--relations", relations, "Relation template TSV (split_files)");
    app->add_option("--split-names", split_names, "Split file names (split_files)")->capture_default_str();
    app->add_option("--mask-token", mask_token, "Token replacing target mentions (split_files)")
        ->capture_default_str();
  }

  int run(const CLI::App& app, std::ostream& out_stream) {
    Manifest m("filter");
    m.options_from(app);
    const KbFormat fmt = *parse_kb_format(format);
    const FilterMode fmode = *parse_filter_mode(mode);
    const fs::path report_path = report.empty() ? fs::path(out + ".filter.json") : fs::path(report);
    const std::vector<LabelSet> sets = load_label_sets(labels, m);
    if (sets.empty()) throw ValidationError("label files contain no labels");

    std::string report_json;
    std::size_t removed = 0;
    std::size_t total = 0;
    if (fmt == KbFormat::split_files) {
      if (lexicon.targets.empty()) throw ConfigError("--targets is required with --format split_files");
      if (relations.empty()) throw ConfigError("--relations is required with --format split_files");
      const TargetLexicon lex = lexicon.load(m);
      m.input("relations", relations);
      const auto templates = load_relation_templates(relations);
      m.input("kb", kb);
      SplitFilterOptions sopts;
      sopts.files = split_names;
      sopts.mask_token = mask_token;
      const auto results = filter_split_files(kb, out, lex, templates, sets, fmode, sopts);
      nlohmann::ordered_json files = nlohmann::ordered_json::object();
      for (const auto& r : results) {
        files[r.file] = nlohmann::ordered_json::parse(filter_report_json(r.report));
        files[r.file]["lines_written"] = r.lines.lines_written;
        files[r.file]["lines_removed"] = r.lines.lines_removed;
        removed += r.report.removed;
        total += r.report.total;
        m.output(fs::path(out) / r.file);
      }
      nlohmann::ordered_json j;
      j["total"] = total;
      j["removed"] = removed;
      j["kept"] = total - removed;
      j["mode"] = mode;
      j["files"] = std::move(files);
      report_json = j.dump(2) + "\n";
    } else {
      if (statements.empty()) throw ConfigError("--statements is required with --format " + format);
      m.input("kb", kb);
      m.input("statements", statements);
      const auto all = read_statements(statements);
      const FilterResult f = filter_statements(all, sets, fmode);
      const KbFilterStats ls = write_filtered_kb(f.kept, f.removed, fmt, kb, out);
      auto j = nlohmann::ordered_json::parse(filter_report_json(f.report));
      j["lines_read"] = ls.lines_read;
      j["lines_written"] = ls.lines_written;
      j["lines_removed"] = ls.lines_removed;
      report_json = j.dump(2) + "\n";
      removed = f.report.removed;
      total = f.report.total;
      m.output(out);
    }
    write_file_atomic(report_path, report_json);
    m.output(report_path);
    m.stats() = {{"statements", total}, {"removed", removed}};
    m.write(manifest_path_for(out));
    out_stream << "filter: removed " << removed << " of " << total << " statements (mode " << mode << ")\n";
    return kExitOk;
  }
};

// --- agreement ---------------------------------------------------------------

struct AgreementCmd {
  std::string annotations;
  std::vector<std::string> labels;
  std::string out;

  void add(CLI::App* app) {
    app->add_option("--annotations", annotations, "Annotation TSV (statement_id, rater_1..rater_N)")->required();
    app->add_option("--labels", labels, "Sidecar label TSV (repeatable)")->required();
    app->add_option("--out", out, "Agreement metrics JSON")->required();
  }

  static json optional_json(const std::optional<double>& v) {
    return v ? json(std::round(*v * 1e6) / 1e6) : json("n/a");
  }

  int run(const CLI::App& app, std::ostream& out_stream) {
    Manifest m("agreement");
    m.options_from(app);
    m.input("annotations", annotations);
    const auto records = load_annotations(annotations);
    const auto sets = load_label_sets(labels, m);
    const GoldSet gold = gold_labels(records);
    const KappaResult kappa = fleiss_kappa(records);

    json j;
    j["records"] = records.size();
    j["raters"] = records.empty() ? 0 : records.front().rater_labels.size();
    j["gold"] = gold.gold.size();
    j["no_majority"] = gold.no_majority;
    j["fleiss_kappa"] = {{"kappa", std::round(kappa.kappa * 1e9) / 1e9},
                         {"observed", std::round(kappa.observed * 1e9) / 1e9},
                         {"expected", std::round(kappa.expected * 1e9) / 1e9},
                         {"degenerate", kappa.degenerate}};
    json measures = json::object();
    for (const auto& set : sets) {
      const LabelMap predicted = to_human_labels(set.labels);
      json mj;
      mj["accuracy"] = std::round(agreement_accuracy(gold.gold, predicted) * 1e6) / 1e6;
      for (HumanLabel c : {HumanLabel::favoritism, HumanLabel::prejudice, HumanLabel::neutral}) {
        const PrfResult r = prf1(gold.gold, predicted, c);
        mj[std::string(to_string(c))] = {{"recall", optional_json(r.recall)},
                                         {"precision", optional_json(r.precision)},
                                         {"f1", std::round(r.f1 * 1e6) / 1e6},
                                         {"tp", r.true_pos},
                                         {"fp", r.false_pos},
                                         {"fn", r.false_neg}};
      }
      measures[std::string(to_string(set.measure))] = std::move(mj);
    }
    j["measures"] = std::move(measures);
    write_file_atomic(out, j.dump(2) + "\n");
    m.output(out);
    m.write(manifest_path_for(out));
    out_stream << "agreement: " << records.size() << " records, kappa " << format_fixed(kappa.kappa, 4)
               << (kappa.degenerate ? " (degenerate)" : "") << '\n';
    return kExitOk;
  }
};

// --- prompts -----------------------------------------------------------------

struct PromptsCmd {
  LexiconFlags lexicon;
  std::string kind = "stories";
  std::string templates;
  std::string relation_list;
  std::vector<std::string> routes;
  std::string out;

  void add(CLI::App* app) {
    lexicon.add(app, true);
    app->add_option("--kind", kind, "stories (template expansion) or comet (target x relation)")
        ->check(CLI::IsMember({"stories", "comet"}))
        ->capture_default_str();
    app->add_option("--templates", templates, "Story template TSV (stories)");
    app->add_option("--relation-list", relation_list, "Relation names, one per line (comet)");
    app->add_option("--route", routes, "Override routing, e.g. religion=Others (repeatable)");
    app->add_option("--out", out, "Prompt TSV output")->required();
  }

  int run(const CLI::App& app, std::ostream& out_stream) {
    Manifest m("prompts");
    m.options_from(app);
    const TargetLexicon lex = lexicon.load(m);
    AtomicFile file(out);
    std::size_t n = 0;
    if (kind == "stories") {
      if (templates.empty()) throw ConfigError("--templates is required with --kind stories");
      m.input("templates", templates);
      TemplateRouting routing = default_routing();
      for (const auto& r : routes) {
        const auto eq = r.find('=');
        const auto cat = eq == std::string::npos ? std::nullopt : parse_category(r.substr(0, eq));
        if (!cat) throw ConfigError("--route expects <category>=<template category>, got '" + r + "'");
        routing[*cat] = r.substr(eq + 1);
      }
      const auto tmpl = load_story_templates(templates);
      const auto prompts = expand_templates(tmpl, lex, routing);
      write_prompts(file.stream(), prompts);
      n = prompts.size();
    } else {
      if (relation_list.empty()) throw ConfigError("--relation-list is required with --kind comet");
      m.input("relation_list", relation_list);
      const auto relations = load_relation_list(relation_list);
      const auto pairs = comet_prompt_matrix(lex, relations);
      write_prompt_pairs(file.stream(), pairs, lex);
      n = pairs.size();
    }
    file.commit();
    m.output(out);
    m.stats() = {{"prompts", n}};
    m.write(manifest_path_for(out));
    out_stream << "prompts: " << n << " " << (kind == "stories" ? "story prompts" : "target/relation pairs") << '\n';
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Audit commonsense knowledge bases for representational harms", "cskb-audit"};
  app.set_version_flag("--version", CSKB_AUDIT_VERSION);
  app.set_config("--config", "", "TOML/INI config file; [subcommand] sections set subcommand flags")
      ->envname("CSKB_AUDIT_CONFIG");
  app.require_subcommand(1);

  IngestCmd ingest;
  ClassifyCmd classify;
  AuditCmd audit;
  FilterCmd filter;
  AgreementCmd agreement;
  PromptsCmd prompts;
  auto* ingest_app = app.add_subcommand("ingest", "Convert a knowledge source into statements JSONL");
  auto* classify_app = app.add_subcommand("classify", "Label statements with a polarity classifier");
  auto* audit_app = app.add_subcommand("audit", "Per-target overgeneralization and disparity report");
  auto* filter_app = app.add_subcommand("filter", "Drop polarized lines from a knowledge base");
  auto* agreement_app = app.add_subcommand("agreement", "Compare labels with human annotations");
  auto* prompts_app = app.add_subcommand("prompts", "Generate prompts for downstream generators");
  ingest.add(ingest_app);
  classify.add(classify_app);
  audit.add(audit_app);
  filter.add(filter_app);
  agreement.add(agreement_app);
  prompts.add(prompts_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CSKB_AUDIT_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* sub = nullptr;
    for (const auto* s : app.get_subcommands()) sub = s;
    err << (sub ? sub->help() : app.help());
    return kExitInvalid;
  }

  try {
    if (ingest_app->parsed()) return ingest.run(*ingest_app, out);
    if (classify_app->parsed()) return classify.run(*classify_app, out);
    if (audit_app->parsed()) return audit.run(*audit_app, out);
    if (filter_app->parsed()) return filter.run(*filter_app, out);
    if (agreement_app->parsed()) return agreement.run(*agreement_app, out);
    if (prompts_app->parsed()) return prompts.run(*prompts_app, out);
  } catch (const TransportError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace cskb::cli
