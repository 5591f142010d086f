#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cskb/ingest.hpp"
#include "cskb/lexicon.hpp"
#include "cskb/sentiment.hpp"
#include "cskb/types.hpp"

namespace cskb {

struct PolarityLabel {
  StatementId statement_id;
  Measure measure = Measure::sentiment;
  Polarity label = Polarity::neutral;
  std::optional<double> score;  // in [-1, 1] when the classifier produces one

  friend bool operator==(const PolarityLabel&, const PolarityLabel&) = default;
};

// Uniform classifier contract. classify() returns exactly one label per input
// statement, in input order, computed from masked_text only.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual Measure measure() const noexcept = 0;
  virtual std::string_view name() const noexcept = 0;
  virtual std::vector<PolarityLabel> classify(std::span<const Statement> batch) const = 0;
  // CPU-bound classifiers are split across worker threads by classify_batch;
  // the remote classifier manages its own request concurrency.
  virtual bool cpu_bound() const noexcept { return true; }
};

class SentimentClassifier final : public Classifier {
 public:
  explicit SentimentClassifier(SentimentLexicon lexicon, double threshold = kDefaultPolarityThreshold);
  Measure measure() const noexcept override { return Measure::sentiment; }
  std::string_view name() const noexcept override { return "sentiment"; }
  std::vector<PolarityLabel> classify(std::span<const Statement> batch) const override;
  double threshold() const noexcept { return threshold_; }

 private:
  SentimentLexicon lexicon_;
  double threshold_;
};

// negative if any negative keyword occurs (whole word, case-insensitive),
// else positive if any positive keyword occurs, else neutral.
Polarity keyword_label(std::string_view text, const KeywordLexicon& lexicon);

class KeywordClassifier final : public Classifier {
 public:
  explicit KeywordClassifier(KeywordLexicon lexicon);
  Measure measure() const noexcept override { return Measure::keyword; }
  std::string_view name() const noexcept override { return "keyword"; }
  std::vector<PolarityLabel> classify(std::span<const Statement> batch) const override;

 private:
  KeywordLexicon lexicon_;
};

// --- sidecar labels ----------------------------------------------------------

struct SidecarKey {
  StatementId id;
  Measure measure;
  friend bool operator==(const SidecarKey&, const SidecarKey&) = default;
};

struct SidecarKeyHash {
  std::size_t operator()(const SidecarKey& k) const noexcept {
    return std::hash<StatementId>{}(k.id) * 31u + static_cast<std::size_t>(k.measure);
  }
};

using SidecarLabels = std::unordered_map<SidecarKey, Polarity, SidecarKeyHash>;

inline constexpr std::string_view kLabelFileHeader = "statement_id\tmeasure\tlabel";

// TSV `statement_id<TAB>measure<TAB>label`. A first line equal to
// kLabelFileHeader is skipped. Throws ParseError on malformed rows or unknown
// labels and ConflictError on a repeated (id, measure).
SidecarLabels load_sidecar_labels(const std::filesystem::path& path);

// Writes kLabelFileHeader then one row per label, in order.
void write_labels(std::ostream& os, std::span<const PolarityLabel> labels);

class SidecarClassifier final : public Classifier {
 public:
  SidecarClassifier(SidecarLabels labels, Measure measure);
  Measure measure() const noexcept override { return measure_; }
  std::string_view name() const noexcept override { return "sidecar"; }
  // Throws ValidationError listing every statement id without a label.
  std::vector<PolarityLabel> classify(std::span<const Statement> batch) const override;

 private:
  SidecarLabels labels_;
  Measure measure_;
};

// --- remote labeler ----------------------------------------------------------

struct RemoteOptions {
  std::string endpoint;  // e.g. "http://localhost:8391"
  std::size_t batch_size = 100;
  std::size_t max_in_flight = 4;
  std::size_t retries = 2;  // extra attempts after a connection failure or 5xx
  std::chrono::milliseconds timeout{30000};
};

// POSTs `{"texts": [...]}` to <endpoint>/label in chunks of batch_size and
// returns labels aligned with `texts`; "other" maps to neutral. Throws
// TransportError naming the failing request and text range.
std::vector<Polarity> remote_label(std::span<const std::string> texts, const RemoteOptions& options);

class RemoteClassifier final : public Classifier {
 public:
  explicit RemoteClassifier(RemoteOptions options, Measure measure = Measure::regard);
  Measure measure() const noexcept override { return measure_; }
  std::string_view name() const noexcept override { return "remote"; }
  std::vector<PolarityLabel> classify(std::span<const Statement> batch) const override;
  bool cpu_bound() const noexcept override { return false; }

 private:
  RemoteOptions options_;
  Measure measure_;
};

// Labels of one measure keyed by statement id.
struct LabelSet {
  Measure measure = Measure::sentiment;
  std::unordered_map<StatementId, Polarity> labels;

  const Polarity* find(StatementId id) const {
    auto it = labels.find(id);
    return it == labels.end() ? nullptr : &it->second;
  }
  // Later labels for the same id overwrite earlier ones.
  static LabelSet from_labels(Measure measure, std::span<const PolarityLabel> labels);
  // One set per measure present in the file, in Measure order.
  static std::vector<LabelSet> from_sidecar(const SidecarLabels& labels);
};

// --- batch driver --------------------------------------------------------------

struct ClassifyOptions {
  std::size_t threads = 0;  // 0: hardware concurrency
  std::size_t chunk_size = 2048;
};

// One label per statement in input order regardless of parallelism. Throws
// ValidationError if a statement has an empty masked_text.
std::vector<PolarityLabel> classify_batch(std::span<const Statement> statements, const Classifier& classifier,
                                          const ClassifyOptions& options = {});

}  // namespace cskb
