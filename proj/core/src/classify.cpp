#include "cskb/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "cskb/error.hpp"
#include "cskb/io.hpp"
#include "cskb/text.hpp"

namespace cskb {

SentimentClassifier::SentimentClassifier(SentimentLexicon lexicon, double threshold)
    : lexicon_(std::move(lexicon)), threshold_(threshold) {
  if (!(threshold_ > 0.0 && threshold_ < 1.0))
    throw ConfigError("polarity threshold must be in (0, 1), got " + std::to_string(threshold_));
}

std::vector<PolarityLabel> SentimentClassifier::classify(std::span<const Statement> batch) const {
  std::vector<PolarityLabel> out;
  out.reserve(batch.size());
  for (const Statement& s : batch) {
    const double score = lexicon_.compound(s.masked_text);
    out.push_back(PolarityLabel{s.id, Measure::sentiment, polarity_from_score(score, threshold_), score});
  }
  return out;
}

Polarity keyword_label(std::string_view text, const KeywordLexicon& lexicon) {
  thread_local std::vector<Token> tokens;
  tokenize_words(text, tokens);
  bool positive = false;
  std::string gram;
  const std::size_t max_len = lexicon.max_phrase_tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    gram.clear();
    for (std::size_t len = 1; len <= max_len && i + len <= tokens.size(); ++len) {
      if (len > 1) gram.push_back('_');
      gram += tokens[i + len - 1].lower;
      if (lexicon.negative_words().count(gram)) return Polarity::negative;
      if (!positive && lexicon.positive_words().count(gram)) positive = true;
    }
  }
  return positive ? Polarity::positive : Polarity::neutral;
}

KeywordClassifier::KeywordClassifier(KeywordLexicon lexicon) : lexicon_(std::move(lexicon)) {}

std::vector<PolarityLabel> KeywordClassifier::classify(std::span<const Statement> batch) const {
  std::vector<PolarityLabel> out;
  out.reserve(batch.size());
  for (const Statement& s : batch)
    out.push_back(PolarityLabel{s.id, Measure::keyword, keyword_label(s.masked_text, lexicon_), std::nullopt});
  return out;
}

// --- sidecar -----------------------------------------------------------------

SidecarLabels load_sidecar_labels(const std::filesystem::path& path) {
  LineReader reader(path);
  SidecarLabels labels;
  std::string line;
  while (reader.next(line)) {
    const std::string_view row = LineReader::content(line);
    if (reader.line_number() == 1 && row == kLabelFileHeader) continue;
    if (trim(row).empty()) continue;
    const auto cols = split(row, '\t');
    if (cols.size() != 3)
      throw ParseError(path.string() + ": expected 'statement_id<TAB>measure<TAB>label'", reader.line_number());
    const auto id = StatementId::from_hex(trim(cols[0]));
    if (!id)
      throw ParseError(path.string() + ": invalid statement id '" + std::string(cols[0]) + "'", reader.line_number());
    const auto measure = parse_measure(trim(cols[1]));
    if (!measure)
      throw ParseError(path.string() + ": unknown measure '" + std::string(cols[1]) + "'", reader.line_number());
    const auto label = parse_polarity(trim(cols[2]));
    if (!label)
      throw ParseError(path.string() + ": unknown label '" + std::string(cols[2]) + "'", reader.line_number());
    if (!labels.emplace(SidecarKey{*id, *measure}, *label).second)
      throw ConflictError(path.string() + ":" + std::to_string(reader.line_number()) + ": duplicate label for " +
                          id->hex() + " under measure " + std::string(to_string(*measure)));
  }
  return labels;
}

void write_labels(std::ostream& os, std::span<const PolarityLabel> labels) {
  os << kLabelFileHeader << '\n';
  for (const auto& l : labels)
    os << l.statement_id.hex() << '\t' << to_string(l.measure) << '\t' << to_string(l.label) << '\n';
}

SidecarClassifier::SidecarClassifier(SidecarLabels labels, Measure measure)
    : labels_(std::move(labels)), measure_(measure) {}

std::vector<PolarityLabel> SidecarClassifier::classify(std::span<const Statement> batch) const {
  std::vector<PolarityLabel> out;
  out.reserve(batch.size());
  std::vector<std::string> missing;
  for (const Statement& s : batch) {
    auto it = labels_.find(SidecarKey{s.id, measure_});
    if (it == labels_.end()) {
      missing.push_back(s.id.hex());
      continue;
    }
    out.push_back(PolarityLabel{s.id, measure_, it->second, std::nullopt});
  }
  if (!missing.empty()) {
    std::string msg = "no " + std::string(to_string(measure_)) + " label for " + std::to_string(missing.size()) +
                      " statement(s):";
    for (const auto& id : missing) msg += " " + id;
    throw ValidationError(msg);
  }
  return out;
}

LabelSet LabelSet::from_labels(Measure measure, std::span<const PolarityLabel> labels) {
  LabelSet set;
  set.measure = measure;
  set.labels.reserve(labels.size());
  for (const auto& l : labels) {
    if (l.measure != measure)
      throw ValidationError("label for " + l.statement_id.hex() + " has measure " + std::string(to_string(l.measure)) +
                            ", expected " + std::string(to_string(measure)));
    set.labels[l.statement_id] = l.label;
  }
  return set;
}

std::vector<LabelSet> LabelSet::from_sidecar(const SidecarLabels& labels) {
  std::vector<LabelSet> out;
  for (Measure m : kAllMeasures) {
    LabelSet set;
    set.measure = m;
    for (const auto& [key, label] : labels)
      if (key.measure == m) set.labels.emplace(key.id, label);
    if (!set.labels.empty()) out.push_back(std::move(set));
  }
  return out;
}

// --- remote ------------------------------------------------------------------

RemoteClassifier::RemoteClassifier(RemoteOptions options, Measure measure)
    : options_(std::move(options)), measure_(measure) {
  if (options_.endpoint.empty()) throw ConfigError("remote classifier requires an endpoint URL");
  if (options_.batch_size == 0) throw ConfigError("remote batch size must be positive");
}

std::vector<PolarityLabel> RemoteClassifier::classify(std::span<const Statement> batch) const {
  std::vector<std::string> texts;
  texts.reserve(batch.size());
  for (const Statement& s : batch) texts.push_back(s.masked_text);
  const auto labels = remote_label(texts, options_);
  std::vector<PolarityLabel> out;
  out.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i)
    out.push_back(PolarityLabel{batch[i].id, measure_, labels[i], std::nullopt});
  return out;
}

// --- batch driver --------------------------------------------------------------

std::vector<PolarityLabel> classify_batch(std::span<const Statement> statements, const Classifier& classifier,
                                          const ClassifyOptions& options) {
  for (const Statement& s : statements)
    if (s.masked_text.empty()) throw ValidationError("statement " + s.id.hex() + " has no masked_text");
  if (statements.empty()) return {};

  const std::size_t chunk = std::max<std::size_t>(1, options.chunk_size);
  const std::size_t n_chunks = (statements.size() + chunk - 1) / chunk;
  std::size_t threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, n_chunks);
  if (!classifier.cpu_bound() || threads == 1) return classifier.classify(statements);

  std::vector<PolarityLabel> out(statements.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::size_t begin = c * chunk;
      const std::size_t len = std::min(chunk, statements.size() - begin);
      try {
        auto labels = classifier.classify(statements.subspan(begin, len));
        std::move(labels.begin(), labels.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_chunks);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace cskb
