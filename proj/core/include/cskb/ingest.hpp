#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cskb/io.hpp"
#include "cskb/lexicon.hpp"
#include "cskb/statementize.hpp"
#include "cskb/types.hpp"

namespace cskb {

// One audited sentence about one target.
struct Statement {
  StatementId id;
  std::string text;
  std::string masked_text;
  std::string target_id;
  Category category = Category::origin;
  Source source = Source::conceptnet;
  std::optional<Triple> origin;
  std::optional<std::string> prompt_id;
  std::size_t line = 0;  // 1-based line of the source record
};

// Content hash of (source, text, target_id).
StatementId make_statement_id(Source source, std::string_view text, std::string_view target_id);

// Counters shared by every reader. `skipped` lines are also in the SkipReport.
struct IngestStats {
  std::size_t lines = 0;
  std::size_t records = 0;  // triples or statements yielded
  std::size_t skipped = 0;
  std::size_t non_english = 0;
  std::size_t no_target = 0;
  std::size_t duplicates = 0;
  std::size_t empty_text = 0;
  std::size_t unmatched_subject = 0;  // generated triples whose subject is not a target
};

// Streams target-bearing English triples from a ConceptNet assertions dump
// (plain or gzip). Duplicates on normalized (subject, relation, object) are
// suppressed; lines with a field count other than 5 go to the skip report.
class ConceptNetReader {
 public:
  ConceptNetReader(const std::filesystem::path& path, const TargetLexicon& lexicon, SkipReport& skips);
  std::optional<Triple> next();
  // Source line of the triple most recently returned.
  std::size_t line() const noexcept { return record_line_; }
  const IngestStats& stats() const noexcept { return stats_; }

 private:
  LineReader reader_;
  const TargetLexicon& lexicon_;
  SkipReport& skips_;
  IngestStats stats_;
  std::unordered_set<std::string> seen_;
  std::string buf_;
  std::size_t record_line_ = 0;
};

// Deduplication key `subject<TAB>relation<TAB>object` of a ConceptNet assertion
// line, or nullopt when the reader would not yield it as a triple.
std::optional<std::string> conceptnet_triple_key(std::string_view line);
std::string triple_key(const Triple& triple);

struct GenericsKbOptions {
  std::string term_column = "TERM";
  std::string sentence_column = "GENERIC SENTENCE";
  std::string mask_token = std::string(kDefaultMaskToken);
};

// Streams statements from a GenericsKB TSV whose topic column names a target.
// A topic naming several targets yields one statement per target.
class GenericsKbReader {
 public:
  GenericsKbReader(const std::filesystem::path& path, const TargetLexicon& lexicon, SkipReport& skips,
                   GenericsKbOptions options = {});
  std::optional<Statement> next();
  const IngestStats& stats() const noexcept { return stats_; }

 private:
  LineReader reader_;
  const TargetLexicon& lexicon_;
  SkipReport& skips_;
  GenericsKbOptions options_;
  IngestStats stats_;
  std::size_t term_idx_ = 0;
  std::size_t sentence_idx_ = 0;
  std::size_t columns_ = 0;
  std::deque<Statement> pending_;
  std::string buf_;
};

// Column positions of a headerless triple file. The default is
// `subject<TAB>relation<TAB>object`; comet() is the `relation<TAB>subject<TAB>
// object<TAB>...` layout of COMeT training splits.
struct TripleColumns {
  std::size_t subject = 0;
  std::size_t relation = 1;
  std::size_t object = 2;
  bool allow_extra = false;  // trailing columns are ignored when set

  static TripleColumns comet() { return {1, 0, 2, true}; }
  std::size_t required() const noexcept { return std::max({subject, relation, object}) + 1; }
};

// Every well-formed row is yielded; rows whose subject matches no target are
// counted in stats().unmatched_subject.
class GeneratedTriplesReader {
 public:
  GeneratedTriplesReader(const std::filesystem::path& path, const TargetLexicon& lexicon, SkipReport& skips,
                         TripleColumns columns = {});
  std::optional<Triple> next();
  std::size_t line() const noexcept { return record_line_; }
  const IngestStats& stats() const noexcept { return stats_; }

 private:
  LineReader reader_;
  const TargetLexicon& lexicon_;
  SkipReport& skips_;
  TripleColumns columns_;
  IngestStats stats_;
  std::string buf_;
  std::size_t record_line_ = 0;
};

// Splits on '.', '!' or '?' followed by whitespace or end of text. Pieces are
// trimmed; empty pieces are dropped. Text without terminal punctuation is one
// sentence.
std::vector<std::string> split_sentences(std::string_view story);

// Headerless `prompt_id<TAB>target_id<TAB>story`; one statement per sentence,
// each inheriting the row's target and prompt id.
class GeneratedStoriesReader {
 public:
  GeneratedStoriesReader(const std::filesystem::path& path, const TargetLexicon& lexicon, SkipReport& skips,
                         std::string mask_token = std::string(kDefaultMaskToken));
  std::optional<Statement> next();
  const IngestStats& stats() const noexcept { return stats_; }

 private:
  LineReader reader_;
  const TargetLexicon& lexicon_;
  SkipReport& skips_;
  std::string mask_token_;
  IngestStats stats_;
  std::deque<Statement> pending_;
  std::string buf_;
};

// Renders and masks a triple; one statement per distinct target mentioned in
// the rendered text, in order of first mention.
std::vector<Statement> statements_from_triple(const Triple& triple, Source source, std::size_t line,
                                              const TargetLexicon& lexicon, const RelationTemplateTable& templates,
                                              std::string_view mask_token = kDefaultMaskToken);

struct IngestOptions {
  GenericsKbOptions genericskb;  // mask_token here applies to every source
  TripleColumns triple_columns;   // for generated_triples
};

// Runs the reader for `source` and converts everything to statements, in file
// order. Triples with relations missing from `templates` are recorded in the
// skip report.
IngestStats ingest_statements(Source source, const std::filesystem::path& path, const TargetLexicon& lexicon,
                              const RelationTemplateTable& templates, const IngestOptions& options,
                              SkipReport& skips, const std::function<void(Statement&&)>& sink);

}  // namespace cskb
