#include "cskb/ingest.hpp"

#include <algorithm>

#include <json.hpp>

#include "cskb/error.hpp"
#include "cskb/hash.hpp"
#include "cskb/text.hpp"

namespace cskb {

StatementId make_statement_id(Source source, std::string_view text, std::string_view target_id) {
  Fnv1a64 h;
  h.update(to_string(source)).separator().update(text).separator().update(target_id);
  return StatementId{h.digest()};
}

namespace {

std::string dataset_of(std::string_view metadata) {
  auto j = nlohmann::json::parse(metadata, nullptr, /*allow_exceptions=*/false);
  if (j.is_object()) {
    auto it = j.find("dataset");
    if (it != j.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

Statement make_statement(Source source, std::string text, std::string masked, const TargetEntry& target,
                         std::size_t line) {
  Statement s;
  s.id = make_statement_id(source, text, target.target_id);
  s.text = std::move(text);
  s.masked_text = std::move(masked);
  s.target_id = target.target_id;
  s.category = target.category;
  s.source = source;
  s.line = line;
  return s;
}

// Distinct entry indices in order of first mention.
std::vector<std::size_t> distinct_targets(const std::vector<TargetMatch>& matches) {
  std::vector<std::size_t> out;
  for (const auto& m : matches)
    if (std::find(out.begin(), out.end(), m.entry) == out.end()) out.push_back(m.entry);
  return out;
}

}  // namespace

// --- ConceptNet ------------------------------------------------------------

ConceptNetReader::ConceptNetReader(const std::filesystem::path& path, const TargetLexicon& lexicon,
                                   SkipReport& skips)
    : reader_(path), lexicon_(lexicon), skips_(skips) {}

std::optional<Triple> ConceptNetReader::next() {
  while (reader_.next(buf_)) {
    ++stats_.lines;
    const auto fields = split(LineReader::content(buf_), '\t');
    if (fields.size() != 5) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(),
                 "expected 5 tab-separated fields, found " + std::to_string(fields.size()));
      continue;
    }
    const std::string_view start = fields[2];
    const std::string_view end = fields[3];
    if (!start.starts_with("/c/en/") || !end.starts_with("/c/en/")) {
      ++stats_.non_english;
      continue;
    }
    std::string relation(fields[1]);
    if (relation.starts_with("/r/")) relation.erase(0, 3);
    if (relation.empty()) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(), "empty relation");
      continue;
    }
    std::string subject;
    std::string object;
    try {
      subject = normalize_concept(start);
      object = normalize_concept(end);
    } catch (const ValidationError& e) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(), e.what());
      continue;
    }
    if (lexicon_.match(subject).empty() && lexicon_.match(object).empty()) {
      ++stats_.no_target;
      continue;
    }
    Triple triple{std::move(subject), std::move(relation), std::move(object), dataset_of(fields[4])};
    if (!seen_.insert(triple_key(triple)).second) {
      ++stats_.duplicates;
      continue;
    }
    ++stats_.records;
    record_line_ = reader_.line_number();
    return triple;
  }
  return std::nullopt;
}

std::string triple_key(const Triple& triple) {
  std::string key = triple.subject;
  key.push_back('\t');
  key += triple.relation;
  key.push_back('\t');
  key += triple.object;
  return key;
}

std::optional<std::string> conceptnet_triple_key(std::string_view line) {
  const auto fields = split(LineReader::content(line), '\t');
  if (fields.size() != 5) return std::nullopt;
  if (!fields[2].starts_with("/c/en/") || !fields[3].starts_with("/c/en/")) return std::nullopt;
  Triple t;
  t.relation = std::string(fields[1]);
  if (t.relation.starts_with("/r/")) t.relation.erase(0, 3);
  if (t.relation.empty()) return std::nullopt;
  try {
    t.subject = normalize_concept(fields[2]);
    t.object = normalize_concept(fields[3]);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
  return triple_key(t);
}

// --- GenericsKB ------------------------------------------------------------

GenericsKbReader::GenericsKbReader(const std::filesystem::path& path, const TargetLexicon& lexicon,
                                   SkipReport& skips, GenericsKbOptions options)
    : reader_(path), lexicon_(lexicon), skips_(skips), options_(std::move(options)) {
  validate_mask_token(options_.mask_token, lexicon_);
  if (!reader_.next(buf_)) throw ConfigError("GenericsKB file " + path.string() + " has no header row");
  const auto header = split(LineReader::content(buf_), '\t');
  columns_ = header.size();
  auto find_col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name) return i;
    throw ConfigError("GenericsKB file " + path.string() + " has no column '" + name + "'");
  };
  term_idx_ = find_col(options_.term_column);
  sentence_idx_ = find_col(options_.sentence_column);
}

std::optional<Statement> GenericsKbReader::next() {
  while (pending_.empty()) {
    if (!reader_.next(buf_)) return std::nullopt;
    ++stats_.lines;
    const std::string_view row = LineReader::content(buf_);
    const auto cols = split(row, '\t');
    if (cols.size() <= std::max(term_idx_, sentence_idx_)) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(),
                 "expected " + std::to_string(columns_) + " columns, found " + std::to_string(cols.size()));
      continue;
    }
    const auto topic_matches = lexicon_.match(cols[term_idx_]);
    if (topic_matches.empty()) {
      ++stats_.no_target;
      continue;
    }
    const std::string_view sentence = cols[sentence_idx_];
    if (trim(sentence).empty()) {
      ++stats_.empty_text;
      continue;
    }
    const std::string masked = apply_mask(sentence, lexicon_.match(sentence), options_.mask_token);
    for (std::size_t entry : distinct_targets(topic_matches)) {
      pending_.push_back(make_statement(Source::genericskb, std::string(sentence), masked, lexicon_.at(entry),
                                        reader_.line_number()));
      ++stats_.records;
    }
  }
  Statement s = std::move(pending_.front());
  pending_.pop_front();
  return s;
}

// --- generated triples -----------------------------------------------------

GeneratedTriplesReader::GeneratedTriplesReader(const std::filesystem::path& path, const TargetLexicon& lexicon,
                                               SkipReport& skips, TripleColumns columns)
    : reader_(path), lexicon_(lexicon), skips_(skips), columns_(columns) {
  const std::size_t cols[] = {columns_.subject, columns_.relation, columns_.object};
  if (cols[0] == cols[1] || cols[0] == cols[2] || cols[1] == cols[2])
    throw ConfigError("triple columns must be distinct");
}

std::optional<Triple> GeneratedTriplesReader::next() {
  while (reader_.next(buf_)) {
    ++stats_.lines;
    const std::string_view row = LineReader::content(buf_);
    if (trim(row).empty()) continue;
    const auto cols = split(row, '\t');
    const std::size_t need = columns_.required();
    if (columns_.allow_extra ? cols.size() < need : cols.size() != need) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(),
                 "expected " + std::string(columns_.allow_extra ? "at least " : "") + std::to_string(need) +
                     " tab-separated fields, found " + std::to_string(cols.size()));
      continue;
    }
    const std::string_view subject = trim(cols[columns_.subject]);
    const std::string_view rel = trim(cols[columns_.relation]);
    const std::string_view object = trim(cols[columns_.object]);
    if (subject.empty() || rel.empty() || object.empty()) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(), "empty subject, relation or object");
      continue;
    }
    if (lexicon_.match(subject).empty()) ++stats_.unmatched_subject;
    ++stats_.records;
    record_line_ = reader_.line_number();
    std::string relation(rel);
    if (relation.starts_with("/r/")) relation.erase(0, 3);
    return Triple{std::string(subject), std::move(relation), std::string(object), "generated"};
  }
  return std::nullopt;
}

// --- generated stories -----------------------------------------------------

std::vector<std::string> split_sentences(std::string_view story) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    const std::string_view piece = trim(story.substr(start, end - start));
    if (!piece.empty()) out.emplace_back(piece);
    start = end;
  };
  for (std::size_t i = 0; i < story.size(); ++i) {
    const char c = story[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == story.size() || is_ascii_space(story[i + 1])) emit(i + 1);
  }
  emit(story.size());
  return out;
}

GeneratedStoriesReader::GeneratedStoriesReader(const std::filesystem::path& path, const TargetLexicon& lexicon,
                                               SkipReport& skips, std::string mask_token)
    : reader_(path), lexicon_(lexicon), skips_(skips), mask_token_(std::move(mask_token)) {
  validate_mask_token(mask_token_, lexicon_);
}

std::optional<Statement> GeneratedStoriesReader::next() {
  while (pending_.empty()) {
    if (!reader_.next(buf_)) return std::nullopt;
    ++stats_.lines;
    const std::string_view row = LineReader::content(buf_);
    if (trim(row).empty()) continue;
    const auto cols = split(row, '\t');
    if (cols.size() != 3) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(),
                 "expected 3 tab-separated fields, found " + std::to_string(cols.size()));
      continue;
    }
    const TargetEntry* target = lexicon_.find(trim(cols[1]));
    if (target == nullptr) {
      ++stats_.skipped;
      skips_.add(reader_.path(), reader_.line_number(), "unknown target_id '" + std::string(trim(cols[1])) + "'");
      continue;
    }
    const std::string prompt_id(trim(cols[0]));
    for (std::string& sentence : split_sentences(cols[2])) {
      std::string masked = apply_mask(sentence, lexicon_.match(sentence), mask_token_);
      Statement s = make_statement(Source::generated_stories, std::move(sentence), std::move(masked), *target,
                                   reader_.line_number());
      s.prompt_id = prompt_id;
      pending_.push_back(std::move(s));
      ++stats_.records;
    }
    if (pending_.empty()) ++stats_.empty_text;
  }
  Statement s = std::move(pending_.front());
  pending_.pop_front();
  return s;
}

// --- triples -> statements -------------------------------------------------

std::vector<Statement> statements_from_triple(const Triple& triple, Source source, std::size_t line,
                                              const TargetLexicon& lexicon, const RelationTemplateTable& templates,
                                              std::string_view mask_token) {
  std::string text = render_triple(triple, templates);
  const auto matches = lexicon.match(text);
  std::vector<Statement> out;
  if (matches.empty()) return out;
  const std::string masked = apply_mask(text, matches, mask_token);
  for (std::size_t entry : distinct_targets(matches)) {
    Statement s = make_statement(source, text, masked, lexicon.at(entry), line);
    s.origin = triple;
    out.push_back(std::move(s));
  }
  return out;
}

IngestStats ingest_statements(Source source, const std::filesystem::path& path, const TargetLexicon& lexicon,
                              const RelationTemplateTable& templates, const IngestOptions& options,
                              SkipReport& skips, const std::function<void(Statement&&)>& sink) {
  const std::string& mask = options.genericskb.mask_token;
  validate_mask_token(mask, lexicon);

  auto drain_triples = [&](auto& reader) {
    while (auto triple = reader.next()) {
      std::vector<Statement> statements;
      try {
        statements = statements_from_triple(*triple, source, reader.line(), lexicon, templates, mask);
      } catch (const UnknownRelationError& e) {
        skips.add(path, reader.line(), e.what());
        continue;
      }
      if (statements.empty()) skips.add(path, reader.line(), "rendered statement mentions no target");
      for (auto& s : statements) sink(std::move(s));
    }
    return reader.stats();
  };

  switch (source) {
    case Source::conceptnet: {
      ConceptNetReader reader(path, lexicon, skips);
      return drain_triples(reader);
    }
    case Source::generated_triples: {
      GeneratedTriplesReader reader(path, lexicon, skips, options.triple_columns);
      return drain_triples(reader);
    }
    case Source::genericskb: {
      GenericsKbReader reader(path, lexicon, skips, options.genericskb);
      while (auto s = reader.next()) sink(std::move(*s));
      return reader.stats();
    }
    case Source::generated_stories: {
      GeneratedStoriesReader reader(path, lexicon, skips, mask);
      while (auto s = reader.next()) sink(std::move(*s));
      return reader.stats();
    }
  }
  return {};
}

}  // namespace cskb
