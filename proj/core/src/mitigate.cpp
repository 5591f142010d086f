#include "cskb/mitigate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

#include "cskb/error.hpp"
#include "cskb/io.hpp"

namespace cskb {

std::string_view to_string(FilterMode m) noexcept { return m == FilterMode::all ? "all" : "any"; }

std::optional<FilterMode> parse_filter_mode(std::string_view s) noexcept {
  if (s == "any") return FilterMode::any;
  if (s == "all") return FilterMode::all;
  return std::nullopt;
}

std::string_view to_string(KbFormat f) noexcept {
  switch (f) {
    case KbFormat::conceptnet_csv: return "conceptnet_csv";
    case KbFormat::triples_tsv: return "triples_tsv";
    case KbFormat::genericskb_tsv: return "genericskb_tsv";
    case KbFormat::split_files: break;
  }
  return "split_files";
}

std::optional<KbFormat> parse_kb_format(std::string_view s) noexcept {
  if (s == "conceptnet_csv") return KbFormat::conceptnet_csv;
  if (s == "triples_tsv") return KbFormat::triples_tsv;
  if (s == "genericskb_tsv") return KbFormat::genericskb_tsv;
  if (s == "split_files") return KbFormat::split_files;
  return std::nullopt;
}

std::string filter_report_json(const FilterReport& r) {
  nlohmann::ordered_json j;
  j["total"] = r.total;
  j["kept"] = r.kept;
  j["removed"] = r.removed;
  j["removed_by_measure"] = nlohmann::ordered_json::object();
  for (const auto& [m, n] : r.removed_by_measure) j["removed_by_measure"][std::string(to_string(m))] = n;
  j["mode"] = to_string(r.mode);
  j["removed_fraction"] = std::round(r.removed_fraction() * 1e6) / 1e6;
  return j.dump(2) + "\n";
}

namespace {

const Polarity& label_of(const Statement& s, const LabelSet& set) {
  const Polarity* p = set.find(s.id);
  if (!p)
    throw ValidationError("statement " + s.id.hex() + " has no " + std::string(to_string(set.measure)) + " label");
  return *p;
}

}  // namespace

bool is_removed(const Statement& statement, std::span<const LabelSet> label_sets, FilterMode mode) {
  if (label_sets.empty()) throw ValidationError("filtering needs at least one label set");
  bool any = false;
  bool all = true;
  for (const auto& set : label_sets) {
    const bool polar = label_of(statement, set) != Polarity::neutral;
    any = any || polar;
    all = all && polar;
  }
  return mode == FilterMode::any ? any : all;
}

FilterResult filter_statements(std::span<const Statement> statements, std::span<const LabelSet> label_sets,
                               FilterMode mode) {
  if (label_sets.empty()) throw ValidationError("filtering needs at least one label set");
  FilterResult out;
  out.report.mode = mode;
  out.report.total = statements.size();
  for (const auto& set : label_sets) out.report.removed_by_measure.emplace_back(set.measure, 0);

  for (const Statement& s : statements) {
    bool any = false;
    bool all = true;
    for (std::size_t k = 0; k < label_sets.size(); ++k) {
      const bool polar = label_of(s, label_sets[k]) != Polarity::neutral;
      if (polar) ++out.report.removed_by_measure[k].second;
      any = any || polar;
      all = all && polar;
    }
    if (mode == FilterMode::any ? any : all)
      out.removed.push_back(s);
    else
      out.kept.push_back(s);
  }
  out.report.kept = out.kept.size();
  out.report.removed = out.removed.size();
  return out;
}

KbFilterStats write_filtered_kb(std::span<const Statement> kept, std::span<const Statement> removed,
                                KbFormat format, const std::filesystem::path& input,
                                const std::filesystem::path& output) {
  if (format == KbFormat::split_files)
    throw ValidationError("split_files filters a directory; use filter_split_files");
  const bool triple_format = format != KbFormat::genericskb_tsv;
  auto check = [&](const Statement& s) {
    if (triple_format && !s.origin)
      throw ValidationError("statement " + s.id.hex() + " has no origin triple; " + std::string(to_string(format)) +
                            " output needs one");
    if (!triple_format && s.source != Source::genericskb)
      throw ValidationError("statement " + s.id.hex() + " is not from GenericsKB; genericskb_tsv output needs one");
    if (s.line == 0) throw ValidationError("statement " + s.id.hex() + " has no source line");
  };
  for (const auto& s : kept) check(s);

  std::unordered_set<std::size_t> drop;
  // ConceptNet lines repeating a removed triple produce no statement of their
  // own (deduplication) but must go too.
  std::unordered_set<std::string> drop_keys;
  for (const auto& s : removed) {
    check(s);
    drop.insert(s.line);
    if (format == KbFormat::conceptnet_csv) drop_keys.insert(triple_key(*s.origin));
  }

  KbFilterStats stats;
  LineReader reader(input);
  AtomicFile out(output);
  std::string line;
  while (reader.next(line)) {
    ++stats.lines_read;
    const bool header = format == KbFormat::genericskb_tsv && reader.line_number() == 1;
    bool dropped = !header && drop.count(reader.line_number());
    if (!dropped && !drop_keys.empty()) {
      const auto key = conceptnet_triple_key(line);
      dropped = key && drop_keys.count(*key);
    }
    if (dropped) {
      ++stats.lines_removed;
      continue;
    }
    out.stream() << line;
    if (reader.had_newline()) out.stream() << '\n';
    ++stats.lines_written;
  }
  const auto max_it = std::max_element(drop.begin(), drop.end());
  const std::size_t max_line = max_it == drop.end() ? 0 : *max_it;
  if (max_line > stats.lines_read)
    throw ValidationError("removed statement refers to line " + std::to_string(max_line) + " but " + input.string() +
                          " has " + std::to_string(stats.lines_read) + " lines");
  out.commit();
  return stats;
}

std::vector<SplitFilterResult> filter_split_files(const std::filesystem::path& input_dir,
                                                  const std::filesystem::path& output_dir,
                                                  const TargetLexicon& lexicon, const RelationTemplateTable& templates,
                                                  std::span<const LabelSet> label_sets, FilterMode mode,
                                                  const SplitFilterOptions& options) {
  std::vector<SplitFilterResult> results;
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create " + output_dir.string() + ": " + ec.message());

  IngestOptions ingest;
  ingest.triple_columns = options.columns;
  ingest.genericskb.mask_token = options.mask_token;
  for (const auto& name : options.files) {
    const auto in = input_dir / name;
    if (!std::filesystem::is_regular_file(in)) continue;
    std::vector<Statement> statements;
    SkipReport skips;
    ingest_statements(Source::generated_triples, in, lexicon, templates, ingest, skips,
                      [&](Statement&& s) { statements.push_back(std::move(s)); });
    FilterResult f = filter_statements(statements, label_sets, mode);
    SplitFilterResult r;
    r.file = name;
    r.lines = write_filtered_kb(f.kept, f.removed, KbFormat::triples_tsv, in, output_dir / name);
    r.report = std::move(f.report);
    results.push_back(std::move(r));
  }
  if (results.empty()) throw ValidationError("no split files found in " + input_dir.string());
  return results;
}

}  // namespace cskb
