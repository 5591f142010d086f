#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cskb/classify.hpp"
#include "cskb/ingest.hpp"
#include "cskb/types.hpp"

namespace cskb {

enum class FilterMode { any, all };
std::string_view to_string(FilterMode m) noexcept;
std::optional<FilterMode> parse_filter_mode(std::string_view s) noexcept;

struct FilterReport {
  FilterMode mode = FilterMode::any;
  std::size_t total = 0;
  std::size_t kept = 0;
  std::size_t removed = 0;
  // Statements each measure labels non-neutral, whether or not the mode removed them.
  std::vector<std::pair<Measure, std::size_t>> removed_by_measure;

  double removed_fraction() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(removed) / static_cast<double>(total);
  }
};

std::string filter_report_json(const FilterReport& report);

struct FilterResult {
  std::vector<Statement> kept;
  std::vector<Statement> removed;
  FilterReport report;
};

// any: removed when some measure says positive or negative. all: removed only
// when every measure does. Order is preserved in both outputs. Throws
// ValidationError when a statement lacks a label in some set.
FilterResult filter_statements(std::span<const Statement> statements, std::span<const LabelSet> label_sets,
                               FilterMode mode = FilterMode::any);

bool is_removed(const Statement& statement, std::span<const LabelSet> label_sets, FilterMode mode);

enum class KbFormat { conceptnet_csv, triples_tsv, genericskb_tsv, split_files };
std::string_view to_string(KbFormat f) noexcept;
std::optional<KbFormat> parse_kb_format(std::string_view s) noexcept;

struct KbFilterStats {
  std::size_t lines_read = 0;
  std::size_t lines_written = 0;
  std::size_t lines_removed = 0;
};

// Copies `input` to `output` line by line, dropping every line that produced a
// removed statement. Lines that produced no statement are kept. Kept lines are
// written byte for byte; gzip input is written decompressed. The genericskb_tsv
// header row is always kept. Triple formats require every statement to carry
// its origin triple (ValidationError otherwise). Not valid for split_files.
KbFilterStats write_filtered_kb(std::span<const Statement> kept, std::span<const Statement> removed,
                                KbFormat format, const std::filesystem::path& input,
                                const std::filesystem::path& output);

struct SplitFilterOptions {
  std::vector<std::string> files{"train.txt", "dev1.txt", "dev2.txt", "test.txt"};
  TripleColumns columns = TripleColumns::comet();
  std::string mask_token = std::string(kDefaultMaskToken);
};

struct SplitFilterResult {
  std::string file;
  KbFilterStats lines;
  FilterReport report;
};

// Filters each split file of `input_dir` independently into `output_dir`
// under the same name. Statements are re-derived per file as generated
// triples, so labels from a classify run over the same files apply. Missing
// split files are skipped; none present is a ValidationError.
std::vector<SplitFilterResult> filter_split_files(const std::filesystem::path& input_dir,
                                                  const std::filesystem::path& output_dir,
                                                  const TargetLexicon& lexicon, const RelationTemplateTable& templates,
                                                  std::span<const LabelSet> label_sets, FilterMode mode,
                                                  const SplitFilterOptions& options = {});

}  // namespace cskb
