#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cskb/types.hpp"

namespace cskb {

struct TargetEntry {
  std::string target_id;                   // e.g. "african_american"
  std::string name;                        // display form, e.g. "african american"
  std::vector<std::string> surface_forms;  // lowercase; first is `name`
  Category category = Category::origin;
};

struct TargetMatch {
  std::size_t entry = 0;  // index into TargetLexicon::entries()
  std::size_t begin = 0;  // byte offsets into the matched text
  std::size_t end = 0;
};

struct TargetLoadOptions {
  // Adds "<form>s" for every explicit form not already ending in 's'.
  // Generated forms never override an explicit form of any target.
  bool plural_aliases = true;
};

// The audited target set. Immutable after construction.
class TargetLexicon {
 public:
  TargetLexicon() = default;

  // Validates and indexes the entries. Throws ValidationError on empty or
  // non-normalized surface forms, ConflictError on duplicate ids or forms.
  static TargetLexicon build(std::vector<TargetEntry> entries,
                             const TargetLoadOptions& options = {});

  const std::vector<TargetEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const TargetEntry* find(std::string_view target_id) const;
  const TargetEntry& at(std::size_t index) const { return entries_.at(index); }

  // Whole-word, case-insensitive matches of every surface form. Overlaps are
  // resolved longest-match-first, left to right; the result is sorted by
  // begin offset and non-overlapping.
  std::vector<TargetMatch> match(std::string_view text) const;

 private:
  std::vector<TargetEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_id_;
  // Surface form tokens joined by ' ' -> entry index.
  std::unordered_map<std::string, std::size_t> by_form_;
  // First token -> longest form (in tokens) starting with it.
  std::unordered_map<std::string, std::size_t> longest_from_;
};

// Canonical target id for a display name: lowercase tokens joined by '_'.
std::string make_target_id(std::string_view name);

// Reads `target<TAB>category<TAB>aliases` TSV with a header row.
TargetLexicon load_targets(const std::filesystem::path& path, const TargetLoadOptions& options = {});

std::vector<TargetMatch> match_targets(std::string_view text, const TargetLexicon& lexicon);

// Polarity keyword lists for the baseline classifier. Entries are lowercase
// single tokens or '_'-joined phrases.
class KeywordLexicon {
 public:
  KeywordLexicon() = default;
  // Throws ConflictError if a word is in both sets.
  KeywordLexicon(std::unordered_set<std::string> positive, std::unordered_set<std::string> negative);

  const std::unordered_set<std::string>& positive_words() const noexcept { return positive_; }
  const std::unordered_set<std::string>& negative_words() const noexcept { return negative_; }
  std::size_t max_phrase_tokens() const noexcept { return max_tokens_; }

 private:
  std::unordered_set<std::string> positive_;
  std::unordered_set<std::string> negative_;
  std::size_t max_tokens_ = 1;
};

// One word or phrase per line; '#' lines and blank lines are ignored.
KeywordLexicon load_keyword_lexicon(const std::filesystem::path& positive_path,
                                    const std::filesystem::path& negative_path);

// Lowercases and joins the tokens of `phrase` with '_'.
std::string normalize_keyword(std::string_view phrase);

}  // namespace cskb
