#include "cskb/lexicon.hpp"

#include <algorithm>

#include "cskb/error.hpp"
#include "cskb/io.hpp"
#include "cskb/text.hpp"

namespace cskb {

namespace {

std::string join_tokens(const std::vector<Token>& tokens, std::size_t first, std::size_t count,
                        char sep) {
  std::string key;
  for (std::size_t k = 0; k < count; ++k) {
    if (k != 0) key.push_back(sep);
    key += tokens[first + k].lower;
  }
  return key;
}

std::string form_key(std::string_view form) {
  const auto tokens = tokenize_words(form);
  return join_tokens(tokens, 0, tokens.size(), ' ');
}

}  // namespace

std::string make_target_id(std::string_view name) {
  const auto tokens = tokenize_words(name);
  return join_tokens(tokens, 0, tokens.size(), '_');
}

TargetLexicon TargetLexicon::build(std::vector<TargetEntry> entries, const TargetLoadOptions& options) {
  TargetLexicon lex;
  lex.entries_ = std::move(entries);

  for (std::size_t i = 0; i < lex.entries_.size(); ++i) {
    const TargetEntry& e = lex.entries_[i];
    if (e.target_id.empty()) throw ValidationError("target with empty id");
    if (!lex.by_id_.emplace(e.target_id, i).second)
      throw ConflictError("duplicate target id '" + e.target_id + "'");
    if (e.surface_forms.empty()) throw ValidationError("target '" + e.target_id + "' has no surface forms");
    for (const std::string& form : e.surface_forms) {
      if (form.empty() || trim(form) != form || ascii_lower(form) != form)
        throw ValidationError("target '" + e.target_id + "': surface form '" + form +
                              "' must be non-empty, trimmed and lowercase");
      std::string key = form_key(form);
      if (key.empty())
        throw ValidationError("target '" + e.target_id + "': surface form '" + form + "' has no word characters");
      auto [it, inserted] = lex.by_form_.emplace(std::move(key), i);
      if (!inserted && it->second != i)
        throw ConflictError("surface form '" + form + "' claimed by both '" +
                            lex.entries_[it->second].target_id + "' and '" + e.target_id + "'");
    }
  }

  if (options.plural_aliases) {
    for (std::size_t i = 0; i < lex.entries_.size(); ++i) {
      TargetEntry& e = lex.entries_[i];
      const std::size_t explicit_count = e.surface_forms.size();
      for (std::size_t f = 0; f < explicit_count; ++f) {
        const std::string& form = e.surface_forms[f];
        if (form.back() == 's') continue;
        std::string plural = form + "s";
        if (lex.by_form_.emplace(form_key(plural), i).second) e.surface_forms.push_back(std::move(plural));
      }
    }
  }

  for (const auto& [key, index] : lex.by_form_) {
    const auto first_space = key.find(' ');
    const std::string first = key.substr(0, first_space);
    const std::size_t ntok = static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
    auto& longest = lex.longest_from_[first];
    longest = std::max(longest, ntok);
  }
  return lex;
}

const TargetEntry* TargetLexicon::find(std::string_view target_id) const {
  auto it = by_id_.find(std::string(target_id));
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

std::vector<TargetMatch> TargetLexicon::match(std::string_view text) const {
  std::vector<TargetMatch> out;
  if (by_form_.empty()) return out;
  const auto tokens = tokenize_words(text);
  std::size_t i = 0;
  while (i < tokens.size()) {
    auto lf = longest_from_.find(tokens[i].lower);
    bool matched = false;
    if (lf != longest_from_.end()) {
      const std::size_t max_len = std::min(lf->second, tokens.size() - i);
      for (std::size_t len = max_len; len >= 1; --len) {
        auto it = by_form_.find(join_tokens(tokens, i, len, ' '));
        if (it != by_form_.end()) {
          out.push_back(TargetMatch{it->second, tokens[i].begin, tokens[i + len - 1].end});
          i += len;
          matched = true;
          break;
        }
      }
    }
    if (!matched) ++i;
  }
  return out;
}

std::vector<TargetMatch> match_targets(std::string_view text, const TargetLexicon& lexicon) {
  return lexicon.match(text);
}

TargetLexicon load_targets(const std::filesystem::path& path, const TargetLoadOptions& options) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) throw ParseError("missing header in " + path.string(), 1);
  {
    const auto header = split(LineReader::content(line), '\t');
    if (header.size() != 3 || trim(header[0]) != "target" || trim(header[1]) != "category" ||
        trim(header[2]) != "aliases")
      throw ParseError("expected header 'target<TAB>category<TAB>aliases' in " + path.string(), 1);
  }

  std::vector<TargetEntry> entries;
  while (reader.next(line)) {
    const std::string_view row = LineReader::content(line);
    if (trim(row).empty()) continue;
    const auto cols = split(row, '\t');
    if (cols.size() != 3)
      throw ParseError("expected 3 tab-separated columns, found " + std::to_string(cols.size()) + " in " +
                           path.string(),
                       reader.line_number());
    const std::string name = ascii_lower(trim(cols[0]));
    if (name.empty()) throw ParseError("empty target name in " + path.string(), reader.line_number());
    const auto category = parse_category(trim(cols[1]));
    if (!category)
      throw ValidationError(path.string() + ":" + std::to_string(reader.line_number()) + ": unknown category '" +
                            std::string(trim(cols[1])) + "'");
    TargetEntry e;
    e.target_id = make_target_id(name);
    e.name = name;
    e.category = *category;
    e.surface_forms.push_back(name);
    if (!trim(cols[2]).empty()) {
      for (std::string_view alias : split(cols[2], ',')) {
        std::string a = ascii_lower(trim(alias));
        if (a.empty()) continue;
        if (std::find(e.surface_forms.begin(), e.surface_forms.end(), a) == e.surface_forms.end())
          e.surface_forms.push_back(std::move(a));
      }
    }
    entries.push_back(std::move(e));
  }
  return TargetLexicon::build(std::move(entries), options);
}

std::string normalize_keyword(std::string_view phrase) {
  const auto tokens = tokenize_words(phrase);
  return join_tokens(tokens, 0, tokens.size(), '_');
}

KeywordLexicon::KeywordLexicon(std::unordered_set<std::string> positive, std::unordered_set<std::string> negative)
    : positive_(std::move(positive)), negative_(std::move(negative)) {
  std::vector<std::string> overlap;
  for (const auto& w : positive_)
    if (negative_.count(w)) overlap.push_back(w);
  if (!overlap.empty()) {
    std::sort(overlap.begin(), overlap.end());
    std::string msg = "keyword(s) in both positive and negative lists:";
    for (const auto& w : overlap) msg += " " + w;
    throw ConflictError(msg);
  }
  for (const auto* set : {&positive_, &negative_})
    for (const auto& w : *set)
      max_tokens_ = std::max(max_tokens_, static_cast<std::size_t>(std::count(w.begin(), w.end(), '_')) + 1);
}

namespace {
std::unordered_set<std::string> read_keyword_file(const std::filesystem::path& path) {
  std::unordered_set<std::string> words;
  for (const std::string& raw : read_lines(path)) {
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::string w = normalize_keyword(line);
    if (!w.empty()) words.insert(std::move(w));
  }
  return words;
}
}  // namespace

KeywordLexicon load_keyword_lexicon(const std::filesystem::path& positive_path,
                                    const std::filesystem::path& negative_path) {
  return KeywordLexicon(read_keyword_file(positive_path), read_keyword_file(negative_path));
}

}  // namespace cskb
