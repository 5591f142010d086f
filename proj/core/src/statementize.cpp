#include "cskb/statementize.hpp"

#include "cskb/io.hpp"
#include "cskb/text.hpp"

namespace cskb {

namespace {

std::string_view strip_relation_prefix(std::string_view r) {
  if (r.starts_with("/r/")) r.remove_prefix(3);
  return r;
}

// Collapses runs of ASCII whitespace into one space and trims the ends.
std::string squeeze_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (is_ascii_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

RelationTemplateTable::RelationTemplateTable(std::vector<std::pair<std::string, std::string>> rows) {
  for (auto& [relation, phrase] : rows) {
    std::string key(strip_relation_prefix(trim(relation)));
    std::string value = squeeze_spaces(phrase);
    if (key.empty()) throw ValidationError("relation template with empty relation name");
    if (value.empty()) throw ValidationError("relation '" + key + "' has an empty phrase");
    if (phrases_.count(key)) throw ConflictError("duplicate relation template '" + key + "'");
    order_.push_back(key);
    phrases_.emplace(std::move(key), std::move(value));
  }
}

const std::string* RelationTemplateTable::find(std::string_view relation) const {
  auto it = phrases_.find(strip_relation_prefix(relation));
  return it == phrases_.end() ? nullptr : &it->second;
}

RelationTemplateTable load_relation_templates(const std::filesystem::path& path) {
  LineReader reader(path);
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (reader.next(line)) {
    const std::string_view row = LineReader::content(line);
    if (trim(row).empty() || trim(row).front() == '#') continue;
    const auto cols = split(row, '\t');
    if (cols.size() != 2)
      throw ParseError("expected 'relation<TAB>phrase' in " + path.string(), reader.line_number());
    rows.emplace_back(std::string(cols[0]), std::string(cols[1]));
  }
  return RelationTemplateTable(std::move(rows));
}

std::string normalize_concept(std::string_view uri_or_label) {
  std::string_view label = trim(uri_or_label);
  if (label.starts_with("/c/")) {
    if (!label.starts_with("/c/en/"))
      throw ValidationError("non-English concept '" + std::string(uri_or_label) + "'");
    label.remove_prefix(6);
    // Drop /pos[/sense...] segments.
    if (auto slash = label.find('/'); slash != std::string_view::npos) label = label.substr(0, slash);
    if (label.empty()) throw ValidationError("empty concept label in '" + std::string(uri_or_label) + "'");
  }
  std::string out;
  out.reserve(label.size());
  for (char c : label) out.push_back(c == '_' ? ' ' : c);
  return squeeze_spaces(ascii_lower(out));
}

std::string render_triple(const Triple& triple, const RelationTemplateTable& templates) {
  const std::string* phrase = templates.find(triple.relation);
  if (phrase == nullptr) throw UnknownRelationError(std::string(strip_relation_prefix(triple.relation)));
  return squeeze_spaces(normalize_concept(triple.subject) + " " + *phrase + " " + normalize_concept(triple.object));
}

void validate_mask_token(std::string_view mask_token, const TargetLexicon& lexicon) {
  if (trim(mask_token).empty()) throw ConfigError("mask token must be non-empty");
  if (!lexicon.match(mask_token).empty())
    throw ConfigError("mask token '" + std::string(mask_token) + "' matches a target surface form");
}

std::string apply_mask(std::string_view text, const std::vector<TargetMatch>& matches,
                       std::string_view mask_token) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  for (const TargetMatch& m : matches) {
    out.append(text.substr(pos, m.begin - pos));
    out.append(mask_token);
    pos = m.end;
  }
  out.append(text.substr(pos));
  return out;
}

std::string mask_targets(std::string_view text, const TargetLexicon& lexicon, std::string_view mask_token) {
  validate_mask_token(mask_token, lexicon);
  return apply_mask(text, lexicon.match(text), mask_token);
}

}  // namespace cskb
