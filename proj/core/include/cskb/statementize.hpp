#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cskb/error.hpp"
#include "cskb/lexicon.hpp"

namespace cskb {

inline constexpr std::string_view kDefaultMaskToken = "XYZ";

struct Triple {
  std::string subject;
  std::string relation;  // bare name, e.g. "IsA"
  std::string object;
  std::string source_dataset;
};

class UnknownRelationError : public ValidationError {
 public:
  explicit UnknownRelationError(std::string relation)
      : ValidationError("unknown relation '" + relation + "'"), relation_(std::move(relation)) {}
  const std::string& relation() const noexcept { return relation_; }

 private:
  std::string relation_;
};

// relation name -> natural-language phrase ("IsA" -> "is a").
class RelationTemplateTable {
 public:
  RelationTemplateTable() = default;
  // Throws ValidationError on empty phrases, ConflictError on duplicate keys.
  explicit RelationTemplateTable(std::vector<std::pair<std::string, std::string>> rows);

  // Accepts "IsA" or "/r/IsA". Returns nullptr if absent.
  const std::string* find(std::string_view relation) const;
  bool contains(std::string_view relation) const { return find(relation) != nullptr; }
  std::size_t size() const noexcept { return phrases_.size(); }
  // Relation names in file order.
  const std::vector<std::string>& relations() const noexcept { return order_; }

 private:
  std::map<std::string, std::string, std::less<>> phrases_;
  std::vector<std::string> order_;
};

// TSV `relation<TAB>phrase`, '#' comment lines allowed.
RelationTemplateTable load_relation_templates(const std::filesystem::path& path);

// "/c/en/citizen_of_america/n" -> "citizen of america"; bare labels are
// lowercased with '_' -> ' '. Throws ValidationError for non-English URIs.
std::string normalize_concept(std::string_view uri_or_label);

// "<subject> <phrase> <object>", single-spaced. Throws UnknownRelationError.
std::string render_triple(const Triple& triple, const RelationTemplateTable& templates);

// Replaces every target match with `mask_token`. Throws ConfigError if the
// token is empty or itself matches a target.
std::string mask_targets(std::string_view text, const TargetLexicon& lexicon,
                         std::string_view mask_token = kDefaultMaskToken);

// Same as mask_targets but reuses precomputed matches and skips validation.
std::string apply_mask(std::string_view text, const std::vector<TargetMatch>& matches,
                       std::string_view mask_token);

void validate_mask_token(std::string_view mask_token, const TargetLexicon& lexicon);

}  // namespace cskb
