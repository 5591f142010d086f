#include "cskb/promptgen.hpp"

#include "cskb/error.hpp"
#include "cskb/io.hpp"
#include "cskb/text.hpp"

namespace cskb {

std::vector<StoryTemplate> load_story_templates(const std::filesystem::path& path) {
  LineReader reader(path);
  std::vector<StoryTemplate> out;
  std::string line;
  while (reader.next(line)) {
    const std::string_view row = LineReader::content(line);
    if (trim(row).empty() || trim(row).starts_with('#')) continue;
    const auto cols = split(row, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty())
      throw ParseError(path.string() + ": expected 'template_category<TAB>template'", reader.line_number());
    out.push_back({std::string(trim(cols[0])), std::string(trim(cols[1]))});
  }
  return out;
}

TemplateRouting default_routing() {
  return {{Category::gender, "People"},
          {Category::origin, "Locations"},
          {Category::profession, "Professions"},
          {Category::religion, "Others"}};
}

namespace {

std::string replace_all(std::string_view text, std::string_view from, std::string_view to) {
  std::string out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t hit = text.find(from, pos);
    if (hit == std::string_view::npos) break;
    out.append(text, pos, hit - pos);
    out += to;
    pos = hit + from.size();
  }
  out.append(text.substr(pos));
  return out;
}

}  // namespace

std::vector<Prompt> expand_templates(std::span<const StoryTemplate> templates, const TargetLexicon& lexicon,
                                     const TemplateRouting& routing) {
  for (std::size_t i = 0; i < templates.size(); ++i)
    if (templates[i].text.find(kPromptPlaceholder) == std::string::npos)
      throw ConfigError("template " + std::to_string(i) + " has no placeholder " + std::string(kPromptPlaceholder) +
                        ": '" + templates[i].text + "'");
  for (const auto& e : lexicon.entries()) {
    for (const auto& form : e.surface_forms)
      if (form == "xyz")
        throw ConfigError("target '" + e.target_id + "' has surface form 'xyz', which collides with the placeholder");
    if (!routing.count(e.category))
      throw ConfigError("no template category routed for target category '" + std::string(to_string(e.category)) +
                        "'");
  }

  std::vector<Prompt> out;
  for (const auto& e : lexicon.entries()) {
    const std::string& group = routing.at(e.category);
    for (std::size_t i = 0; i < templates.size(); ++i) {
      if (templates[i].category != group) continue;
      out.push_back({"t" + std::to_string(i) + ":" + e.target_id, e.target_id,
                     replace_all(templates[i].text, kPromptPlaceholder, e.name)});
    }
  }
  return out;
}

std::vector<PromptPair> comet_prompt_matrix(const TargetLexicon& lexicon, std::span<const std::string> relations) {
  if (relations.empty()) throw ValidationError("relation list is empty");
  std::vector<PromptPair> out;
  out.reserve(lexicon.size() * relations.size());
  for (const auto& e : lexicon.entries())
    for (const auto& r : relations) out.push_back({e.target_id, r});
  return out;
}

std::vector<std::string> load_relation_list(const std::filesystem::path& path) {
  std::vector<std::string> out;
  for (const auto& line : read_lines(path)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.starts_with('#')) continue;
    out.emplace_back(t);
  }
  return out;
}

void write_prompts(std::ostream& os, std::span<const Prompt> prompts) {
  os << kPromptFileHeader << '\n';
  for (const auto& p : prompts) os << p.prompt_id << '\t' << p.target_id << '\t' << p.text << '\n';
}

void write_prompt_pairs(std::ostream& os, std::span<const PromptPair> pairs, const TargetLexicon& lexicon) {
  os << "target_id\ttarget\trelation\n";
  for (const auto& p : pairs) {
    const TargetEntry* e = lexicon.find(p.target_id);
    os << p.target_id << '\t' << (e ? e->name : p.target_id) << '\t' << p.relation << '\n';
  }
}

}  // namespace cskb
