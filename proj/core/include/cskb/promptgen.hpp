#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cskb/lexicon.hpp"
#include "cskb/types.hpp"

namespace cskb {

inline constexpr std::string_view kPromptPlaceholder = "XYZ";

struct StoryTemplate {
  std::string category;  // template category, e.g. "People"
  std::string text;      // contains kPromptPlaceholder at least once
};

// TSV `template_category<TAB>template`; '#' lines and blank lines are
// ignored. Throws ParseError on malformed rows.
std::vector<StoryTemplate> load_story_templates(const std::filesystem::path& path);

using TemplateRouting = std::map<Category, std::string>;

// gender -> People, origin -> Locations, profession -> Professions,
// religion -> Others.
TemplateRouting default_routing();

struct Prompt {
  std::string prompt_id;  // "t<template index>:<target_id>"
  std::string target_id;
  std::string text;
};

// One prompt per (target, template routed to its category), targets in
// lexicon order, templates in file order. Throws ConfigError when a template
// lacks the placeholder, "xyz" is itself a target surface form, or routing
// misses a category present in the lexicon.
std::vector<Prompt> expand_templates(std::span<const StoryTemplate> templates, const TargetLexicon& lexicon,
                                     const TemplateRouting& routing = default_routing());

struct PromptPair {
  std::string target_id;
  std::string relation;
};

// Lexicon order x relation order. Throws ValidationError on an empty
// relation list.
std::vector<PromptPair> comet_prompt_matrix(const TargetLexicon& lexicon, std::span<const std::string> relations);

// One relation name per line; '#' lines and blank lines are ignored.
std::vector<std::string> load_relation_list(const std::filesystem::path& path);

inline constexpr std::string_view kPromptFileHeader = "prompt_id\ttarget_id\tprompt";

void write_prompts(std::ostream& os, std::span<const Prompt> prompts);
void write_prompt_pairs(std::ostream& os, std::span<const PromptPair> pairs, const TargetLexicon& lexicon);

}  // namespace cskb
