#include <gtest/gtest.h>

#include "cskb/error.hpp"
#include "cskb/lexicon.hpp"
#include "cskb/statementize.hpp"
#include "test_support.hpp"

namespace cskb {
namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

const TargetLexicon& shipped() {
  static const TargetLexicon lex = load_targets(test::repo_data("targets.tsv"));
  return lex;
}

const RelationTemplateTable& shipped_templates() {
  static const RelationTemplateTable t = load_relation_templates(test::repo_data("relation_templates.tsv"));
  return t;
}

TEST(NormalizeConcept, StripsPrefixSenseAndUnderscores) {
  EXPECT_EQ(normalize_concept("/c/en/citizen_of_America"), "citizen of america");
  EXPECT_EQ(normalize_concept("/c/en/citizen_of_america/n"), "citizen of america");
  EXPECT_EQ(normalize_concept("/c/en/lawyer/n/wn/person"), "lawyer");
  EXPECT_EQ(normalize_concept("American"), "american");
  EXPECT_EQ(normalize_concept("  New__York  "), "new york");
  EXPECT_THROW(normalize_concept("/c/fr/avocat"), ValidationError);
}

TEST(RenderTriple, IsAExample) {
  const Triple t{normalize_concept("American"), "IsA", normalize_concept("citizen_of_America"), ""};
  const std::string text = render_triple(t, shipped_templates());
  EXPECT_EQ(text, "american is a citizen of america");
  EXPECT_EQ(mask_targets(text, shipped()), "XYZ is a citizen of XYZ");
}

TEST(RenderTriple, AcceptsPrefixedRelation) {
  const Triple t{"lady", "/r/AtLocation", "church", ""};
  EXPECT_EQ(render_triple(t, shipped_templates()), "lady at location church");
}

TEST(RenderTriple, CustomTableIsUsedVerbatim) {
  const RelationTemplateTable table(Rows{{"UsedFor", "is used for"}});
  const Triple t{"lady", "UsedFor", "x", ""};
  EXPECT_EQ(render_triple(t, table), "lady is used for x");
}

TEST(RenderTriple, UnknownRelation) {
  const Triple t{"lady", "Frobnicates", "x", ""};
  try {
    render_triple(t, shipped_templates());
    FAIL();
  } catch (const UnknownRelationError& e) {
    EXPECT_EQ(e.relation(), "Frobnicates");
  }
}

TEST(RelationTemplateTable, DuplicateKeysConflict) {
  EXPECT_THROW(RelationTemplateTable(Rows{{"IsA", "is a"}, {"/r/IsA", "is an"}}), ConflictError);
  EXPECT_THROW(RelationTemplateTable(Rows{{"IsA", ""}}), ValidationError);
}

TEST(RelationTemplateTable, ShippedTableCoversCometRelations) {
  EXPECT_GE(shipped_templates().size(), 34u);
  EXPECT_EQ(*shipped_templates().find("HasPrerequisite"), "has prequisite");
  EXPECT_EQ(*shipped_templates().find("UsedFor"), "used for");
}

TEST(Mask, EveryOccurrenceIsReplaced) {
  EXPECT_EQ(mask_targets("The lawyer met another Lawyer and two lawyers.", shipped()),
            "The XYZ met another XYZ and two XYZ.");
}

TEST(Mask, TextWithoutTargetsIsUnchanged) {
  EXPECT_EQ(mask_targets("a quiet river", shipped()), "a quiet river");
}

TEST(Mask, TokenValidation) {
  EXPECT_THROW(mask_targets("x", shipped(), ""), ConfigError);
  // A mask token that is itself a target would be re-matched.
  EXPECT_THROW(mask_targets("x", shipped(), "doctor"), ConfigError);
  EXPECT_EQ(mask_targets("the doctor", shipped(), "[T]"), "the [T]");
}

}  // namespace
}  // namespace cskb
