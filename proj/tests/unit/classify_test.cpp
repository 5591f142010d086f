#include <gtest/gtest.h>

#include <sstream>

#include "cskb/classify.hpp"
#include "cskb/error.hpp"
#include "test_support.hpp"

namespace cskb {
namespace {

Statement stmt(std::string masked, std::string target = "lawyer") {
  Statement s;
  s.text = masked;
  s.masked_text = std::move(masked);
  s.target_id = std::move(target);
  s.category = Category::profession;
  s.source = Source::generated_triples;
  s.id = make_statement_id(s.source, s.text, s.target_id);
  return s;
}

KeywordLexicon small_keywords() { return KeywordLexicon({"brilliant", "hard_working"}, {"dishonest", "lazy"}); }

TEST(Keyword, NegativeWinsOverPositive) {
  const auto lex = small_keywords();
  EXPECT_EQ(keyword_label("XYZ are brilliant but dishonest", lex), Polarity::negative);
  EXPECT_EQ(keyword_label("XYZ are Brilliant", lex), Polarity::positive);
  EXPECT_EQ(keyword_label("XYZ are hard-working", lex), Polarity::positive);
  EXPECT_EQ(keyword_label("XYZ are hard", lex), Polarity::neutral);
  // Whole words only.
  EXPECT_EQ(keyword_label("XYZ are lazyish", lex), Polarity::neutral);
}

TEST(Keyword, ClassifierUsesMaskedText) {
  const KeywordClassifier c(KeywordLexicon({"lawyer"}, {"bad"}));
  Statement s = stmt("XYZ argue");
  s.text = "lawyer argue";
  const auto labels = c.classify(std::span(&s, 1));
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_EQ(labels[0].label, Polarity::neutral);
  EXPECT_EQ(labels[0].measure, Measure::keyword);
  EXPECT_EQ(labels[0].statement_id, s.id);
}

TEST(Sentiment, ThresholdAndScore) {
  SentimentLexicon lex;
  lex.add("good", 1.9);
  lex.add("bad", -2.5);
  const SentimentClassifier c(lex);
  std::vector<Statement> batch{stmt("XYZ are good"), stmt("XYZ are bad"), stmt("XYZ are here")};
  const auto labels = c.classify(batch);
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[0].label, Polarity::positive);
  EXPECT_EQ(labels[1].label, Polarity::negative);
  EXPECT_EQ(labels[2].label, Polarity::neutral);
  ASSERT_TRUE(labels[0].score);
  EXPECT_GT(*labels[0].score, 0.05);
  EXPECT_LE(*labels[0].score, 1.0);
}

TEST(Batch, OrderIndependentOfThreads) {
  const KeywordClassifier c(small_keywords());
  std::vector<Statement> batch;
  for (int i = 0; i < 5000; ++i)
    batch.push_back(stmt(i % 3 == 0 ? "XYZ are lazy " + std::to_string(i)
                                    : i % 3 == 1 ? "XYZ are brilliant " + std::to_string(i)
                                                 : "XYZ " + std::to_string(i)));
  const auto one = classify_batch(batch, c, {1, 100});
  const auto many = classify_batch(batch, c, {4, 37});
  ASSERT_EQ(one.size(), batch.size());
  EXPECT_EQ(one, many);
  for (std::size_t i = 0; i < batch.size(); ++i) EXPECT_EQ(one[i].statement_id, batch[i].id);
}

TEST(Batch, EmptyMaskedTextRejected) {
  const KeywordClassifier c(small_keywords());
  std::vector<Statement> batch{stmt("XYZ"), stmt("")};
  EXPECT_THROW(classify_batch(batch, c), ValidationError);
}

TEST(Sidecar, RoundTripAndLookup) {
  const Statement a = stmt("XYZ one"), b = stmt("XYZ two");
  std::vector<PolarityLabel> labels{{a.id, Measure::regard, Polarity::negative, std::nullopt},
                                    {b.id, Measure::regard, Polarity::positive, std::nullopt}};
  std::ostringstream os;
  write_labels(os, labels);
  test::TempDir dir;
  const auto p = dir.write("l.tsv", os.str());
  const auto sidecar = load_sidecar_labels(p);
  EXPECT_EQ(sidecar.size(), 2u);
  const SidecarClassifier c(sidecar, Measure::regard);
  std::vector<Statement> batch{b, a};
  const auto out = c.classify(batch);
  EXPECT_EQ(out[0].label, Polarity::positive);
  EXPECT_EQ(out[1].label, Polarity::negative);

  const SidecarClassifier wrong(sidecar, Measure::sentiment);
  try {
    wrong.classify(batch);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(a.id.hex()), std::string::npos);
  }
}

TEST(Sidecar, LoadErrors) {
  test::TempDir dir;
  const std::string id = StatementId(1).hex();
  EXPECT_THROW(load_sidecar_labels(dir.write("a", id + "\tregard\n")), ParseError);
  EXPECT_THROW(load_sidecar_labels(dir.write("b", id + "\tregard\tother\n")), ParseError);
  EXPECT_THROW(load_sidecar_labels(dir.write("c", "xyz\tregard\tpositive\n")), ParseError);
  EXPECT_THROW(load_sidecar_labels(dir.write("d", id + "\tregard\tpositive\n" + id + "\tregard\tnegative\n")),
               ConflictError);
  EXPECT_EQ(load_sidecar_labels(dir.write("e", id + "\tregard\tpositive\n" + id + "\tsentiment\tnegative\n")).size(),
            2u);
}

TEST(LabelSet, FromSidecarSplitsByMeasure) {
  SidecarLabels s;
  s[{StatementId(1), Measure::regard}] = Polarity::positive;
  s[{StatementId(1), Measure::sentiment}] = Polarity::negative;
  s[{StatementId(2), Measure::sentiment}] = Polarity::neutral;
  const auto sets = LabelSet::from_sidecar(s);
  ASSERT_EQ(sets.size(), 2u);
  EXPECT_EQ(sets[0].measure, Measure::sentiment);
  EXPECT_EQ(sets[0].labels.size(), 2u);
  EXPECT_EQ(*sets[1].find(StatementId(1)), Polarity::positive);
  EXPECT_EQ(sets[1].find(StatementId(2)), nullptr);
}

TEST(LabelSet, MeasureMismatch) {
  const std::vector<PolarityLabel> l{{StatementId(1), Measure::regard, Polarity::positive, std::nullopt}};
  EXPECT_THROW(LabelSet::from_labels(Measure::sentiment, l), ValidationError);
}

}  // namespace
}  // namespace cskb
