#include <benchmark/benchmark.h>

#include <random>

#include "cskb/classify.hpp"
#include "cskb/metrics.hpp"
#include "cskb/sentiment.hpp"
#include "cskb/statementize.hpp"

namespace {

using namespace cskb;

std::filesystem::path data(const char* name) { return std::filesystem::path(CSKB_REPO_DATA_DIR) / name; }

const TargetLexicon& lexicon() {
  static const TargetLexicon lex = load_targets(data("targets.tsv"));
  return lex;
}

const std::vector<std::string>& sentences() {
  static const std::vector<std::string> s = [] {
    const char* pool[] = {"XYZ are dishonest and lazy.", "The XYZ was not very good at all!",
                          "XYZ people are brilliant, but sometimes rude.", "XYZ is a citizen of XYZ",
                          "Most XYZ work extremely hard :)", "XYZ capable of help people"};
    std::vector<std::string> out;
    for (int i = 0; i < 1024; ++i) out.emplace_back(pool[i % 6]);
    return out;
  }();
  return s;
}

void BM_VaderCompound(benchmark::State& state) {
  const auto lex = SentimentLexicon::load(data("vader_lexicon.txt"), data("emoji_utf8_lexicon.txt"));
  const auto& s = sentences();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lex.compound(s[i++ % s.size()]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_VaderCompound);

void BM_KeywordLabel(benchmark::State& state) {
  const auto kw = load_keyword_lexicon(data("keywords_positive.txt"), data("keywords_negative.txt"));
  const auto& s = sentences();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(keyword_label(s[i++ % s.size()], kw));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_KeywordLabel);

void BM_TargetMatchAndMask(benchmark::State& state) {
  const auto& lex = lexicon();
  const std::string text = "The african american lawyer and the british nurse met a muslim woman in church.";
  for (auto _ : state) benchmark::DoNotOptimize(mask_targets(text, lex));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TargetMatchAndMask);

void BM_AccumulatorAdd(benchmark::State& state) {
  const auto& lex = lexicon();
  AuditAccumulator acc(lex, {Measure::sentiment, Measure::keyword});
  std::mt19937 rng(1);
  std::vector<std::string> ids;
  for (int i = 0; i < 4096; ++i) ids.push_back(lex.at(rng() % lex.size()).target_id);
  const Polarity labels[2] = {Polarity::negative, Polarity::neutral};
  std::size_t i = 0;
  for (auto _ : state) acc.add(ids[i++ % ids.size()], labels);
  benchmark::DoNotOptimize(acc.statements());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AccumulatorAdd);

}  // namespace
BENCHMARK_MAIN();
