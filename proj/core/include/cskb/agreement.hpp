#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cskb/types.hpp"

namespace cskb {

struct AnnotationRecord {
  StatementId statement_id;
  std::vector<HumanLabel> rater_labels;
};

// TSV with header `statement_id<TAB>rater_1<TAB>...<TAB>rater_N`; the header's
// column count fixes N >= 2 for the file. Throws ParseError on malformed rows
// and ConflictError on repeated ids.
std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path);

// Strict-majority label, or nullopt on ties and pluralities.
std::optional<HumanLabel> majority_label(const AnnotationRecord& record);

using LabelMap = std::unordered_map<StatementId, HumanLabel>;

struct GoldSet {
  LabelMap gold;
  std::size_t no_majority = 0;  // records dropped for lack of a strict majority
};

GoldSet gold_labels(std::span<const AnnotationRecord> records);

// Maps classifier polarity into the human vocabulary.
LabelMap to_human_labels(const std::unordered_map<StatementId, Polarity>& predicted);

// 100 * matches / |gold|. Throws ValidationError if a gold id lacks a
// prediction or gold is empty.
double agreement_accuracy(const LabelMap& gold, const LabelMap& predicted);

struct PrfResult {
  std::size_t true_pos = 0;
  std::size_t false_pos = 0;
  std::size_t false_neg = 0;
  std::size_t true_neg = 0;
  std::optional<double> recall;     // nullopt when the class is absent from gold
  std::optional<double> precision;  // nullopt when the class is never predicted
  double f1 = 0.0;                  // 0 when precision + recall is 0 or undefined
};

PrfResult prf1(const LabelMap& gold, const LabelMap& predicted, HumanLabel positive_class);

inline constexpr std::size_t kHumanLabelCount = 3;

// Per-record category counts, the input Fleiss' statistic actually uses.
using RatingRow = std::array<std::size_t, kHumanLabelCount>;

struct KappaResult {
  double kappa = 0.0;
  double observed = 0.0;  // P-bar
  double expected = 0.0;  // P-bar_e
  // Set when P-bar_e == 1 (every rating in one category); kappa is then 1.0.
  bool degenerate = false;
};

// Throws ValidationError on empty input, fewer than 2 raters, or records with
// differing rater counts.
KappaResult fleiss_kappa(std::span<const AnnotationRecord> records);
KappaResult fleiss_kappa(std::span<const RatingRow> rows);

}  // namespace cskb
