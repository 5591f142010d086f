#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cskb/classify.hpp"
#include "cskb/ingest.hpp"
#include "cskb/lexicon.hpp"
#include "cskb/types.hpp"

namespace cskb {

struct MeasureCounts {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  std::uint64_t neutral = 0;
  std::uint64_t total() const noexcept { return pos + neg + neutral; }
};

struct MeasureStats {
  Measure measure = Measure::sentiment;
  MeasureCounts counts;
  // Percentages of the target's statements; nullopt when it has none.
  std::optional<double> o_pos;
  std::optional<double> o_neg;
  std::optional<double> neutral_pct;
};

struct TargetReport {
  std::string target_id;
  Category category = Category::origin;
  std::uint64_t n_statements = 0;
  std::vector<MeasureStats> measures;  // in the requested measure order

  const MeasureStats* find(Measure m) const;
  bool has_statements() const noexcept { return n_statements != 0; }
};

// Streaming per-target counter. Holds only counts, never statements.
class AuditAccumulator {
 public:
  AuditAccumulator(const TargetLexicon& lexicon, std::vector<Measure> measures);

  // `labels[k]` is the label under measures()[k]. Throws ValidationError for
  // targets outside the lexicon.
  void add(std::string_view target_id, std::span<const Polarity> labels);
  const std::vector<Measure>& measures() const noexcept { return measures_; }
  std::uint64_t statements() const noexcept { return total_; }

  // One report per lexicon target, in lexicon order.
  std::vector<TargetReport> reports() const;

 private:
  const TargetLexicon& lexicon_;
  std::vector<Measure> measures_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::uint64_t> n_;
  std::vector<MeasureCounts> counts_;  // target-major, measure-minor
  std::uint64_t total_ = 0;
};

// Percent overgeneralization per target. Every statement must carry a label in
// every set; otherwise ValidationError lists the missing ids. Targets without
// statements are reported with n_statements = 0 and no percentages.
std::vector<TargetReport> overgeneralization(std::span<const Statement> statements,
                                             std::span<const LabelSet> label_sets, const TargetLexicon& lexicon);

struct Dispersion {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // population variance (expectation form)
};

enum class Sign { positive, negative };

// Variance of statement counts across all given targets, including zeros.
// Throws ValidationError on empty input.
Dispersion representation_disparity(std::span<const TargetReport> reports);

// Variance of O+ or O- across targets that have statements. Throws
// ValidationError when no such target exists or the measure is absent.
Dispersion overgeneralization_disparity(std::span<const TargetReport> reports, Sign sign, Measure measure);

// Variance of the neutral percentage across targets that have statements.
Dispersion neutral_dispersion(std::span<const TargetReport> reports, Measure measure);

struct DisparityReport {
  std::string scope;  // category name or "all"
  Measure measure = Measure::sentiment;
  Dispersion counts;   // D_R
  Dispersion o_pos;    // D_O+
  Dispersion o_neg;    // D_O-
  Dispersion neutral;  // mean/variance of neutral share
};

// Per category (in Category order, skipping empty ones) then "all", for each
// measure.
std::vector<DisparityReport> disparity_reports(std::span<const TargetReport> reports,
                                               std::span<const Measure> measures);

enum class Region { favoritism, prejudice, both, neutral };
std::string_view to_string(Region r) noexcept;

struct RegionAssignment {
  std::string target_id;
  Region region = Region::neutral;
  double o_neg = 0.0;
  double o_pos = 0.0;
};

// Thresholds must lie in (0, 100).
Region classify_region(double o_pos, double o_neg, double tau_pos, double tau_neg);
RegionAssignment classify_region(const TargetReport& report, Measure measure, double tau_pos, double tau_neg);

// Linear-interpolation quantile of a sorted, non-empty sample.
double quantile_sorted(std::span<const double> sorted, double q);

struct BoxOutlier {
  std::string target_id;
  double value = 0.0;
};

struct BoxStats {
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;   // most extreme non-outlier values
  double whisker_high = 0.0;
  std::vector<BoxOutlier> outliers;  // beyond 1.5 IQR from the quartiles
};

// `ids[i]` names `values[i]`. Empty input gives n = 0.
BoxStats box_stats(std::span<const double> values, std::span<const std::string> ids);

struct RegionThresholds {
  double tau_pos = 0.0;
  double tau_neg = 0.0;
};

struct SummaryOptions {
  // Absolute thresholds for every category; default is the per-category 75th
  // percentile of each axis.
  std::optional<double> tau_pos;
  std::optional<double> tau_neg;
};

struct OverallStats {
  Measure measure = Measure::sentiment;
  std::uint64_t n_statements = 0;
  std::uint64_t n_pos = 0;
  std::uint64_t n_neg = 0;
  std::optional<double> overgeneralized_pct;  // 100 (pos + neg) / n
  std::optional<double> pos_pct;
  std::optional<double> neg_pct;
};

struct CategoryBoxes {
  Category category = Category::origin;
  BoxStats counts;
  std::map<Measure, BoxStats> o_pos;
  std::map<Measure, BoxStats> o_neg;
  std::map<Measure, RegionThresholds> thresholds;
};

struct ScatterPoint {
  std::string target_id;
  Category category = Category::origin;
  Measure measure = Measure::sentiment;
  double o_neg = 0.0;
  double o_pos = 0.0;
  Region region = Region::neutral;
};

struct AuditSummary {
  std::vector<Measure> measures;
  std::size_t n_targets = 0;
  std::vector<OverallStats> overall;
  std::vector<DisparityReport> disparity;
  std::vector<CategoryBoxes> categories;
  std::vector<ScatterPoint> scatter;
  std::vector<std::string> empty_targets;
};

// Throws ValidationError on empty reports or out-of-range thresholds.
AuditSummary summarize(std::span<const TargetReport> reports, std::span<const Measure> measures,
                       const SummaryOptions& options = {});

}  // namespace cskb
