#include "cskb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cskb/error.hpp"

namespace cskb {

namespace {

double percent(std::uint64_t part, std::uint64_t whole) {
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

// Two-pass population variance in long double.
Dispersion dispersion_of(std::span<const double> values) {
  Dispersion d;
  d.n = values.size();
  if (values.empty()) return d;
  long double sum = 0;
  for (double v : values) sum += v;
  const long double mean = sum / static_cast<long double>(values.size());
  long double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  d.mean = static_cast<double>(mean);
  d.variance = static_cast<double>(ss / static_cast<long double>(values.size()));
  return d;
}

void check_tau(double tau, const char* name) {
  if (!(tau > 0.0 && tau < 100.0))
    throw ValidationError(std::string(name) + " must be in (0, 100), got " + std::to_string(tau));
}

// Default thresholds are the 75th percentile of each axis, nudged into (0, 100)
// so that a category where most targets sit at 0 still separates the rest.
constexpr double kTauFloor = 1e-6;

double default_tau(std::vector<double> values) {
  if (values.empty()) return 50.0;
  std::sort(values.begin(), values.end());
  return std::clamp(quantile_sorted(values, 0.75), kTauFloor, 100.0 - kTauFloor);
}

}  // namespace

const MeasureStats* TargetReport::find(Measure m) const {
  for (const auto& s : measures)
    if (s.measure == m) return &s;
  return nullptr;
}

// --- accumulator -------------------------------------------------------------

AuditAccumulator::AuditAccumulator(const TargetLexicon& lexicon, std::vector<Measure> measures)
    : lexicon_(lexicon), measures_(std::move(measures)) {
  if (measures_.empty()) throw ValidationError("at least one measure is required");
  for (std::size_t i = 0; i < measures_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (measures_[i] == measures_[j])
        throw ValidationError("measure '" + std::string(to_string(measures_[i])) + "' given twice");
  index_.reserve(lexicon.size());
  for (std::size_t i = 0; i < lexicon.size(); ++i) index_.emplace(lexicon.at(i).target_id, i);
  n_.assign(lexicon.size(), 0);
  counts_.assign(lexicon.size() * measures_.size(), MeasureCounts{});
}

void AuditAccumulator::add(std::string_view target_id, std::span<const Polarity> labels) {
  if (labels.size() != measures_.size())
    throw ValidationError("expected " + std::to_string(measures_.size()) + " labels, got " +
                          std::to_string(labels.size()));
  auto it = index_.find(std::string(target_id));
  if (it == index_.end()) throw ValidationError("target '" + std::string(target_id) + "' is not in the lexicon");
  const std::size_t t = it->second;
  ++n_[t];
  ++total_;
  MeasureCounts* row = &counts_[t * measures_.size()];
  for (std::size_t k = 0; k < labels.size(); ++k) {
    switch (labels[k]) {
      case Polarity::positive: ++row[k].pos; break;
      case Polarity::negative: ++row[k].neg; break;
      case Polarity::neutral: ++row[k].neutral; break;
    }
  }
}

std::vector<TargetReport> AuditAccumulator::reports() const {
  std::vector<TargetReport> out;
  out.reserve(lexicon_.size());
  for (std::size_t t = 0; t < lexicon_.size(); ++t) {
    const TargetEntry& e = lexicon_.at(t);
    TargetReport r;
    r.target_id = e.target_id;
    r.category = e.category;
    r.n_statements = n_[t];
    for (std::size_t k = 0; k < measures_.size(); ++k) {
      MeasureStats s;
      s.measure = measures_[k];
      s.counts = counts_[t * measures_.size() + k];
      if (r.n_statements != 0) {
        s.o_pos = percent(s.counts.pos, r.n_statements);
        s.o_neg = percent(s.counts.neg, r.n_statements);
        s.neutral_pct = percent(s.counts.neutral, r.n_statements);
      }
      r.measures.push_back(s);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<TargetReport> overgeneralization(std::span<const Statement> statements,
                                             std::span<const LabelSet> label_sets, const TargetLexicon& lexicon) {
  std::vector<Measure> measures;
  for (const auto& set : label_sets) measures.push_back(set.measure);
  AuditAccumulator acc(lexicon, measures);

  std::vector<std::string> missing;
  std::vector<Polarity> row(label_sets.size());
  for (const Statement& s : statements) {
    bool complete = true;
    for (std::size_t k = 0; k < label_sets.size(); ++k) {
      const Polarity* p = label_sets[k].find(s.id);
      if (!p) {
        complete = false;
        break;
      }
      row[k] = *p;
    }
    if (!complete) {
      missing.push_back(s.id.hex());
      continue;
    }
    acc.add(s.target_id, row);
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " statement(s) lack a label:";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) msg += " " + missing[i];
    if (shown < missing.size()) msg += " ...";
    throw ValidationError(msg);
  }
  return acc.reports();
}

// --- disparity ---------------------------------------------------------------

Dispersion representation_disparity(std::span<const TargetReport> reports) {
  if (reports.empty()) throw ValidationError("representation disparity needs at least one target");
  // Exact in integers: Var = (n * sum(x^2) - sum(x)^2) / n^2.
  unsigned __int128 sum = 0, sum_sq = 0;
  for (const auto& r : reports) {
    sum += r.n_statements;
    sum_sq += static_cast<unsigned __int128>(r.n_statements) * r.n_statements;
  }
  const unsigned __int128 n = reports.size();
  const unsigned __int128 num = n * sum_sq - sum * sum;
  Dispersion d;
  d.n = reports.size();
  d.mean = static_cast<double>(static_cast<long double>(sum) / static_cast<long double>(n));
  d.variance = static_cast<double>(static_cast<long double>(num) / static_cast<long double>(n * n));
  return d;
}

namespace {

std::vector<double> axis_values(std::span<const TargetReport> reports, Measure measure,
                                std::optional<double> MeasureStats::*field) {
  std::vector<double> values;
  for (const auto& r : reports) {
    if (!r.has_statements()) continue;
    const MeasureStats* s = r.find(measure);
    if (!s) throw ValidationError("measure '" + std::string(to_string(measure)) + "' missing for " + r.target_id);
    values.push_back(*(s->*field));
  }
  return values;
}

}  // namespace

Dispersion overgeneralization_disparity(std::span<const TargetReport> reports, Sign sign, Measure measure) {
  const auto values =
      axis_values(reports, measure, sign == Sign::positive ? &MeasureStats::o_pos : &MeasureStats::o_neg);
  if (values.empty()) throw ValidationError("overgeneralization disparity needs a target with statements");
  return dispersion_of(values);
}

Dispersion neutral_dispersion(std::span<const TargetReport> reports, Measure measure) {
  const auto values = axis_values(reports, measure, &MeasureStats::neutral_pct);
  if (values.empty()) throw ValidationError("neutral dispersion needs a target with statements");
  return dispersion_of(values);
}

std::vector<DisparityReport> disparity_reports(std::span<const TargetReport> reports,
                                               std::span<const Measure> measures) {
  std::vector<DisparityReport> out;
  auto add_scope = [&](std::string scope, std::span<const TargetReport> subset) {
    const Dispersion counts = representation_disparity(subset);
    const bool any = std::any_of(subset.begin(), subset.end(), [](const auto& r) { return r.has_statements(); });
    for (Measure m : measures) {
      DisparityReport d;
      d.scope = scope;
      d.measure = m;
      d.counts = counts;
      if (any) {
        d.o_pos = overgeneralization_disparity(subset, Sign::positive, m);
        d.o_neg = overgeneralization_disparity(subset, Sign::negative, m);
        d.neutral = neutral_dispersion(subset, m);
      }
      out.push_back(std::move(d));
    }
  };
  for (Category c : kAllCategories) {
    std::vector<TargetReport> subset;
    for (const auto& r : reports)
      if (r.category == c) subset.push_back(r);
    if (!subset.empty()) add_scope(std::string(to_string(c)), subset);
  }
  if (!reports.empty()) add_scope("all", reports);
  return out;
}

// --- regions -----------------------------------------------------------------

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::favoritism: return "favoritism";
    case Region::prejudice: return "prejudice";
    case Region::both: return "both";
    case Region::neutral: break;
  }
  return "neutral";
}

Region classify_region(double o_pos, double o_neg, double tau_pos, double tau_neg) {
  check_tau(tau_pos, "tau_pos");
  check_tau(tau_neg, "tau_neg");
  const bool fav = o_pos >= tau_pos;
  const bool prej = o_neg >= tau_neg;
  if (fav && prej) return Region::both;
  if (fav) return Region::favoritism;
  if (prej) return Region::prejudice;
  return Region::neutral;
}

RegionAssignment classify_region(const TargetReport& report, Measure measure, double tau_pos, double tau_neg) {
  const MeasureStats* s = report.find(measure);
  if (!s) throw ValidationError("measure '" + std::string(to_string(measure)) + "' missing for " + report.target_id);
  if (!report.has_statements()) throw ValidationError("target " + report.target_id + " has no statements");
  RegionAssignment a;
  a.target_id = report.target_id;
  a.o_pos = *s->o_pos;
  a.o_neg = *s->o_neg;
  a.region = classify_region(a.o_pos, a.o_neg, tau_pos, tau_neg);
  return a;
}

// --- summary statistics ------------------------------------------------------

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ValidationError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::span<const double> values, std::span<const std::string> ids) {
  if (values.size() != ids.size()) throw ValidationError("box_stats: values and ids differ in length");
  BoxStats b;
  b.n = values.size();
  if (values.empty()) return b;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  b.min = sorted.front();
  b.max = sorted.back();
  b.q1 = quantile_sorted(sorted, 0.25);
  b.median = quantile_sorted(sorted, 0.5);
  b.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.max;
  b.whisker_high = b.min;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v < lo_fence || v > hi_fence) {
      b.outliers.push_back({ids[i], v});
    } else {
      b.whisker_low = std::min(b.whisker_low, v);
      b.whisker_high = std::max(b.whisker_high, v);
    }
  }
  std::sort(b.outliers.begin(), b.outliers.end(), [](const BoxOutlier& a, const BoxOutlier& c) {
    return a.value != c.value ? a.value < c.value : a.target_id < c.target_id;
  });
  return b;
}

AuditSummary summarize(std::span<const TargetReport> reports, std::span<const Measure> measures,
                       const SummaryOptions& options) {
  if (reports.empty()) throw ValidationError("nothing to summarize: no targets");
  if (options.tau_pos) check_tau(*options.tau_pos, "tau_pos");
  if (options.tau_neg) check_tau(*options.tau_neg, "tau_neg");

  AuditSummary out;
  out.measures.assign(measures.begin(), measures.end());
  out.n_targets = reports.size();

  for (Measure m : measures) {
    OverallStats o;
    o.measure = m;
    for (const auto& r : reports) {
      const MeasureStats* s = r.find(m);
      if (!s) throw ValidationError("measure '" + std::string(to_string(m)) + "' missing for " + r.target_id);
      o.n_statements += r.n_statements;
      o.n_pos += s->counts.pos;
      o.n_neg += s->counts.neg;
    }
    if (o.n_statements != 0) {
      o.overgeneralized_pct = percent(o.n_pos + o.n_neg, o.n_statements);
      o.pos_pct = percent(o.n_pos, o.n_statements);
      o.neg_pct = percent(o.n_neg, o.n_statements);
    }
    out.overall.push_back(o);
  }

  out.disparity = disparity_reports(reports, measures);

  for (const auto& r : reports)
    if (!r.has_statements()) out.empty_targets.push_back(r.target_id);

  for (Category c : kAllCategories) {
    std::vector<const TargetReport*> members;
    for (const auto& r : reports)
      if (r.category == c) members.push_back(&r);
    if (members.empty()) continue;

    CategoryBoxes box;
    box.category = c;
    {
      std::vector<double> counts;
      std::vector<std::string> ids;
      for (const auto* r : members) {
        counts.push_back(static_cast<double>(r->n_statements));
        ids.push_back(r->target_id);
      }
      box.counts = box_stats(counts, ids);
    }
    for (Measure m : measures) {
      std::vector<double> pos, neg;
      std::vector<std::string> ids;
      for (const auto* r : members) {
        if (!r->has_statements()) continue;
        const MeasureStats* s = r->find(m);
        pos.push_back(*s->o_pos);
        neg.push_back(*s->o_neg);
        ids.push_back(r->target_id);
      }
      box.o_pos[m] = box_stats(pos, ids);
      box.o_neg[m] = box_stats(neg, ids);
      const RegionThresholds tau{options.tau_pos.value_or(default_tau(pos)),
                                 options.tau_neg.value_or(default_tau(neg))};
      box.thresholds[m] = tau;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        ScatterPoint p;
        p.target_id = ids[i];
        p.category = c;
        p.measure = m;
        p.o_pos = pos[i];
        p.o_neg = neg[i];
        p.region = classify_region(pos[i], neg[i], tau.tau_pos, tau.tau_neg);
        out.scatter.push_back(std::move(p));
      }
    }
    out.categories.push_back(std::move(box));
  }
  return out;
}

}  // namespace cskb
