#include "cskb/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace cskb {

namespace {

using nlohmann::json;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json opt(const std::optional<double>& v) { return v ? json(round6(*v)) : json(nullptr); }

json dispersion_json(const Dispersion& d) {
  if (d.n == 0) return json{{"n", 0}, {"mean", nullptr}, {"variance", nullptr}};
  return json{{"n", d.n}, {"mean", round6(d.mean)}, {"variance", round6(d.variance)}};
}

json box_json(const BoxStats& b) {
  json j{{"n", b.n}};
  if (b.n == 0) return j;
  j["min"] = round6(b.min);
  j["q1"] = round6(b.q1);
  j["median"] = round6(b.median);
  j["q3"] = round6(b.q3);
  j["max"] = round6(b.max);
  j["whisker_low"] = round6(b.whisker_low);
  j["whisker_high"] = round6(b.whisker_high);
  json outliers = json::array();
  for (const auto& o : b.outliers) outliers.push_back({{"target", o.target_id}, {"value", round6(o.value)}});
  j["outliers"] = std::move(outliers);
  return j;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_report_csv(std::ostream& os, std::span<const TargetReport> reports) {
  os << kReportCsvHeader << '\n';
  for (const auto& r : reports) {
    if (!r.has_statements()) continue;
    for (const auto& m : r.measures) {
      os << r.target_id << ',' << to_string(r.category) << ',' << r.n_statements << ',' << to_string(m.measure)
         << ',' << m.counts.pos << ',' << m.counts.neg << ',' << m.counts.neutral << ',' << format_fixed(*m.o_pos)
         << ',' << format_fixed(*m.o_neg) << '\n';
    }
  }
}

std::string summary_to_json(const AuditSummary& s) {
  json j;
  json measures = json::array();
  for (Measure m : s.measures) measures.push_back(to_string(m));
  j["measures"] = std::move(measures);
  j["n_targets"] = s.n_targets;
  j["empty_targets"] = s.empty_targets;

  json overall = json::object();
  for (const auto& o : s.overall) {
    overall[std::string(to_string(o.measure))] = {{"n_statements", o.n_statements},
                                                  {"n_pos", o.n_pos},
                                                  {"n_neg", o.n_neg},
                                                  {"overgeneralized_pct", opt(o.overgeneralized_pct)},
                                                  {"pos_pct", opt(o.pos_pct)},
                                                  {"neg_pct", opt(o.neg_pct)}};
  }
  j["overall"] = std::move(overall);

  json disparity = json::array();
  for (const auto& d : s.disparity) {
    disparity.push_back({{"scope", d.scope},
                         {"measure", to_string(d.measure)},
                         {"representation", dispersion_json(d.counts)},
                         {"overgeneralization_pos", dispersion_json(d.o_pos)},
                         {"overgeneralization_neg", dispersion_json(d.o_neg)},
                         {"neutral", dispersion_json(d.neutral)}});
  }
  j["disparity"] = std::move(disparity);

  json categories = json::object();
  for (const auto& c : s.categories) {
    json cj;
    cj["counts"] = box_json(c.counts);
    for (const auto& [m, b] : c.o_pos) cj["o_pos"][std::string(to_string(m))] = box_json(b);
    for (const auto& [m, b] : c.o_neg) cj["o_neg"][std::string(to_string(m))] = box_json(b);
    for (const auto& [m, t] : c.thresholds)
      cj["thresholds"][std::string(to_string(m))] = {{"tau_pos", round6(t.tau_pos)}, {"tau_neg", round6(t.tau_neg)}};
    categories[std::string(to_string(c.category))] = std::move(cj);
  }
  j["categories"] = std::move(categories);

  json scatter = json::array();
  for (const auto& p : s.scatter) {
    scatter.push_back({{"target", p.target_id},
                       {"category", to_string(p.category)},
                       {"measure", to_string(p.measure)},
                       {"o_pos", round6(p.o_pos)},
                       {"o_neg", round6(p.o_neg)},
                       {"region", to_string(p.region)}});
  }
  j["scatter"] = std::move(scatter);
  return j.dump(2) + "\n";
}

}  // namespace cskb
