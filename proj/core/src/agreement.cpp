#include "cskb/agreement.hpp"

#include <string>

#include "cskb/error.hpp"
#include "cskb/io.hpp"
#include "cskb/text.hpp"

namespace cskb {

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.next(line)) throw ParseError(path.string() + ": empty annotation file", 1);
  const auto header = split(LineReader::content(line), '\t');
  if (header.size() < 3 || trim(header[0]) != "statement_id")
    throw ParseError(path.string() + ": header must be 'statement_id' followed by at least 2 rater columns", 1);
  const std::size_t raters = header.size() - 1;

  std::vector<AnnotationRecord> out;
  std::unordered_map<StatementId, std::size_t> seen;
  while (reader.next(line)) {
    const std::string_view row = LineReader::content(line);
    if (trim(row).empty()) continue;
    const auto cols = split(row, '\t');
    if (cols.size() != raters + 1)
      throw ParseError(path.string() + ": expected " + std::to_string(raters) + " rater labels, got " +
                           std::to_string(cols.size() - 1),
                       reader.line_number());
    AnnotationRecord rec;
    const auto id = StatementId::from_hex(trim(cols[0]));
    if (!id)
      throw ParseError(path.string() + ": invalid statement id '" + std::string(cols[0]) + "'", reader.line_number());
    rec.statement_id = *id;
    for (std::size_t i = 1; i < cols.size(); ++i) {
      const auto label = parse_human_label(trim(cols[i]));
      if (!label)
        throw ParseError(path.string() + ": unknown label '" + std::string(cols[i]) + "'", reader.line_number());
      rec.rater_labels.push_back(*label);
    }
    if (auto [it, fresh] = seen.emplace(rec.statement_id, reader.line_number()); !fresh)
      throw ConflictError(path.string() + ": statement " + id->hex() + " annotated on lines " +
                          std::to_string(it->second) + " and " + std::to_string(reader.line_number()));
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<HumanLabel> majority_label(const AnnotationRecord& record) {
  RatingRow counts{};
  for (HumanLabel l : record.rater_labels) ++counts[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < kHumanLabelCount; ++c)
    if (2 * counts[c] > record.rater_labels.size()) return static_cast<HumanLabel>(c);
  return std::nullopt;
}

GoldSet gold_labels(std::span<const AnnotationRecord> records) {
  GoldSet g;
  for (const auto& r : records) {
    if (auto m = majority_label(r))
      g.gold[r.statement_id] = *m;
    else
      ++g.no_majority;
  }
  return g;
}

LabelMap to_human_labels(const std::unordered_map<StatementId, Polarity>& predicted) {
  LabelMap out;
  out.reserve(predicted.size());
  for (const auto& [id, p] : predicted) out.emplace(id, to_human(p));
  return out;
}

namespace {

void require_coverage(const LabelMap& gold, const LabelMap& predicted) {
  std::size_t missing = 0;
  std::string first;
  for (const auto& [id, _] : gold) {
    if (predicted.count(id)) continue;
    if (missing++ == 0) first = id.hex();
  }
  if (missing)
    throw ValidationError(std::to_string(missing) + " annotated statement(s) have no prediction, e.g. " + first);
}

}  // namespace

double agreement_accuracy(const LabelMap& gold, const LabelMap& predicted) {
  if (gold.empty()) throw ValidationError("no gold labels to compare against");
  require_coverage(gold, predicted);
  std::size_t matches = 0;
  for (const auto& [id, g] : gold)
    if (predicted.at(id) == g) ++matches;
  return 100.0 * static_cast<double>(matches) / static_cast<double>(gold.size());
}

PrfResult prf1(const LabelMap& gold, const LabelMap& predicted, HumanLabel positive_class) {
  require_coverage(gold, predicted);
  PrfResult r;
  for (const auto& [id, g] : gold) {
    const bool is_gold = g == positive_class;
    const bool is_pred = predicted.at(id) == positive_class;
    if (is_gold && is_pred) ++r.true_pos;
    else if (is_pred) ++r.false_pos;
    else if (is_gold) ++r.false_neg;
    else ++r.true_neg;
  }
  if (r.true_pos + r.false_neg != 0)
    r.recall = static_cast<double>(r.true_pos) / static_cast<double>(r.true_pos + r.false_neg);
  if (r.true_pos + r.false_pos != 0)
    r.precision = static_cast<double>(r.true_pos) / static_cast<double>(r.true_pos + r.false_pos);
  const double p = r.precision.value_or(0.0);
  const double rec = r.recall.value_or(0.0);
  r.f1 = p + rec > 0.0 ? 2.0 * p * rec / (p + rec) : 0.0;
  return r;
}

KappaResult fleiss_kappa(std::span<const RatingRow> rows) {
  if (rows.empty()) throw ValidationError("Fleiss' kappa needs at least one record");
  std::size_t n = 0;
  for (std::size_t c : rows.front()) n += c;
  if (n < 2) throw ValidationError("Fleiss' kappa needs at least 2 raters per record");

  std::array<long double, kHumanLabelCount> column{};
  long double sum_pi = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t row_n = 0;
    std::size_t agree = 0;  // sum of n_ij (n_ij - 1)
    for (std::size_t c = 0; c < kHumanLabelCount; ++c) {
      row_n += rows[i][c];
      agree += rows[i][c] * (rows[i][c] == 0 ? 0 : rows[i][c] - 1);
      column[c] += static_cast<long double>(rows[i][c]);
    }
    if (row_n != n)
      throw ValidationError("record " + std::to_string(i + 1) + " has " + std::to_string(row_n) + " ratings, expected " +
                            std::to_string(n));
    sum_pi += static_cast<long double>(agree) / static_cast<long double>(n * (n - 1));
  }
  const long double N = static_cast<long double>(rows.size());
  const long double total = N * static_cast<long double>(n);

  KappaResult r;
  const long double p_bar = sum_pi / N;
  long double p_e = 0;
  for (long double c : column) p_e += (c / total) * (c / total);
  r.observed = static_cast<double>(p_bar);
  r.expected = static_cast<double>(p_e);

  // P_e == 1 exactly when one column holds every rating; test on counts.
  bool single_column = false;
  for (long double c : column)
    if (c == total) single_column = true;
  if (single_column) {
    r.degenerate = true;
    r.kappa = 1.0;
    return r;
  }
  // Perfect agreement on every record: report 1 exactly rather than 1 - ulp.
  bool perfect = true;
  for (const auto& row : rows) {
    bool one = false;
    for (std::size_t c : row)
      if (c == n) one = true;
    perfect = perfect && one;
  }
  if (perfect) {
    r.kappa = 1.0;
    return r;
  }
  r.kappa = static_cast<double>((p_bar - p_e) / (1 - p_e));
  return r;
}

KappaResult fleiss_kappa(std::span<const AnnotationRecord> records) {
  if (records.empty()) throw ValidationError("Fleiss' kappa needs at least one record");
  const std::size_t n = records.front().rater_labels.size();
  std::vector<RatingRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.rater_labels.size() != n)
      throw ValidationError("statement " + rec.statement_id.hex() + " has " + std::to_string(rec.rater_labels.size()) +
                            " raters, expected " + std::to_string(n));
    RatingRow row{};
    for (HumanLabel l : rec.rater_labels) ++row[static_cast<std::size_t>(l)];
    rows.push_back(row);
  }
  return fleiss_kappa(std::span<const RatingRow>(rows));
}

}  // namespace cskb
