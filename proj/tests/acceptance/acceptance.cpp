// Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero if any criterion fails.

#include <fcntl.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cskb/agreement.hpp"
#include "cskb/classify.hpp"
#include "cskb/hash.hpp"
#include "cskb/ingest.hpp"
#include "cskb/io.hpp"
#include "cskb/metrics.hpp"
#include "cskb/mitigate.hpp"
#include "cskb/promptgen.hpp"
#include "cskb/sentiment.hpp"
#include "cskb/statement_io.hpp"
#include "cskb/statementize.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace cskb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  bool skipped = false;
};

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && out_.ok) {
      out_.ok = false;
      out_.detail = what;
    }
  }
  void note(std::string d) {
    if (out_.ok) out_.detail = std::move(d);
  }
  void skip(std::string why) {
    out_.skipped = true;
    out_.detail = std::move(why);
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

int g_failures = 0;

void report(const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const Outcome o = c.result();
  const char* tag = o.skipped ? "SKIP" : o.ok ? "PASS" : "FAIL";
  if (!o.ok && !o.skipped) ++g_failures;
  std::cout << tag << "  " << name;
  if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
  std::cout << std::endl;
}

const TargetLexicon& shipped_lexicon() {
  static const TargetLexicon lex = load_targets(test::repo_data("targets.tsv"));
  return lex;
}

const RelationTemplateTable& shipped_templates() {
  static const RelationTemplateTable t = load_relation_templates(test::repo_data("relation_templates.tsv"));
  return t;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << std::fixed << v;
  return os.str();
}

// --- metric oracle -------------------------------------------------------------

TargetLexicon synthetic_lexicon() {
  std::vector<TargetEntry> entries;
  const char* names[] = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel", "india",
                         "juliet", "kilo", "lima", "mike", "november", "oscar", "papa", "quebec", "romeo",
                         "sierra", "tango", "uniform", "victor", "whiskey", "xray", "yankee", "zulu"};
  std::size_t i = 0;
  for (const char* n : names) {
    TargetEntry e;
    e.target_id = n;
    e.name = n;
    e.surface_forms = {n};
    // Religion stays small so some sets leave a whole category empty.
    e.category = i < 2 ? Category::religion : kAllCategories[i % 4 == 2 ? 0 : i % 4];
    entries.push_back(std::move(e));
    ++i;
  }
  return TargetLexicon::build(std::move(entries));
}

struct OracleTarget {
  long long n = 0;
  long long pos[2] = {0, 0};
  long long neg[2] = {0, 0};
};

// Textbook two-pass variance in long double.
long double oracle_variance(const std::vector<long double>& xs) {
  long double s = 0;
  for (auto x : xs) s += x;
  const long double mean = s / xs.size();
  long double ss = 0;
  for (auto x : xs) ss += (x - mean) * (x - mean);
  return ss / xs.size();
}

void metric_oracle(Check& c) {
  const auto lex = synthetic_lexicon();
  const std::vector<Measure> measures{Measure::sentiment, Measure::regard};
  std::mt19937_64 rng(20240917);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t comparisons = 0;

  for (int set = 0; set < 1000; ++set) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 400)(rng);
    // Skewed target popularity so counts vary widely; some targets stay empty.
    const std::size_t active = std::uniform_int_distribution<std::size_t>(1, lex.size())(rng);
    std::vector<std::string> targets(n);
    std::vector<std::array<Polarity, 2>> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = rng() % active, b = rng() % active;
      targets[i] = lex.at(std::min(a, b)).target_id;
      for (int m = 0; m < 2; ++m) labels[i][m] = static_cast<Polarity>(rng() % 3);
    }

    // Library path: alternate between the streaming accumulator and the
    // statement/label-set path.
    std::vector<TargetReport> reports;
    if (set % 2 == 0) {
      AuditAccumulator acc(lex, measures);
      for (std::size_t i = 0; i < n; ++i) acc.add(targets[i], labels[i]);
      reports = acc.reports();
    } else {
      std::vector<Statement> st(n);
      std::vector<LabelSet> sets{{Measure::sentiment, {}}, {Measure::regard, {}}};
      for (std::size_t i = 0; i < n; ++i) {
        st[i].target_id = targets[i];
        st[i].id = StatementId(i * 2654435761u + set);
        for (int m = 0; m < 2; ++m) sets[m].labels[st[i].id] = labels[i][m];
      }
      reports = overgeneralization(st, sets, lex);
    }

    // Brute-force oracle.
    std::map<std::string, OracleTarget> oracle;
    for (const auto& e : lex.entries()) oracle[e.target_id];
    for (std::size_t i = 0; i < n; ++i) {
      auto& o = oracle[targets[i]];
      ++o.n;
      for (int m = 0; m < 2; ++m) {
        o.pos[m] += labels[i][m] == Polarity::positive;
        o.neg[m] += labels[i][m] == Polarity::negative;
      }
    }

    for (const auto& r : reports) {
      const auto& o = oracle.at(r.target_id);
      c.expect(static_cast<long long>(r.n_statements) == o.n, "count mismatch for " + r.target_id);
      for (int m = 0; m < 2; ++m) {
        c.expect(static_cast<long long>(r.measures[m].counts.pos) == o.pos[m], "pos count mismatch");
        c.expect(static_cast<long long>(r.measures[m].counts.neg) == o.neg[m], "neg count mismatch");
        if (o.n > 0) {
          c.expect(std::fabs(*r.measures[m].o_pos - 100.0L * o.pos[m] / o.n) <= 1e-9, "O+ mismatch");
          c.expect(std::fabs(*r.measures[m].o_neg - 100.0L * o.neg[m] / o.n) <= 1e-9, "O- mismatch");
        }
      }
      ++comparisons;
    }

    // Disparities per scope.
    const auto disp = disparity_reports(reports, measures);
    for (const auto& d : disp) {
      std::vector<long double> counts, pos, neg;
      for (const auto& e : lex.entries()) {
        if (d.scope != "all" && to_string(e.category) != d.scope) continue;
        const auto& o = oracle.at(e.target_id);
        counts.push_back(o.n);
        const int m = d.measure == Measure::sentiment ? 0 : 1;
        if (o.n > 0) {
          pos.push_back(100.0L * o.pos[m] / o.n);
          neg.push_back(100.0L * o.neg[m] / o.n);
        }
      }
      c.expect(std::fabs(d.counts.variance - oracle_variance(counts)) <= 1e-9, "D_R mismatch in " + d.scope);
      c.expect(d.o_pos.n == pos.size(), "D_O+ population size mismatch in " + d.scope);
      if (!pos.empty()) {
        c.expect(std::fabs(d.o_pos.variance - oracle_variance(pos)) <= 1e-9, "D_O+ mismatch in " + d.scope);
        c.expect(std::fabs(d.o_neg.variance - oracle_variance(neg)) <= 1e-9, "D_O- mismatch in " + d.scope);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 5.0, "took " + fmt(secs) + " s");
  c.note("1000 sets, " + std::to_string(comparisons) + " target reports, " + fmt(secs) + " s");
}

// --- filtering fixed point -------------------------------------------------------

using Labeler = std::function<std::vector<LabelSet>(std::span<const Statement>)>;

std::vector<Statement> ingest(Source source, const fs::path& p) {
  std::vector<Statement> out;
  SkipReport skips;
  ingest_statements(source, p, shipped_lexicon(), shipped_templates(), {}, skips,
                    [&](Statement&& s) { out.push_back(std::move(s)); });
  return out;
}

void filtering_fixed_point(Check& c) {
  test::TempDir dir;
  const auto vader = SentimentLexicon::load(test::repo_data("vader_lexicon.txt"),
                                            test::repo_data("emoji_utf8_lexicon.txt"));
  const auto keywords =
      load_keyword_lexicon(test::repo_data("keywords_positive.txt"), test::repo_data("keywords_negative.txt"));
  const SentimentClassifier sentiment(vader);
  const KeywordClassifier keyword(keywords);
  // Stand-in for an external labeler: a fixed hash of the masked text.
  auto hashed = [](std::span<const Statement> st) {
    LabelSet s{Measure::regard, {}};
    for (const auto& x : st) {
      const auto h = fnv1a64(x.masked_text) % 5;
      s.labels[x.id] = h == 0 ? Polarity::positive : h == 1 ? Polarity::negative : Polarity::neutral;
    }
    return s;
  };
  auto with = [](const Classifier& cl) {
    return [&cl](std::span<const Statement> st) {
      return LabelSet::from_labels(cl.measure(), classify_batch(st, cl, {1, 2048}));
    };
  };

  const std::vector<std::pair<std::string, Labeler>> configs{
      {"sentiment", [&](auto st) { return std::vector<LabelSet>{with(sentiment)(st)}; }},
      {"keyword", [&](auto st) { return std::vector<LabelSet>{with(keyword)(st)}; }},
      {"regard-sidecar", [&](auto st) { return std::vector<LabelSet>{hashed(st)}; }},
      {"sentiment+keyword+regard",
       [&](auto st) { return std::vector<LabelSet>{with(sentiment)(st), with(keyword)(st), hashed(st)}; }},
  };

  std::string triples;
  {
    const char* objects[] = {"lie", "help people", "steal", "work hard", "be kind", "cook", "hate", "love",
                             "be rude", "sing", "drive", "be a wonderful friend"};
    std::mt19937 rng(3);
    const auto& lex = shipped_lexicon();
    for (int i = 0; i < 500; ++i)
      triples += lex.at(rng() % lex.size()).name + "\tCapableOf\t" + objects[rng() % 12] + "\n";
  }
  struct Kb {
    std::string name;
    Source source;
    KbFormat format;
    fs::path path;
  };
  const std::vector<Kb> kbs{
      {"conceptnet_1000", Source::conceptnet, KbFormat::conceptnet_csv, test::data_path("conceptnet_1000.csv")},
      {"genericskb_10", Source::genericskb, KbFormat::genericskb_tsv, test::data_path("genericskb_10.tsv")},
      {"triples_500", Source::generated_triples, KbFormat::triples_tsv, dir.write("triples.tsv", triples)},
  };

  std::size_t runs = 0, removed_total = 0;
  for (const auto& kb : kbs) {
    for (const auto& [cname, labeler] : configs) {
      const std::string where = kb.name + "/" + cname;
      const auto st = ingest(kb.source, kb.path);
      const auto sets = labeler(st);
      const auto res = filter_statements(st, sets, FilterMode::any);
      removed_total += res.report.removed;
      const auto out = dir / (kb.name + "." + cname + ".filtered");
      write_filtered_kb(res.kept, res.removed, kb.format, kb.path, out);

      const auto again = ingest(kb.source, out);
      const auto sets2 = labeler(again);
      const std::vector<Measure> measures = [&] {
        std::vector<Measure> m;
        for (const auto& s : sets2) m.push_back(s.measure);
        return m;
      }();
      const auto reports = overgeneralization(again, sets2, shipped_lexicon());
      bool any_statements = false;
      for (const auto& r : reports) {
        if (!r.has_statements()) continue;
        any_statements = true;
        for (const auto& m : r.measures) {
          c.expect(*m.o_pos == 0.0 && *m.o_neg == 0.0, where + ": polarized statements survive for " + r.target_id);
        }
      }
      if (any_statements) {
        for (Measure m : measures) {
          const auto nd = neutral_dispersion(reports, m);
          c.expect(nd.mean == 100.0, where + ": neutral mean " + fmt(nd.mean));
          c.expect(nd.variance == 0.0, where + ": neutral variance " + fmt(nd.variance));
        }
      }
      ++runs;
    }
  }
  c.expect(removed_total > 0, "nothing was ever removed; the check is vacuous");
  c.note(std::to_string(runs) + " KB/classifier combinations, mode any, " + std::to_string(removed_total) +
         " statements removed in total");
}

// --- sentiment oracle ------------------------------------------------------------

void sentiment_oracle(Check& c) {
  const auto lex = SentimentLexicon::load(test::repo_data("vader_lexicon.txt"),
                                          test::repo_data("emoji_utf8_lexicon.txt"));
  LineReader reader(test::data_path("vader_oracle.tsv"));
  std::string line;
  std::size_t rows = 0;
  double worst = 0;
  while (reader.next(line)) {
    if (reader.line_number() == 1) continue;
    const auto row = LineReader::content(line);
    const auto tab = row.rfind('\t');
    const double want = std::stod(std::string(row.substr(tab + 1)));
    std::string sentence(row);
    for (int k = 0; k < 4; ++k) sentence.erase(sentence.rfind('\t'));
    const double got = lexicon_sentiment_score(sentence, lex);
    worst = std::max(worst, std::fabs(got - want));
    c.expect(std::fabs(got - want) <= 1e-4, "compound mismatch on '" + sentence + "'");
    c.expect(polarity_from_score(got) == polarity_from_score(want), "label mismatch on '" + sentence + "'");
    ++rows;
  }
  c.expect(rows == 200, "expected 200 oracle rows, read " + std::to_string(rows));
  c.expect(polarity_from_score(lexicon_sentiment_score("lawyers are dishonest", lex)) == Polarity::negative,
           "'lawyers are dishonest' is not negative");
  c.expect(polarity_from_score(lexicon_sentiment_score("british people are brilliant", lex)) == Polarity::positive,
           "'british people are brilliant' is not positive");
  c.note(std::to_string(rows) + " sentences, max |diff| " + std::to_string(worst));
}

// --- Fleiss' kappa ---------------------------------------------------------------

void fleiss(Check& c) {
  const std::vector<RatingRow> perfect{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {3, 0, 0}};
  c.expect(fleiss_kappa(std::span<const RatingRow>(perfect)).kappa == 1.0, "perfect agreement is not 1.0");
  const std::vector<RatingRow> perfect5{{0, 5, 0}, {5, 0, 0}};
  c.expect(fleiss_kappa(std::span<const RatingRow>(perfect5)).kappa == 1.0, "perfect agreement (5 raters)");

  // Column totals 12/10/8 of 30: P-bar = 19/30, P-bar_e = 77/225, kappa = 131/296.
  const std::vector<RatingRow> table{{3, 0, 0}, {0, 3, 0}, {2, 1, 0}, {1, 1, 1}, {0, 0, 3},
                                     {2, 0, 1}, {0, 2, 1}, {3, 0, 0}, {1, 0, 2}, {0, 3, 0}};
  const double expected = 131.0 / 296.0;
  const auto k = fleiss_kappa(std::span<const RatingRow>(table));
  c.expect(std::fabs(k.kappa - expected) <= 1e-9, "hand-computed table gives " + std::to_string(k.kappa));

  std::vector<AnnotationRecord> recs;
  for (std::size_t i = 0; i < table.size(); ++i) {
    AnnotationRecord r{StatementId(i + 1), {}};
    for (std::size_t cat = 0; cat < 3; ++cat)
      for (std::size_t j = 0; j < table[i][cat]; ++j) r.rater_labels.push_back(static_cast<HumanLabel>(cat));
    recs.push_back(std::move(r));
  }
  std::mt19937 rng(99);
  for (int s = 0; s < 100; ++s) {
    std::shuffle(recs.begin(), recs.end(), rng);
    for (auto& r : recs) std::shuffle(r.rater_labels.begin(), r.rater_labels.end(), rng);
    const double got = fleiss_kappa(std::span<const AnnotationRecord>(recs)).kappa;
    c.expect(std::fabs(got - expected) <= 1e-9, "shuffle " + std::to_string(s) + " gives " + std::to_string(got));
  }
  c.note("kappa " + std::to_string(k.kappa) + ", 100 shuffles");
}

// --- subprocess helpers ----------------------------------------------------------

struct ChildRun {
  int status = -1;
  double seconds = 0;
  long max_rss_kb = 0;
};

ChildRun run_cli(const std::vector<std::string>& args, const fs::path& log) {
  std::vector<char*> argv;
  std::string exe = CSKB_AUDIT_EXE;
  argv.push_back(exe.data());
  std::vector<std::string> copy = args;
  for (auto& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);

  const auto t0 = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid == 0) {
    const int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      ::dup2(fd, STDOUT_FILENO);
      ::dup2(fd, STDERR_FILENO);
      ::close(fd);
    }
    ::execv(exe.c_str(), argv.data());
    std::_Exit(127);
  }
  ChildRun r;
  int status = 0;
  struct rusage usage {};
  ::wait4(pid, &status, 0, &usage);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.max_rss_kb = usage.ru_maxrss;
  return r;
}

// --- parser fidelity -------------------------------------------------------------

void parser_fidelity(Check& c) {
  test::TempDir dir;
  const auto expected = nlohmann::json::parse(test::slurp(test::data_path("conceptnet_1000.expected.json")));
  SkipReport skips;
  ConceptNetReader reader(test::data_path("conceptnet_1000.csv"), shipped_lexicon(), skips);
  std::size_t triples = 0;
  while (reader.next()) ++triples;
  c.expect(reader.stats().lines == expected["lines"].get<std::size_t>(), "line count");
  c.expect(triples == expected["triples"].get<std::size_t>(),
           "triples " + std::to_string(triples) + " != " + expected["triples"].dump());
  c.expect(skips.size() == expected["malformed"].get<std::size_t>(),
           "skip report has " + std::to_string(skips.size()) + " entries");

  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const auto out = dir / ("run" + std::to_string(i) + ".jsonl");
    const auto r = run_cli({"ingest", "--source", "conceptnet", "--input", test::data_path("conceptnet_1000.csv").string(),
                            "--targets", test::repo_data("targets.tsv").string(), "--relations",
                            test::repo_data("relation_templates.tsv").string(), "--out", out.string(), "--skips",
                            (dir / "skips.jsonl").string()},
                           dir / "log.txt");
    c.expect(r.status == 0, "ingest exited with " + std::to_string(r.status));
    outputs[i] = test::slurp(out) + test::slurp(dir / "skips.jsonl");
  }
  c.expect(!outputs[0].empty() && outputs[0] == outputs[1], "re-run output differs");
  c.note(std::to_string(triples) + " triples, " + std::to_string(skips.size()) + " malformed lines skipped");
}

// --- rendering and prompts -------------------------------------------------------

void triple_rendering(Check& c) {
  const Triple t{normalize_concept("American"), "IsA", normalize_concept("citizen_of_America"), ""};
  const auto text = render_triple(t, shipped_templates());
  c.expect(text == "american is a citizen of america", "rendered '" + text + "'");
  const auto masked = mask_targets(text, shipped_lexicon());
  c.expect(masked == "XYZ is a citizen of XYZ", "masked '" + masked + "'");
  c.note("'" + text + "' -> '" + masked + "'");
}

void prompt_counts(Check& c) {
  const auto& lex = shipped_lexicon();
  const auto relations = load_relation_list(test::repo_data("comet_relations.txt"));
  c.expect(lex.size() == 329, "lexicon has " + std::to_string(lex.size()) + " targets");
  c.expect(relations.size() == 34, "relation list has " + std::to_string(relations.size()));
  const auto pairs = comet_prompt_matrix(lex, relations);
  c.expect(pairs.size() == 11186, "COMeT pairs " + std::to_string(pairs.size()));

  const auto templates = load_story_templates(test::repo_data("story_templates.tsv"));
  std::string dumps[2];
  std::size_t n = 0;
  for (auto& d : dumps) {
    const auto prompts = expand_templates(templates, lex);
    n = prompts.size();
    std::ostringstream os;
    write_prompts(os, prompts);
    d = os.str();
  }
  c.expect(n == 2608, "story prompts " + std::to_string(n));
  c.expect(dumps[0] == dumps[1], "template expansion is not deterministic");
  c.note(std::to_string(pairs.size()) + " pairs, " + std::to_string(n) + " story prompts");
}

// --- performance -----------------------------------------------------------------

void performance(Check& c) {
  test::TempDir dir;
  const auto& lex = shipped_lexicon();
  const char* words[] = {"dishonest", "brilliant", "lazy", "kind", "tall", "quiet", "in the city", "at work",
                         "hardworking", "rude", "with friends", "at home", "greedy", "smart", "often", "here"};
  const auto path = dir / "statements.jsonl";
  {
    std::ofstream out(path, std::ios::binary);
    std::mt19937_64 rng(1);
    Statement s;
    s.source = Source::generated_triples;
    for (std::size_t i = 0; i < 1'000'000; ++i) {
      const auto& e = lex.at(rng() % lex.size());
      s.target_id = e.target_id;
      s.category = e.category;
      s.text = e.name + " are " + words[rng() % 16] + " " + std::to_string(i);
      s.masked_text = "XYZ are " + s.text.substr(e.name.size() + 5);
      s.id = make_statement_id(s.source, s.text, s.target_id);
      s.line = i + 1;
      out << to_json_line(s) << '\n';
    }
  }
  const auto r = run_cli({"audit", "--statements", path.string(), "--targets", test::repo_data("targets.tsv").string(),
                          "--classifier", "keyword", "--keywords-pos",
                          test::repo_data("keywords_positive.txt").string(), "--keywords-neg",
                          test::repo_data("keywords_negative.txt").string(), "--out-dir", (dir / "out").string()},
                         dir / "log.txt");
  c.expect(r.status == 0, "audit exited with " + std::to_string(r.status) + ": " + test::slurp(dir / "log.txt"));
  const double rss_mb = r.max_rss_kb / 1024.0;
  c.expect(r.seconds < 60.0, "took " + fmt(r.seconds) + " s");
  c.expect(rss_mb < 1024.0, "peak RSS " + fmt(rss_mb) + " MB");
  std::size_t rows = 0;
  if (r.status == 0) rows = read_lines(dir / "out/report.csv").size();
  c.expect(rows == 1 + 329, "report.csv has " + std::to_string(rows) + " lines");
  c.note("1,000,000 statements in " + fmt(r.seconds) + " s, peak RSS " + fmt(rss_mb) + " MB");
}

// --- integration (optional) --------------------------------------------------------

void integration(Check& c) {
  const char* dump = std::getenv("CSKB_CONCEPTNET_DUMP");
  if (!dump || !*dump) {
    c.skip("set CSKB_CONCEPTNET_DUMP to a ConceptNet 5.7 assertions file to run");
    return;
  }
  test::TempDir dir;
  const auto st = dir / "st.jsonl";
  auto r = run_cli({"ingest", "--source", "conceptnet", "--input", dump, "--targets",
                    test::repo_data("targets.tsv").string(), "--relations",
                    test::repo_data("relation_templates.tsv").string(), "--out", st.string()},
                   dir / "log.txt");
  c.expect(r.status == 0, "ingest failed: " + test::slurp(dir / "log.txt"));
  if (r.status != 0) return;
  r = run_cli({"audit", "--statements", st.string(), "--targets", test::repo_data("targets.tsv").string(),
               "--classifier", "sentiment", "--vader-lexicon", test::repo_data("vader_lexicon.txt").string(),
               "--emoji-lexicon", test::repo_data("emoji_utf8_lexicon.txt").string(), "--out-dir",
               (dir / "out").string()},
              dir / "log.txt");
  c.expect(r.status == 0, "audit failed: " + test::slurp(dir / "log.txt"));
  if (r.status != 0) return;
  const auto summary = nlohmann::json::parse(test::slurp(dir / "out/summary.json"));
  const auto& overall = summary["overall"]["sentiment"];
  const double n = overall["n_statements"].get<double>();
  const double pct = overall["overgeneralized_pct"].get<double>();
  c.expect(n >= 50'000 && n <= 200'000, "matched statements " + std::to_string(n));
  c.expect(pct >= 2.0 && pct <= 8.0, "sentiment-overgeneralized " + fmt(pct) + "%");
  c.note(std::to_string(static_cast<long long>(n)) + " statements, " + fmt(pct) + "% overgeneralized");
}

}  // namespace

int main() {
  report("metric oracle equivalence", metric_oracle);
  report("filtering fixed point", filtering_fixed_point);
  report("sentiment oracle", sentiment_oracle);
  report("fleiss kappa", fleiss);
  report("parser fidelity", parser_fidelity);
  report("triple rendering", triple_rendering);
  report("prompt counts", prompt_counts);
  report("performance", performance);
  report("integration (optional)", integration);
  return g_failures == 0 ? 0 : 1;
}
