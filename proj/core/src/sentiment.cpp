#include "cskb/sentiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <unordered_set>
#include <vector>

#include "cskb/error.hpp"
#include "cskb/io.hpp"
#include "cskb/text.hpp"

namespace cskb {

namespace {

constexpr double kBoostIncrement = 0.293;
constexpr double kBoostDecrement = -0.293;
constexpr double kCapsIncrement = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kNormalizeAlpha = 15.0;

const std::unordered_set<std::string_view> kNegations = {
    "aint",    "arent",    "cannot",  "cant",     "couldnt", "darent",  "didnt",   "doesnt",  "ain't",
    "aren't",  "can't",    "couldn't", "daren't", "didn't",  "doesn't", "dont",    "hadnt",   "hasnt",
    "havent",  "isnt",     "mightnt", "mustnt",   "neither", "don't",   "hadn't",  "hasn't",  "haven't",
    "isn't",   "mightn't", "mustn't", "neednt",   "needn't", "never",   "none",    "nope",    "nor",
    "not",     "nothing",  "nowhere", "oughtnt",  "shant",   "shouldnt", "uhuh",   "wasnt",   "werent",
    "oughtn't", "shan't",  "shouldn't", "uh-uh",  "wasn't",  "weren't", "without", "wont",    "wouldnt",
    "won't",   "wouldn't", "rarely",  "seldom",   "despite"};

const std::unordered_map<std::string_view, double> kBoosters = {
    {"absolutely", kBoostIncrement},   {"amazingly", kBoostIncrement},    {"awfully", kBoostIncrement},
    {"completely", kBoostIncrement},   {"considerable", kBoostIncrement}, {"considerably", kBoostIncrement},
    {"decidedly", kBoostIncrement},    {"deeply", kBoostIncrement},       {"effing", kBoostIncrement},
    {"enormous", kBoostIncrement},     {"enormously", kBoostIncrement},   {"entirely", kBoostIncrement},
    {"especially", kBoostIncrement},   {"exceptional", kBoostIncrement},  {"exceptionally", kBoostIncrement},
    {"extreme", kBoostIncrement},      {"extremely", kBoostIncrement},    {"fabulously", kBoostIncrement},
    {"flipping", kBoostIncrement},     {"flippin", kBoostIncrement},      {"frackin", kBoostIncrement},
    {"fracking", kBoostIncrement},     {"fricking", kBoostIncrement},     {"frickin", kBoostIncrement},
    {"frigging", kBoostIncrement},     {"friggin", kBoostIncrement},      {"fully", kBoostIncrement},
    {"fuckin", kBoostIncrement},       {"fucking", kBoostIncrement},      {"fuggin", kBoostIncrement},
    {"fugging", kBoostIncrement},      {"greatly", kBoostIncrement},      {"hella", kBoostIncrement},
    {"highly", kBoostIncrement},       {"hugely", kBoostIncrement},       {"incredible", kBoostIncrement},
    {"incredibly", kBoostIncrement},   {"intensely", kBoostIncrement},    {"major", kBoostIncrement},
    {"majorly", kBoostIncrement},      {"more", kBoostIncrement},         {"most", kBoostIncrement},
    {"particularly", kBoostIncrement}, {"purely", kBoostIncrement},       {"quite", kBoostIncrement},
    {"really", kBoostIncrement},       {"remarkably", kBoostIncrement},   {"so", kBoostIncrement},
    {"substantially", kBoostIncrement}, {"thoroughly", kBoostIncrement},  {"total", kBoostIncrement},
    {"totally", kBoostIncrement},      {"tremendous", kBoostIncrement},   {"tremendously", kBoostIncrement},
    {"uber", kBoostIncrement},         {"unbelievably", kBoostIncrement}, {"unusually", kBoostIncrement},
    {"utter", kBoostIncrement},        {"utterly", kBoostIncrement},      {"very", kBoostIncrement},
    {"almost", kBoostDecrement},       {"barely", kBoostDecrement},       {"hardly", kBoostDecrement},
    {"just enough", kBoostDecrement},  {"kind of", kBoostDecrement},      {"kinda", kBoostDecrement},
    {"kindof", kBoostDecrement},       {"kind-of", kBoostDecrement},      {"less", kBoostDecrement},
    {"little", kBoostDecrement},       {"marginal", kBoostDecrement},     {"marginally", kBoostDecrement},
    {"occasional", kBoostDecrement},   {"occasionally", kBoostDecrement}, {"partly", kBoostDecrement},
    {"scarce", kBoostDecrement},       {"scarcely", kBoostDecrement},     {"slight", kBoostDecrement},
    {"slightly", kBoostDecrement},     {"somewhat", kBoostDecrement},     {"sort of", kBoostDecrement},
    {"sorta", kBoostDecrement},        {"sortof", kBoostDecrement},       {"sort-of", kBoostDecrement}};

const std::unordered_map<std::string_view, double> kSpecialCases = {
    {"the shit", 3},      {"the bomb", 3},       {"bad ass", 1.5},        {"badass", 1.5},
    {"bus stop", 0.0},    {"yeah right", -2},    {"kiss of death", -1.5}, {"to die for", 3},
    {"beating heart", 3.5}};

// --- code point helpers ------------------------------------------------------

// Invalid bytes decode to U+DC00+byte and re-encode to the same byte.
std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len != 0 && i + len <= s.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(0xDC00 + b0);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp >= 0xDC80 && cp <= 0xDCFF) {
    out.push_back(static_cast<char>(cp - 0xDC00));
  } else if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Python str.isspace() for the code points that can occur in practice.
bool is_space(char32_t c) noexcept {
  return (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x20) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
         c == 0x3000;
}

bool is_ascii_punct(char32_t c) noexcept {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

// Case handling covers ASCII and Latin-1; other scripts are treated as uncased.
bool is_upper_cp(char32_t c) noexcept {
  return (c >= 'A' && c <= 'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7);
}
bool is_lower_cp(char32_t c) noexcept {
  return (c >= 'a' && c <= 'z') || c == 0xB5 || (c >= 0xDF && c <= 0xFF && c != 0xF7);
}
char32_t to_lower_cp(char32_t c) noexcept { return is_upper_cp(c) ? c + 0x20 : c; }

struct Word {
  std::string lower;
  bool upper = false;  // Python str.isupper()
};

double python_round(double x, int places) {
  // printf rounds the exact binary value half-to-even, like Python's round().
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, x);
  return std::strtod(buf, nullptr);
}

double normalize(double score) {
  const double norm = score / std::sqrt(score * score + kNormalizeAlpha);
  if (norm < -1.0) return -1.0;
  if (norm > 1.0) return 1.0;
  return norm;
}

bool negated(const std::string& lower_word) {
  return kNegations.count(lower_word) != 0 || lower_word.find("n't") != std::string::npos;
}

class Scorer {
 public:
  Scorer(const SentimentLexicon& lex, std::vector<Word> words) : lex_(lex), words_(std::move(words)) {
    std::size_t allcaps = 0;
    for (const auto& w : words_)
      if (w.upper) ++allcaps;
    const std::size_t diff = words_.size() - allcaps;
    cap_diff_ = diff > 0 && diff < words_.size();
  }

  std::vector<double> sentiments() {
    std::vector<double> out;
    const std::size_t n = words_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& w = words_[i].lower;
      if (kBoosters.count(w) != 0) {
        out.push_back(0.0);
        continue;
      }
      if (i < n - 1 && w == "kind" && words_[i + 1].lower == "of") {
        out.push_back(0.0);
        continue;
      }
      out.push_back(valence_at(i));
    }
    but_check(out);
    return out;
  }

 private:
  const std::string& lw(std::size_t k) const { return words_[k].lower; }
  bool in_lexicon(std::size_t k) const { return lex_.valence(lw(k)) != nullptr; }

  double scalar_inc_dec(std::size_t k, double valence) const {
    double scalar = 0.0;
    auto it = kBoosters.find(lw(k));
    if (it != kBoosters.end()) {
      scalar = it->second;
      if (valence < 0) scalar *= -1;
      if (words_[k].upper && cap_diff_) {
        if (valence > 0)
          scalar += kCapsIncrement;
        else
          scalar -= kCapsIncrement;
      }
    }
    return scalar;
  }

  double valence_at(std::size_t i) const {
    const double* base = lex_.valence(lw(i));
    if (base == nullptr) return 0.0;
    const std::size_t n = words_.size();
    double valence = *base;
    if (lw(i) == "no" && i != n - 1 && in_lexicon(i + 1)) valence = 0.0;
    if ((i > 0 && lw(i - 1) == "no") || (i > 1 && lw(i - 2) == "no") ||
        (i > 2 && lw(i - 3) == "no" && (lw(i - 1) == "or" || lw(i - 1) == "nor")))
      valence = *base * kNegationScalar;

    if (words_[i].upper && cap_diff_) {
      if (valence > 0)
        valence += kCapsIncrement;
      else
        valence -= kCapsIncrement;
    }

    for (std::size_t start = 0; start < 3; ++start) {
      if (i > start && !in_lexicon(i - (start + 1))) {
        double s = scalar_inc_dec(i - (start + 1), valence);
        if (start == 1 && s != 0) s *= 0.95;
        if (start == 2 && s != 0) s *= 0.9;
        valence += s;
        valence = negation_check(valence, start, i);
        if (start == 2) valence = special_idioms_check(valence, i);
      }
    }
    return least_check(valence, i);
  }

  double negation_check(double valence, std::size_t start, std::size_t i) const {
    if (start == 0) {
      if (negated(lw(i - 1))) valence *= kNegationScalar;
    } else if (start == 1) {
      if (lw(i - 2) == "never" && (lw(i - 1) == "so" || lw(i - 1) == "this"))
        valence *= 1.25;
      else if (lw(i - 2) == "without" && lw(i - 1) == "doubt")
        ;
      else if (negated(lw(i - 2)))
        valence *= kNegationScalar;
    } else {
      // (never AND (so|this) two back) OR ((so|this) one back), as in the reference.
      if ((lw(i - 3) == "never" && (lw(i - 2) == "so" || lw(i - 2) == "this")) ||
          (lw(i - 1) == "so" || lw(i - 1) == "this"))
        valence *= 1.25;
      else if (lw(i - 3) == "without" && (lw(i - 2) == "doubt" || lw(i - 1) == "doubt"))
        ;
      else if (negated(lw(i - 3)))
        valence *= kNegationScalar;
    }
    return valence;
  }

  double special_idioms_check(double valence, std::size_t i) const {
    const std::string onezero = lw(i - 1) + " " + lw(i);
    const std::string twoonezero = lw(i - 2) + " " + lw(i - 1) + " " + lw(i);
    const std::string twoone = lw(i - 2) + " " + lw(i - 1);
    const std::string threetwoone = lw(i - 3) + " " + lw(i - 2) + " " + lw(i - 1);
    const std::string threetwo = lw(i - 3) + " " + lw(i - 2);

    for (const std::string* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
      auto it = kSpecialCases.find(*seq);
      if (it != kSpecialCases.end()) {
        valence = it->second;
        break;
      }
    }
    const std::size_t n = words_.size();
    if (n - 1 > i) {
      auto it = kSpecialCases.find(lw(i) + " " + lw(i + 1));
      if (it != kSpecialCases.end()) valence = it->second;
    }
    if (n - 1 > i + 1) {
      auto it = kSpecialCases.find(lw(i) + " " + lw(i + 1) + " " + lw(i + 2));
      if (it != kSpecialCases.end()) valence = it->second;
    }
    for (const std::string* gram : {&threetwoone, &threetwo, &twoone}) {
      auto it = kBoosters.find(*gram);
      if (it != kBoosters.end()) valence += it->second;
    }
    return valence;
  }

  double least_check(double valence, std::size_t i) const {
    if (i > 1 && !in_lexicon(i - 1) && lw(i - 1) == "least") {
      if (lw(i - 2) != "at" && lw(i - 2) != "very") valence *= kNegationScalar;
    } else if (i > 0 && !in_lexicon(i - 1) && lw(i - 1) == "least") {
      valence *= kNegationScalar;
    }
    return valence;
  }

  // The reference locates each value with list.index(), i.e. the first equal
  // element, and rewrites that slot. Reproduced verbatim, including the
  // effect on repeated values.
  void but_check(std::vector<double>& s) const {
    std::size_t but = words_.size();
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (lw(k) == "but") {
        but = k;
        break;
      }
    if (but == words_.size()) return;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double v = s[k];
      std::size_t si = 0;
      while (s[si] != v) ++si;
      if (si < but)
        s[si] = v * 0.5;
      else if (si > but)
        s[si] = v * 1.5;
    }
  }

  const SentimentLexicon& lex_;
  std::vector<Word> words_;
  bool cap_diff_ = false;
};

std::vector<Word> words_and_emoticons(const std::u32string& text) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_ascii_punct(text[b])) ++b;
    while (e > b && is_ascii_punct(text[e - 1])) --e;
    if (e - b <= 2) {  // likely an emoticon: keep the raw token
      b = i;
      e = j;
    }
    Word w;
    bool cased = false;
    bool has_lower = false;
    for (std::size_t k = b; k < e; ++k) {
      const char32_t c = text[k];
      if (is_upper_cp(c)) cased = true;
      if (is_lower_cp(c)) cased = has_lower = true;
      encode_utf8(to_lower_cp(c), w.lower);
    }
    w.upper = cased && !has_lower;
    out.push_back(std::move(w));
    i = j;
  }
  return out;
}

double punctuation_emphasis(const std::u32string& text) {
  std::size_t ep = 0;
  std::size_t qm = 0;
  for (char32_t c : text) {
    if (c == U'!') ++ep;
    if (c == U'?') ++qm;
  }
  if (ep > 4) ep = 4;
  const double ep_amp = static_cast<double>(ep) * 0.292;
  double qm_amp = 0.0;
  if (qm > 1) qm_amp = qm <= 3 ? static_cast<double>(qm) * 0.18 : 0.96;
  return ep_amp + qm_amp;
}

}  // namespace

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& lexicon,
                                        const std::optional<std::filesystem::path>& emoji) {
  SentimentLexicon out;
  LineReader reader(lexicon);
  std::string line;
  while (reader.next(line)) {
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto cols = split(row, '\t');
    if (cols.size() < 2)
      throw ParseError("expected token<TAB>valence in " + lexicon.string(), reader.line_number());
    const std::string value(cols[1]);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
      throw ParseError("invalid valence '" + value + "' in " + lexicon.string(), reader.line_number());
    out.valence_[std::string(cols[0])] = v;
  }
  if (emoji) {
    LineReader er(*emoji);
    while (er.next(line)) {
      const std::string_view row = trim(line);
      if (row.empty()) continue;
      const auto cols = split(row, '\t');
      if (cols.size() < 2) continue;
      const std::u32string key = decode_utf8(cols[0]);
      // Only single code points can match a per-character scan.
      if (key.size() == 1) out.emoji_[key[0]] = std::string(cols[1]);
    }
  }
  return out;
}

const double* SentimentLexicon::valence(std::string_view lower_token) const {
  auto it = valence_.find(std::string(lower_token));
  return it == valence_.end() ? nullptr : &it->second;
}

SentimentScores SentimentLexicon::polarity_scores(std::string_view raw) const {
  std::u32string text;
  {
    const std::u32string decoded = decode_utf8(raw);
    text.reserve(decoded.size());
    bool prev_space = true;
    for (char32_t c : decoded) {
      auto it = emoji_.empty() ? emoji_.end() : emoji_.find(c);
      if (it != emoji_.end()) {
        if (!prev_space) text.push_back(U' ');
        text += decode_utf8(it->second);
        prev_space = false;
      } else {
        text.push_back(c);
        prev_space = c == U' ';
      }
    }
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    text = text.substr(b, e - b);
  }

  Scorer scorer(*this, words_and_emoticons(text));
  const std::vector<double> sentiments = scorer.sentiments();

  SentimentScores out;
  if (sentiments.empty()) return out;

  double sum = 0.0;
  for (double s : sentiments) sum += s;
  const double amp = punctuation_emphasis(text);
  if (sum > 0)
    sum += amp;
  else if (sum < 0)
    sum -= amp;
  const double compound = normalize(sum);

  double pos_sum = 0.0;
  double neg_sum = 0.0;
  std::size_t neu_count = 0;
  for (double s : sentiments) {
    if (s > 0) pos_sum += s + 1;
    if (s < 0) neg_sum += s - 1;
    if (s == 0) ++neu_count;
  }
  if (pos_sum > std::fabs(neg_sum))
    pos_sum += amp;
  else if (pos_sum < std::fabs(neg_sum))
    neg_sum -= amp;
  const double total = pos_sum + std::fabs(neg_sum) + static_cast<double>(neu_count);

  out.pos = python_round(std::fabs(pos_sum / total), 3);
  out.neg = python_round(std::fabs(neg_sum / total), 3);
  out.neu = python_round(std::fabs(static_cast<double>(neu_count) / total), 3);
  out.compound = python_round(compound, 4);
  return out;
}

double lexicon_sentiment_score(std::string_view text, const SentimentLexicon& lexicon) {
  return lexicon.compound(text);
}

Polarity polarity_from_score(double score, double threshold) noexcept {
  if (score >= threshold) return Polarity::positive;
  if (score <= -threshold) return Polarity::negative;
  return Polarity::neutral;
}

}  // namespace cskb
