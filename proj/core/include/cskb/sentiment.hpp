#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "cskb/types.hpp"

namespace cskb {

inline constexpr double kDefaultPolarityThreshold = 0.05;

struct SentimentScores {
  double neg = 0.0;
  double neu = 0.0;
  double pos = 0.0;
  double compound = 0.0;
};

// Rule-based valence scorer following the VADER rule set: lexicon valences,
// booster/dampener words, negation, "but" contrast, ALL-CAPS emphasis,
// special idioms, "least", and '!'/'?' amplification. Scores are rounded the
// way the reference implementation rounds them (compound to 4 places, the
// proportions to 3).
class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  // `lexicon` is the standard VADER lexicon TSV (token, mean, std, ratings).
  // `emoji` is optional: a TSV of single-character emoji -> description.
  static SentimentLexicon load(const std::filesystem::path& lexicon,
                               const std::optional<std::filesystem::path>& emoji = std::nullopt);

  void add(std::string token, double valence) { valence_[std::move(token)] = valence; }
  std::size_t size() const noexcept { return valence_.size(); }

  SentimentScores polarity_scores(std::string_view text) const;
  double compound(std::string_view text) const { return polarity_scores(text).compound; }

  const double* valence(std::string_view lower_token) const;

 private:
  std::unordered_map<std::string, double> valence_;
  std::unordered_map<char32_t, std::string> emoji_;
};

// Compound score in [-1, 1].
double lexicon_sentiment_score(std::string_view text, const SentimentLexicon& lexicon);

// score >= +threshold -> positive, score <= -threshold -> negative.
Polarity polarity_from_score(double score, double threshold = kDefaultPolarityThreshold) noexcept;

}  // namespace cskb
