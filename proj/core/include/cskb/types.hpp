#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace cskb {

enum class Category : std::uint8_t { origin, gender, religion, profession };
inline constexpr std::array kAllCategories{Category::origin, Category::gender,
                                           Category::religion, Category::profession};

enum class Measure : std::uint8_t { sentiment, regard, keyword };
inline constexpr std::array kAllMeasures{Measure::sentiment, Measure::regard, Measure::keyword};

enum class Polarity : std::uint8_t { positive, negative, neutral };

enum class Source : std::uint8_t { conceptnet, genericskb, generated_triples, generated_stories };

// Human annotation vocabulary.
enum class HumanLabel : std::uint8_t { favoritism, prejudice, neutral };

std::string_view to_string(Category c) noexcept;
std::string_view to_string(Measure m) noexcept;
std::string_view to_string(Polarity p) noexcept;
std::string_view to_string(Source s) noexcept;
std::string_view to_string(HumanLabel h) noexcept;

// Parsers are exact and case-sensitive; they return nullopt on unknown input.
std::optional<Category> parse_category(std::string_view s) noexcept;
std::optional<Measure> parse_measure(std::string_view s) noexcept;
std::optional<Polarity> parse_polarity(std::string_view s) noexcept;
std::optional<Source> parse_source(std::string_view s) noexcept;
std::optional<HumanLabel> parse_human_label(std::string_view s) noexcept;

// Fixed classifier -> human vocabulary mapping.
constexpr HumanLabel to_human(Polarity p) noexcept {
  switch (p) {
    case Polarity::positive: return HumanLabel::favoritism;
    case Polarity::negative: return HumanLabel::prejudice;
    case Polarity::neutral: break;
  }
  return HumanLabel::neutral;
}

// 64-bit content hash identifying a statement, rendered as 16 lowercase hex digits.
class StatementId {
 public:
  constexpr StatementId() = default;
  constexpr explicit StatementId(std::uint64_t v) : value_(v) {}

  constexpr std::uint64_t value() const noexcept { return value_; }
  std::string hex() const;
  static std::optional<StatementId> from_hex(std::string_view s) noexcept;

  friend constexpr auto operator<=>(StatementId, StatementId) = default;

 private:
  std::uint64_t value_ = 0;
};

}  // namespace cskb

template <>
struct std::hash<cskb::StatementId> {
  std::size_t operator()(cskb::StatementId id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value());
  }
};
