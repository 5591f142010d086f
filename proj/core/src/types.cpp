#include "cskb/types.hpp"

#include <charconv>

namespace cskb {

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::origin: return "origin";
    case Category::gender: return "gender";
    case Category::religion: return "religion";
    case Category::profession: return "profession";
  }
  return "?";
}

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::sentiment: return "sentiment";
    case Measure::regard: return "regard";
    case Measure::keyword: return "keyword";
  }
  return "?";
}

std::string_view to_string(Polarity p) noexcept {
  switch (p) {
    case Polarity::positive: return "positive";
    case Polarity::negative: return "negative";
    case Polarity::neutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(Source s) noexcept {
  switch (s) {
    case Source::conceptnet: return "conceptnet";
    case Source::genericskb: return "genericskb";
    case Source::generated_triples: return "generated_triples";
    case Source::generated_stories: return "generated_stories";
  }
  return "?";
}

std::string_view to_string(HumanLabel h) noexcept {
  switch (h) {
    case HumanLabel::favoritism: return "favoritism";
    case HumanLabel::prejudice: return "prejudice";
    case HumanLabel::neutral: return "neutral";
  }
  return "?";
}

namespace {
template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const std::array<E, N>& all) noexcept {
  for (E e : all)
    if (to_string(e) == s) return e;
  return std::nullopt;
}
}  // namespace

std::optional<Category> parse_category(std::string_view s) noexcept {
  return lookup(s, kAllCategories);
}

std::optional<Measure> parse_measure(std::string_view s) noexcept {
  return lookup(s, kAllMeasures);
}

std::optional<Polarity> parse_polarity(std::string_view s) noexcept {
  return lookup(s, std::array{Polarity::positive, Polarity::negative, Polarity::neutral});
}

std::optional<Source> parse_source(std::string_view s) noexcept {
  return lookup(s, std::array{Source::conceptnet, Source::genericskb, Source::generated_triples,
                              Source::generated_stories});
}

std::optional<HumanLabel> parse_human_label(std::string_view s) noexcept {
  return lookup(s, std::array{HumanLabel::favoritism, HumanLabel::prejudice, HumanLabel::neutral});
}

std::string StatementId::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  std::uint64_t v = value_;
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::optional<StatementId> StatementId::from_hex(std::string_view s) noexcept {
  if (s.size() != 16) return std::nullopt;
  for (char c : s)
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return StatementId{v};
}

}  // namespace cskb
