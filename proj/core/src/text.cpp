#include "cskb/text.hpp"

#include <array>

namespace cskb {

namespace {

bool is_ascii_separator(unsigned char c) noexcept {
  if (c >= 0x80) return false;
  if (c >= '0' && c <= '9') return false;
  if (c >= 'a' && c <= 'z') return false;
  if (c >= 'A' && c <= 'Z') return false;
  return true;  // whitespace, controls and ASCII punctuation
}

// Length in bytes of a multi-byte separator starting at s[i], or 0.
std::size_t unicode_separator_length(std::string_view s, std::size_t i) noexcept {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 == 0xC2 && i + 1 < s.size()) {
    const auto b1 = static_cast<unsigned char>(s[i + 1]);
    // U+00A0 no-break space, U+00AB/U+00BB guillemets, U+00B7 middle dot
    if (b1 == 0xA0 || b1 == 0xAB || b1 == 0xBB || b1 == 0xB7) return 2;
    return 0;
  }
  if (b0 == 0xE2 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80) {
    const auto b2 = static_cast<unsigned char>(s[i + 2]);
    // U+2000..U+200B spaces, U+2010..U+2015 dashes, U+2018..U+201F quotes,
    // U+2026 ellipsis, U+202F narrow no-break space
    if (b2 <= 0x8B || (b2 >= 0x90 && b2 <= 0x9F) || b2 == 0xA6 || b2 == 0xAF) return 3;
    return 0;
  }
  if (b0 == 0xE3 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      static_cast<unsigned char>(s[i + 2]) == 0x80)
    return 3;  // U+3000 ideographic space
  return 0;
}

char lower_char(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace

void tokenize_words(std::string_view text, std::vector<Token>& out) {
  out.clear();
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_ascii_separator(c)) {
      ++i;
      continue;
    }
    if (c >= 0x80) {
      if (std::size_t len = unicode_separator_length(text, i)) {
        i += len;
        continue;
      }
    }
    Token tok;
    tok.begin = i;
    while (i < n) {
      const auto d = static_cast<unsigned char>(text[i]);
      if (is_ascii_separator(d)) break;
      if (d >= 0x80 && unicode_separator_length(text, i) != 0) break;
      tok.lower.push_back(lower_char(text[i]));
      ++i;
    }
    tok.end = i;
    out.push_back(std::move(tok));
  }
}

std::vector<Token> tokenize_words(std::string_view text) {
  std::vector<Token> out;
  tokenize_words(text, out);
  return out;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower_char(c);
  return out;
}

bool is_ascii_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::size_t utf8_length(std::string_view s) noexcept {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

}  // namespace cskb
