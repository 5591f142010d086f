#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cskb {

// A word token with byte offsets into the source text. `lower` is the
// ASCII-lowercased token text.
struct Token {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string lower;
};

// Splits on whitespace and punctuation. Hyphens, underscores and apostrophes
// are separators, so "african_american" yields two tokens. Non-ASCII bytes
// are word characters except for a fixed set of Unicode spaces, dashes and
// quotation marks.
std::vector<Token> tokenize_words(std::string_view text);
void tokenize_words(std::string_view text, std::vector<Token>& out);

std::string ascii_lower(std::string_view s);
bool is_ascii_space(char c) noexcept;
std::string_view trim(std::string_view s) noexcept;

// Splits on every occurrence of `sep`; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

std::size_t utf8_length(std::string_view s) noexcept;

}  // namespace cskb
