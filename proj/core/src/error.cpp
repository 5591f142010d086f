#include "cskb/error.hpp"

namespace cskb {

namespace {
std::string with_line(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}
}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

TransportError::TransportError(const std::string& what, std::size_t request_index,
                               std::size_t first_text, std::size_t last_text)
    : Error("request " + std::to_string(request_index) + " (texts " +
            std::to_string(first_text) + ".." + std::to_string(last_text) + "): " + what),
      request_index_(request_index),
      first_text_(first_text),
      last_text_(last_text) {}

}  // namespace cskb
