#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cskb {

// Base of every error raised by the toolkit. The CLI maps IoError and
// TransportError to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input content. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input whose values violate a domain rule.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Two inputs claim the same key (surface form, label row, keyword).
class ConflictError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Invalid option or resource combination.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Remote labeler failure. request_index is the 0-based chunk that failed.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, std::size_t request_index,
                 std::size_t first_text, std::size_t last_text);
  std::size_t request_index() const noexcept { return request_index_; }
  std::size_t first_text() const noexcept { return first_text_; }
  std::size_t last_text() const noexcept { return last_text_; }

 private:
  std::size_t request_index_;
  std::size_t first_text_;
  std::size_t last_text_;
};

}  // namespace cskb
