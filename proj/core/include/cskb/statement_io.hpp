#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cskb/ingest.hpp"
#include "cskb/io.hpp"

namespace cskb {

// Statements travel between pipeline stages as JSON Lines, one object per
// statement:
//   {"id","text","masked_text","target_id","category","source","line",
//    "origin":{"subject","relation","object","source_dataset"}?, "prompt_id"?}
std::string to_json_line(const Statement& s);
// Throws ParseError (line 0) on malformed records.
Statement statement_from_json(std::string_view line);

class StatementReader {
 public:
  explicit StatementReader(const std::filesystem::path& path);
  // Throws ParseError with the JSONL line number on malformed records.
  std::optional<Statement> next();
  std::size_t line_number() const noexcept { return reader_.line_number(); }

 private:
  LineReader reader_;
  std::string buf_;
};

std::vector<Statement> read_statements(const std::filesystem::path& path);
void write_statements(std::ostream& os, const std::vector<Statement>& statements);

}  // namespace cskb
