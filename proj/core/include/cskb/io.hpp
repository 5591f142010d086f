#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cskb {

// Sequential line reader over a plain or gzip-compressed file. Compression is
// detected from the magic bytes, not the extension. Memory use is bounded by
// the longest line.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Reads the next line without its terminating '\n'. A trailing '\r' is
  // kept; use `content()` for parsing. Returns false at end of input.
  bool next(std::string& line);

  // 1-based number of the line most recently returned by next().
  std::size_t line_number() const noexcept { return line_number_; }
  // Whether the most recent line was terminated by '\n' in the file.
  bool had_newline() const noexcept { return had_newline_; }
  const std::filesystem::path& path() const noexcept { return path_; }
  bool compressed() const noexcept;

  // `line` minus one trailing '\r'.
  static std::string_view content(std::string_view line) noexcept;

 private:
  struct Impl;
  std::filesystem::path path_;
  std::unique_ptr<Impl> impl_;
  std::size_t line_number_ = 0;
  bool had_newline_ = false;
};

// Output file that only becomes visible at `path` after commit(): bytes go to
// a sibling temporary that is renamed into place. An uncommitted file is
// removed on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

// Writes `content` to `path` atomically.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct SkipEntry {
  std::string file;
  std::size_t line = 0;
  std::string reason;
};

// Machine-readable record of input lines that were skipped rather than
// aborting the run. Serialized as JSON lines {file, line, reason}.
class SkipReport {
 public:
  void add(const std::filesystem::path& file, std::size_t line, std::string reason);
  const std::vector<SkipEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  void write_jsonl(std::ostream& os) const;

 private:
  std::vector<SkipEntry> entries_;
};

// Reads the lines of a small text file, with '\r' stripped. Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);

}  // namespace cskb
