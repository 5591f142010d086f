#include "cskb/io.hpp"

#include <zlib.h>

#include <array>
#include <cstdio>
#include <system_error>

#include <json.hpp>

#include "cskb/error.hpp"

namespace cskb {

struct LineReader::Impl {
  gzFile gz = nullptr;
  bool compressed = false;
  std::array<char, 1 << 16> buf{};

  ~Impl() {
    if (gz != nullptr) gzclose(gz);
  }
};

namespace {
bool has_gzip_magic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  unsigned char magic[2] = {0, 0};
  in.read(reinterpret_cast<char*>(magic), 2);
  return in.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
}
}  // namespace

LineReader::LineReader(const std::filesystem::path& path) : path_(path), impl_(std::make_unique<Impl>()) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw IoError("cannot open " + path.string() + ": not a readable file");
  impl_->compressed = has_gzip_magic(path);
  // gzopen also reads uncompressed files transparently.
  impl_->gz = gzopen(path.c_str(), "rb");
  if (impl_->gz == nullptr) throw IoError("cannot open " + path.string());
  gzbuffer(impl_->gz, 1 << 17);
}

LineReader::~LineReader() = default;
LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::compressed() const noexcept { return impl_->compressed; }

bool LineReader::next(std::string& line) {
  line.clear();
  bool got_any = false;
  while (true) {
    char* r = gzgets(impl_->gz, impl_->buf.data(), static_cast<int>(impl_->buf.size()));
    if (r == nullptr) {
      int err = 0;
      const char* msg = gzerror(impl_->gz, &err);
      if (err != Z_OK && err != Z_BUF_ERROR)
        throw IoError("read error in " + path_.string() + ": " + (msg ? msg : "unknown"));
      if (!got_any) return false;
      had_newline_ = false;
      ++line_number_;
      return true;
    }
    got_any = true;
    std::string_view chunk(r);
    if (!chunk.empty() && chunk.back() == '\n') {
      chunk.remove_suffix(1);
      line.append(chunk);
      had_newline_ = true;
      ++line_number_;
      return true;
    }
    line.append(chunk);
  }
}

std::string_view LineReader::content(std::string_view line) noexcept {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

AtomicFile::AtomicFile(std::filesystem::path path) : path_(std::move(path)) {
  tmp_ = path_;
  tmp_ += ".tmp";
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot write " + tmp_.string());
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw IoError("write failed for " + tmp_.string());
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw IoError("cannot rename " + tmp_.string() + " to " + path_.string() + ": " + ec.message());
  committed_ = true;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  AtomicFile f(path);
  f.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
  f.commit();
}

void SkipReport::add(const std::filesystem::path& file, std::size_t line, std::string reason) {
  entries_.push_back(SkipEntry{file.string(), line, std::move(reason)});
}

void SkipReport::write_jsonl(std::ostream& os) const {
  for (const auto& e : entries_) {
    nlohmann::ordered_json j;
    j["file"] = e.file;
    j["line"] = e.line;
    j["reason"] = e.reason;
    os << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace cskb
