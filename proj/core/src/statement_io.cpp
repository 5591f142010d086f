#include "cskb/statement_io.hpp"

#include <json.hpp>

#include "cskb/error.hpp"
#include "cskb/text.hpp"

namespace cskb {

using ordered_json = nlohmann::ordered_json;

std::string to_json_line(const Statement& s) {
  ordered_json j;
  j["id"] = s.id.hex();
  j["text"] = s.text;
  j["masked_text"] = s.masked_text;
  j["target_id"] = s.target_id;
  j["category"] = to_string(s.category);
  j["source"] = to_string(s.source);
  j["line"] = s.line;
  if (s.origin) {
    j["origin"] = {{"subject", s.origin->subject},
                   {"relation", s.origin->relation},
                   {"object", s.origin->object},
                   {"source_dataset", s.origin->source_dataset}};
  }
  if (s.prompt_id) j["prompt_id"] = *s.prompt_id;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

namespace {
std::string required_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw ParseError(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}
}  // namespace

Statement statement_from_json(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (!j.is_object()) throw ParseError("statement record is not a JSON object");
  Statement s;
  const std::string id = required_string(j, "id");
  auto parsed_id = StatementId::from_hex(id);
  if (!parsed_id) throw ParseError("invalid statement id '" + id + "'");
  s.id = *parsed_id;
  s.text = required_string(j, "text");
  s.masked_text = required_string(j, "masked_text");
  s.target_id = required_string(j, "target_id");
  const std::string category = required_string(j, "category");
  auto cat = parse_category(category);
  if (!cat) throw ParseError("unknown category '" + category + "'");
  s.category = *cat;
  const std::string source = required_string(j, "source");
  auto src = parse_source(source);
  if (!src) throw ParseError("unknown source '" + source + "'");
  s.source = *src;
  if (auto it = j.find("line"); it != j.end() && it->is_number_unsigned()) s.line = it->get<std::size_t>();
  if (auto it = j.find("origin"); it != j.end() && it->is_object()) {
    s.origin = Triple{required_string(*it, "subject"), required_string(*it, "relation"),
                      required_string(*it, "object"), it->value("source_dataset", std::string{})};
  }
  if (auto it = j.find("prompt_id"); it != j.end() && it->is_string()) s.prompt_id = it->get<std::string>();
  return s;
}

StatementReader::StatementReader(const std::filesystem::path& path) : reader_(path) {}

std::optional<Statement> StatementReader::next() {
  while (reader_.next(buf_)) {
    const std::string_view line = LineReader::content(buf_);
    if (trim(line).empty()) continue;
    try {
      return statement_from_json(line);
    } catch (const ParseError& e) {
      throw ParseError(reader_.path().string() + ": " + e.what(), reader_.line_number());
    }
  }
  return std::nullopt;
}

std::vector<Statement> read_statements(const std::filesystem::path& path) {
  StatementReader reader(path);
  std::vector<Statement> out;
  while (auto s = reader.next()) out.push_back(std::move(*s));
  return out;
}

void write_statements(std::ostream& os, const std::vector<Statement>& statements) {
  for (const auto& s : statements) os << to_json_line(s) << '\n';
}

}  // namespace cskb
