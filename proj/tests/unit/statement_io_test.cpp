#include <gtest/gtest.h>

#include <sstream>

#include "cskb/error.hpp"
#include "cskb/statement_io.hpp"
#include "test_support.hpp"

namespace cskb {
namespace {

Statement sample() {
  Statement s;
  s.text = "lawyer capable of \"argue\"\tloudly";
  s.masked_text = "XYZ capable of \"argue\"\tloudly";
  s.target_id = "lawyer";
  s.category = Category::profession;
  s.source = Source::generated_triples;
  s.id = make_statement_id(s.source, s.text, s.target_id);
  s.line = 7;
  s.origin = Triple{"lawyer", "CapableOf", "argue", "generated"};
  s.prompt_id = "t3:lawyer";
  return s;
}

TEST(StatementIo, RoundTrip) {
  const Statement s = sample();
  const Statement r = statement_from_json(to_json_line(s));
  EXPECT_EQ(r.id, s.id);
  EXPECT_EQ(r.text, s.text);
  EXPECT_EQ(r.masked_text, s.masked_text);
  EXPECT_EQ(r.target_id, s.target_id);
  EXPECT_EQ(r.category, s.category);
  EXPECT_EQ(r.source, s.source);
  EXPECT_EQ(r.line, s.line);
  ASSERT_TRUE(r.origin);
  EXPECT_EQ(r.origin->relation, "CapableOf");
  EXPECT_EQ(r.prompt_id, s.prompt_id);
  EXPECT_EQ(to_json_line(r), to_json_line(s));
}

TEST(StatementIo, OneLinePerRecord) {
  EXPECT_EQ(to_json_line(sample()).find('\n'), std::string::npos);
}

TEST(StatementIo, MalformedRecords) {
  EXPECT_THROW(statement_from_json("not json"), ParseError);
  EXPECT_THROW(statement_from_json("{\"id\":\"zz\"}"), ParseError);
  auto line = to_json_line(sample());
  const auto pos = line.find("profession");
  line.replace(pos, 10, "astronaut!");
  EXPECT_THROW(statement_from_json(line), ParseError);
}

TEST(StatementIo, ReaderReportsLineNumber) {
  test::TempDir dir;
  const auto p = dir.write("s.jsonl", to_json_line(sample()) + "\n\n{broken\n");
  StatementReader reader(p);
  EXPECT_TRUE(reader.next());
  try {
    reader.next();
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

}  // namespace
}  // namespace cskb
