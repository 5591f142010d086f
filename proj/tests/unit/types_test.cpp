#include <gtest/gtest.h>

#include "cskb/hash.hpp"
#include "cskb/types.hpp"

namespace cskb {
namespace {

TEST(Types, EnumRoundTrip) {
  for (Category c : kAllCategories) EXPECT_EQ(parse_category(to_string(c)), c);
  for (Measure m : kAllMeasures) EXPECT_EQ(parse_measure(to_string(m)), m);
  for (Polarity p : {Polarity::positive, Polarity::negative, Polarity::neutral})
    EXPECT_EQ(parse_polarity(to_string(p)), p);
  for (Source s : {Source::conceptnet, Source::genericskb, Source::generated_triples, Source::generated_stories})
    EXPECT_EQ(parse_source(to_string(s)), s);
  for (HumanLabel h : {HumanLabel::favoritism, HumanLabel::prejudice, HumanLabel::neutral})
    EXPECT_EQ(parse_human_label(to_string(h)), h);
}

TEST(Types, ParsersAreExact) {
  EXPECT_FALSE(parse_category("Origin"));
  EXPECT_FALSE(parse_measure(" sentiment"));
  EXPECT_FALSE(parse_polarity("other"));
  EXPECT_FALSE(parse_source(""));
}

TEST(Types, HumanMapping) {
  EXPECT_EQ(to_human(Polarity::positive), HumanLabel::favoritism);
  EXPECT_EQ(to_human(Polarity::negative), HumanLabel::prejudice);
  EXPECT_EQ(to_human(Polarity::neutral), HumanLabel::neutral);
}

TEST(StatementId, HexRoundTrip) {
  const StatementId id(0x00ab'cdef'0123'4567ULL);
  EXPECT_EQ(id.hex(), "00abcdef01234567");
  EXPECT_EQ(StatementId::from_hex(id.hex()), id);
  EXPECT_FALSE(StatementId::from_hex("abc"));
  EXPECT_FALSE(StatementId::from_hex("00ABCDEF0123456g"));
}

TEST(Fnv, KnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  Fnv1a64 h;
  h.update("foo").update("bar");
  EXPECT_EQ(h.digest(), fnv1a64("foobar"));
}

}  // namespace
}  // namespace cskb
