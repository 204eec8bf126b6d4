#include <doctest.h>

#include <stdexcept>

#include "atp/segments.hpp"

using namespace atp;

TEST_CASE("utf-8 decoding keeps one code point per segment") {
  const auto s = from_utf8("ʧæŋ");
  CHECK(s.size() == 3);
  CHECK(s[0] == U'ʧ');
  CHECK(to_utf8(s) == "ʧæŋ");
  CHECK(from_utf8("").empty());
  CHECK(to_utf8(from_utf8("a\xF0\x9F\x98\x80z")) == "a\xF0\x9F\x98\x80z");
}

TEST_CASE("malformed utf-8 is rejected") {
  CHECK_THROWS_AS(from_utf8("\xC3"), std::invalid_argument);
  CHECK_THROWS_AS(from_utf8("\x80"), std::invalid_argument);
  CHECK_THROWS_AS(from_utf8("\xE2\x82"), std::invalid_argument);
  CHECK_THROWS_AS(from_utf8("\xC0\xAF"), std::invalid_argument);
}

TEST_CASE("ends_with") {
  CHECK(ends_with(U"walk", U"lk"));
  CHECK(ends_with(U"walk", U""));
  CHECK_FALSE(ends_with(U"k", U"lk"));
}
