#include <doctest.h>

#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

using namespace stylo;

TEST_CASE("utf-8 validation") {
  CHECK(unicode::is_valid_utf8("política"));
  CHECK_FALSE(unicode::is_valid_utf8("\xC3"));
  CHECK_FALSE(unicode::is_valid_utf8("\xFF\xFE"));
  CHECK_THROWS_AS(unicode::decode("\xC3("), InputError);
  CHECK(unicode::encode(unicode::decode("ação")) == "ação");
}

TEST_CASE("normalization and folding") {
  const std::string composed = "\xC3\xA9";   // é
  const std::string decomposed = "e\xCC\x81";  // e + combining acute
  CHECK(unicode::nfc(decomposed) == composed);
  CHECK(unicode::nfd(composed) == decomposed);
  CHECK(unicode::fold_case("ÉCOLE") == "école");
  CHECK(unicode::fold_case(decomposed) == composed);
  CHECK(unicode::fold_case("Straße") == "strasse");
  CHECK(unicode::to_upper("ação") == "AÇÃO");
}

TEST_CASE("character classes") {
  CHECK(unicode::is_letter(U'ç'));
  CHECK_FALSE(unicode::is_letter(U'1'));
  CHECK(unicode::is_digit(U'7'));
  CHECK(unicode::is_space(U' '));
  CHECK(unicode::is_upper(U'Ã'));
  CHECK_FALSE(unicode::is_upper(U'ã'));
  CHECK(unicode::is_mark(U'́'));
}
