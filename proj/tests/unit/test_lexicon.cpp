#include <doctest.h>

#include <sstream>

#include "stylo/error.hpp"
#include "stylo/lexicon.hpp"
#include "stylo/rng.hpp"
#include "stylo/unicode.hpp"

using namespace stylo;

namespace {

Lexicon lex(const std::string& text) {
  std::istringstream in(text);
  return Lexicon::parse(in, "test.dic");
}

const char* kSmall = "%\n1\tpronoun\n2\tarticle\n%\nhe\t1\nthe\t2\n";

// Linear scan over all patterns: exact first, else the longest matching prefix.
std::set<std::string> naive_match(const Lexicon& l, const std::string& word) {
  const std::string w = unicode::fold_case(word);
  const Lexicon::Pattern* best = nullptr;
  for (const auto& p : l.patterns()) {
    if (!p.prefix && p.text == w) {
      best = &p;
      break;
    }
  }
  if (!best)
    for (const auto& p : l.patterns())
      if (p.prefix && w.starts_with(p.text) && (!best || p.text.size() > best->text.size())) best = &p;
  std::set<std::string> out;
  if (best)
    for (auto c : best->categories) out.insert(l.categories()[c]);
  return out;
}

}  // namespace

TEST_CASE("parse a two-category lexicon") {
  const Lexicon l = lex(kSmall);
  CHECK(l.categories().size() == 2);
  CHECK(l.patterns().size() == 2);
  CHECK(l.match_word("The") == std::set<std::string>{"article"});
  CHECK(l.match_word("xyzzy").empty());
  CHECK_FALSE(l.language().has_value());
}

TEST_CASE("wildcards and exact precedence") {
  const Lexicon l = lex("# language: en\n%\n1\tcertain\n2\ttentat\n%\ncertain*\t1\ncertainly\t1,2\n");
  CHECK(l.language() == Language::En);
  CHECK(l.match_word("certainly") == std::set<std::string>{"certain", "tentat"});
  CHECK(l.match_word("certainty") == std::set<std::string>{"certain"});
  CHECK(l.match_word("certain") == std::set<std::string>{"certain"});
  CHECK(l.match_word("uncertain").empty());
  const Lexicon w = lex("%\n1\ta\n2\tb\n%\nab*\t1\nabc*\t2\n");
  CHECK(w.match_word("abcd") == std::set<std::string>{"b"});
  CHECK(w.match_word("abd") == std::set<std::string>{"a"});
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(lex("%\n1\tpronoun\n%\nhe\t2\n"), InputError);
  CHECK_THROWS_AS(lex("%\n1\tpronoun\n%\nhe\t1\nhe\t1\n"), InputError);
  CHECK_THROWS_AS(lex("%\n1\tpronoun\n1\tother\n%\nhe\t1\n"), InputError);
  CHECK_THROWS_AS(lex("%\n%\nhe\t1\n"), InputError);
  CHECK_THROWS_AS(lex("he\t1\n"), InputError);
  CHECK_THROWS_AS(lex("%\n1\tpronoun\n%\nh*e\t1\n"), InputError);
  CHECK_THROWS_AS(lex("%\n1\tpronoun\n%\nh\xC3\t1\n"), InputError);
  CHECK_THROWS_AS(load_lexicon("/nonexistent.dic"), InputError);
}

TEST_CASE("category frequencies") {
  const Lexicon l = lex(kSmall);
  auto f = category_frequencies(l, analyze("he saw the dog", Language::En));
  CHECK(f["pronoun"] == doctest::Approx(25.0));
  CHECK(f["article"] == doctest::Approx(25.0));
  auto none = category_frequencies(l, analyze("cats chase mice", Language::En));
  CHECK(none["pronoun"] == 0.0);
  CHECK(none["article"] == 0.0);
  CHECK(category_frequencies(l, analyze("he he he he", Language::En))["pronoun"] == doctest::Approx(100.0));
  CHECK_THROWS_AS(category_frequencies(l, analyze("!!!", Language::En)), InputError);
}

TEST_CASE("matching is invariant under case and normalization") {
  const Lexicon l = lex("%\n1\tposemo\n%\nação\t1\nótim*\t1\n");
  for (const std::string w : {"ação", "AÇÃO", "Ação"}) {
    CHECK(l.match_word(w) == std::set<std::string>{"posemo"});
    CHECK(l.match_word(unicode::nfd(w)) == std::set<std::string>{"posemo"});
  }
  CHECK(l.match_word(unicode::nfd("ÓTIMO")) == std::set<std::string>{"posemo"});
}

TEST_CASE("prefix index equals a linear scan") {
  const std::string alphabet[] = {"a", "b", "c", "á", "ç"};
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = "%\n1\tx\n2\ty\n3\tz\n%\n";
    std::set<std::string> seen;
    const auto n = 1 + rng.below(12);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string p;
      const auto len = 1 + rng.below(4);
      for (std::uint64_t k = 0; k < len; ++k) p += alphabet[rng.below(5)];
      if (rng.below(2)) p += '*';
      if (!seen.insert(p).second) continue;
      text += p + "\t" + std::to_string(1 + rng.below(3)) + "\n";
    }
    const Lexicon l = lex(text);
    for (int q = 0; q < 30; ++q) {
      std::string w;
      const auto len = 1 + rng.below(6);
      for (std::uint64_t k = 0; k < len; ++k) w += alphabet[rng.below(5)];
      CAPTURE(text);
      CAPTURE(w);
      CHECK(l.match_word(w) == naive_match(l, w));
    }
  }
}

TEST_CASE("frequencies stay within [0, 100] and count each word once per category") {
  const Lexicon l = lex("%\n1\ta\n2\tb\n%\nx*\t1,2\nxy\t1\nz\t2\n");
  Rng rng(5);
  const char* words[] = {"x", "xy", "xyz", "z", "q", "zz"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const auto n = 1 + rng.below(10);
    int a = 0, b = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const std::string w = words[rng.below(6)];
      text += w + " ";
      a += w == "x" || w == "xy" || w == "xyz";
      b += w == "x" || w == "xyz" || w == "z";
    }
    auto f = category_frequencies(l, analyze(text, Language::En));
    CHECK(f["a"] == doctest::Approx(100.0 * a / static_cast<double>(n)));
    CHECK(f["b"] == doctest::Approx(100.0 * b / static_cast<double>(n)));
    for (const auto& [k, v] : f) {
      CHECK(v >= 0.0);
      CHECK(v <= 100.0);
    }
  }
}

TEST_CASE("demo lexicons load and cover every registry category") {
  for (const char* name : {"en_demo.dic", "pt_demo.dic"}) {
    const Lexicon l = load_lexicon(std::string(STYLO_SOURCE_DIR) + "/data/lexicons/" + name);
    CAPTURE(name);
    CHECK(l.categories().size() == 29);
  }
}
