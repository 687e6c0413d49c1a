#include <doctest.h>

#include "stylo/error.hpp"
#include "stylo/rng.hpp"
#include "stylo/textproc.hpp"
#include "stylo/unicode.hpp"

using namespace stylo;

namespace {

std::vector<TokenKind> kinds(const std::vector<Token>& toks) {
  std::vector<TokenKind> out;
  for (const auto& t : toks) out.push_back(t.kind);
  return out;
}

std::vector<std::string> surfaces(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const auto& t : toks) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("sentence segmentation") {
  using V = std::vector<std::string>;
  CHECK(segment_sentences("He won. She lost.", Language::En) == V{"He won.", "She lost."});
  CHECK(segment_sentences("Dr. Silva venceu.", Language::Pt) == V{"Dr. Silva venceu."});
  CHECK(segment_sentences("Mr. Smith left. Then it rained!", Language::En) ==
        V{"Mr. Smith left.", "Then it rained!"});
  CHECK(segment_sentences("BREAKING NEWS", Language::En) == V{"BREAKING NEWS"});
  CHECK(segment_sentences("What?! Really... \"Yes.\" 3 more.", Language::En) ==
        V{"What?!", "Really...", "\"Yes.\"", "3 more."});
  CHECK(segment_sentences("it costs 3.5 dollars. fine", Language::En).size() == 1);
  CHECK_THROWS_AS(segment_sentences("   ", Language::En), InputError);
}

TEST_CASE("tokenization") {
  const auto t = tokenize("Hello, world!", Language::En);
  CHECK(surfaces(t) == std::vector<std::string>{"Hello", ",", "world", "!"});
  CHECK(kinds(t) == std::vector{TokenKind::Word, TokenKind::Punct, TokenKind::Word, TokenKind::Punct});

  const auto caps = tokenize("NASA wins BIG", Language::En);
  REQUIRE(caps.size() == 3);
  CHECK(caps[0].is_all_caps);
  CHECK_FALSE(caps[1].is_all_caps);
  CHECK(caps[2].is_all_caps);
  CHECK_FALSE(tokenize("I", Language::En)[0].is_all_caps);
  CHECK_FALSE(tokenize("É", Language::Pt)[0].is_all_caps);

  const auto num = tokenize("1,5 milhão", Language::Pt);
  REQUIRE(num.size() == 2);
  CHECK(num[0].kind == TokenKind::Number);
  CHECK(num[0].surface == "1,5");
  CHECK(num[1].kind == TokenKind::Word);
  CHECK(num[1].letter_count == 6);

  CHECK(surfaces(tokenize("well-known don't guarda-chuva", Language::En)) ==
        std::vector<std::string>{"well-known", "don't", "guarda-chuva"});
  CHECK(surfaces(tokenize("end- (x)", Language::En)) == std::vector<std::string>{"end", "-", "(", "x", ")"});
  CHECK(surfaces(tokenize("1,000.5, ok", Language::En)) == std::vector<std::string>{"1,000.5", ",", "ok"});
}

TEST_CASE("boilerplate stripping") {
  const auto s = strip_boilerplate("see https://x.com/a and @user or www.site.org now");
  CHECK(s.find("http") == std::string::npos);
  CHECK(s.find("@user") == std::string::npos);
  CHECK(s.find("www") == std::string::npos);
  CHECK(s.find("now") != std::string::npos);
}

TEST_CASE("syllable counts") {
  CHECK(count_syllables("cat", Language::En) == 1);
  CHECK(count_syllables("beautiful", Language::En) == 3);
  CHECK(count_syllables("make", Language::En) == 1);
  CHECK(count_syllables("table", Language::En) == 2);
  CHECK(count_syllables("the", Language::En) == 1);
  CHECK(count_syllables("impossibility", Language::En) == 6);
  CHECK(count_syllables("política", Language::Pt) == 4);
  CHECK(count_syllables("quero", Language::Pt) == 2);
  CHECK(count_syllables("guerra", Language::Pt) == 2);
  CHECK(count_syllables("saúde", Language::Pt) == 3);
  CHECK_THROWS_AS(count_syllables("123", Language::En), InputError);
}

TEST_CASE("hand-syllabified portuguese words") {
  const std::pair<const char*, int> words[] = {
      {"casa", 2}, {"notícia", 3},  // final unstressed "ia" read as one diphthong
      {"governo", 3}, {"eleição", 3}, {"presidente", 4},
      {"brasil", 2}, {"jornal", 2}, {"país", 2}, {"ministério", 4}, {"falsa", 2},
  };
  for (const auto& [w, n] : words) {
    CHECK_MESSAGE(count_syllables(w, Language::Pt) == n, w);
  }
}

TEST_CASE("analyze aggregates") {
  const auto t = analyze("He won. She lost.", Language::En);
  CHECK(t.word_count == 4);
  CHECK(t.sentence_count == 2);
  CHECK(analyze("Impossibility reigns.", Language::En).polysyllable_count >= 1);
  CHECK_THROWS_AS(analyze("", Language::En), InputError);
}

TEST_CASE("tokenizer and syllable properties") {
  const char* pool[] = {"the", "Cat", "NASA", "política", "well-known", "1,5", "3.14", ",", "!", "?", "“", "”",
                        "ação", "BIG", "don't", "(", ")", "—", "beautiful", "É", "saúde", ":"};
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::string sentence;
    const auto n = 1 + rng.below(12);
    for (std::uint64_t i = 0; i < n; ++i) sentence += std::string(i ? " " : "") + pool[rng.below(std::size(pool))];
    const auto lang = rng.below(2) ? Language::En : Language::Pt;
    const auto toks = tokenize(sentence, lang);
    std::string joined;
    for (const auto& t : toks) joined += (joined.empty() ? "" : " ") + t.surface;
    CHECK(kinds(tokenize(joined, lang)) == kinds(toks));
    for (const auto& t : toks) {
      if (t.kind != TokenKind::Word) continue;
      const int s = count_syllables(t.surface, lang);
      CHECK(s >= 1);
      CHECK(s <= t.letter_count);
      CHECK(s == count_syllables(unicode::to_upper(t.surface), lang));
    }
    const auto a = analyze(sentence + ".", lang);
    int words = 0, syl = 0, poly = 0;
    a.for_each_token([&](const Token& t) {
      if (t.kind != TokenKind::Word) return;
      ++words;
      syl += t.syllables;
      poly += t.syllables >= 3;
    });
    CHECK(a.word_count == words);
    CHECK(a.syllable_total == syl);
    CHECK(a.polysyllable_count == poly);
  }
}
