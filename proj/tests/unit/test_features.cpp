#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stylo/error.hpp"
#include "stylo/features.hpp"
#include "stylo/rng.hpp"
#include "synth.hpp"

using namespace stylo;

namespace {

Lexicon demo_lexicon() {
  std::istringstream in("%\n1\tpronoun\n2\tarticle\n3\tposemo\n%\nhe\t1\nshe\t1\nthe\t2\ngood\t3\nwin*\t3\n");
  return Lexicon::parse(in);
}

Article article(std::string id, ClassLabel label, std::string title, std::string body, Language lang = Language::En) {
  return {std::move(id), "src", lang, label, std::move(title), std::move(body)};
}

double value(const FeatureVector& v, const std::string& name) {
  const auto& reg = feature_registry();
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (reg[i].name() == name) return v.values[i];
  FAIL("no feature " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("registry holds 51 abbreviations in both scopes") {
  const auto& reg = feature_registry();
  CHECK(reg.size() == 102);
  CHECK(feature_abbreviations().size() == 51);
  std::set<std::string> names;
  for (const auto& f : reg) names.insert(f.name());
  CHECK(names.size() == 102);
  for (std::size_t i = 0; i < 51; ++i) {
    CHECK(reg[i].scope == Scope::TTL);
    CHECK(reg[i + 51].scope == Scope::TXT);
    CHECK(reg[i].abbr == reg[i + 51].abbr);
    CHECK(registry_index(reg[i + 51]) == i + 51);
  }
  CHECK(find_feature("TXT_FK-RE")->category == FeatureCategory::Complexity);
  CHECK(find_feature("TTL_Colon")->category == FeatureCategory::Stylistic);
  CHECK(find_feature("TXT_Funct")->category == FeatureCategory::Linguistic);
  CHECK(find_feature("TTL_Anx")->category == FeatureCategory::Psychological);
  CHECK_FALSE(find_feature("TXT_Nope").has_value());
  CHECK_FALSE(find_feature("FK-RE").has_value());
}

TEST_CASE("readability from counts") {
  const auto r = readability_from_counts(100, 5, 10, 150);
  CHECK(r.gunning_fog == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(r.flesch_reading_ease == doctest::Approx(59.635).epsilon(1e-12));
  CHECK(r.flesch_kincaid_grade == doctest::Approx(9.91).epsilon(1e-12));
  CHECK(std::abs(r.smog - 11.2082) < 1e-4);
  CHECK(readability_from_counts(3, 1, 0, 3).flesch_reading_ease == doctest::Approx(119.19));
  const auto d = readability_from_counts(200, 10, 20, 300);
  CHECK(d.gunning_fog == doctest::Approx(r.gunning_fog));
  CHECK(d.smog == doctest::Approx(r.smog));
  CHECK(d.flesch_reading_ease == doctest::Approx(r.flesch_reading_ease));
  CHECK(d.flesch_kincaid_grade == doctest::Approx(r.flesch_kincaid_grade));
  CHECK_THROWS_AS(readability_from_counts(0, 1, 0, 0), InputError);
  CHECK_THROWS_AS(readability_from_counts(1, 0, 0, 1), InputError);
}

TEST_CASE("readability fixture texts") {
  std::ifstream in(std::string(STYLO_FIXTURE_DIR) + "/readability.json");
  const auto j = nlohmann::json::parse(in);
  for (const auto& t : j["texts"]) {
    const std::string text = t["text"];
    CAPTURE(text);
    const auto tok = analyze(text, *parse_language(t["language"].get<std::string>()));
    CHECK(tok.word_count == t["W"].get<int>());
    CHECK(tok.sentence_count == t["S"].get<int>());
    CHECK(tok.syllable_total == t["Y"].get<int>());
    CHECK(tok.polysyllable_count == t["P"].get<int>());
    const auto r = readability_indices(tok);
    CHECK(std::abs(r.gunning_fog - t["GI"].get<double>()) <= 1e-4);
    CHECK(std::abs(r.smog - t["SMOG"].get<double>()) <= 1e-4);
    CHECK(std::abs(r.flesch_reading_ease - t["FK-RE"].get<double>()) <= 1e-4);
    CHECK(std::abs(r.flesch_kincaid_grade - t["FK-GL"].get<double>()) <= 1e-4);
  }
}

TEST_CASE("lexical stats") {
  const auto a = lexical_stats(analyze("the cat the dog", Language::En));
  CHECK(a.ttr == doctest::Approx(0.75));
  CHECK(a.word_count == 4);
  CHECK(a.avg_word_length == doctest::Approx(3.0));  // 12 letters over 4 words
  CHECK(a.six_letter_pct == 0.0);
  CHECK(lexical_stats(analyze("one two three four", Language::En)).ttr == 1.0);
  const auto b = lexical_stats(analyze("amazing amazing", Language::En));
  CHECK(b.ttr == doctest::Approx(0.5));
  CHECK(b.six_letter_pct == doctest::Approx(100.0));
  CHECK(lexical_stats(analyze("The THE the", Language::En)).ttr == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("stylistic profile") {
  auto p = stylistic_profile(analyze("Hello, world.", Language::En));
  CHECK(p["Comma"] == doctest::Approx(50.0));
  CHECK(p["Period"] == doctest::Approx(50.0));
  CHECK(p["AllPunc"] == doctest::Approx(100.0));
  auto c = stylistic_profile(analyze("NASA wins BIG today", Language::En));
  CHECK(c["AllCaps"] == doctest::Approx(50.0));
  CHECK(c["AllPunc"] == 0.0);
  CHECK(stylistic_profile(analyze("Why? Why? Why?", Language::En))["QMark"] == doctest::Approx(100.0));
  auto q = stylistic_profile(analyze("“Sim” — disse ele (hoje); ok: #", Language::Pt));
  CHECK(q["Quote"] == doctest::Approx(100.0 * 2 / 5));
  CHECK(q["Dash"] == doctest::Approx(100.0 / 5));
  CHECK(q["Parenth"] == doctest::Approx(100.0 * 2 / 5));
  CHECK(q["SemiC"] == doctest::Approx(100.0 / 5));
  CHECK(q["Colon"] == doctest::Approx(100.0 / 5));
  CHECK(q["OtherP"] == doctest::Approx(100.0 / 5));
}

TEST_CASE("article extraction keeps scopes separate") {
  const Lexicon lex = demo_lexicon();
  const auto v = extract_article(article("a", ClassLabel::R, "He won!", "He won. She lost."), lex);
  REQUIRE(v.values.size() == 102);
  CHECK(value(v, "TTL_Exclam") == doctest::Approx(50.0));
  CHECK(value(v, "TXT_Exclam") == 0.0);
  CHECK(value(v, "TTL_Pronoun") == doctest::Approx(50.0));
  CHECK(value(v, "TXT_PPronoun") == 0.0);  // the lexicon lacks that category
  CHECK(value(v, "TTL_Posemo") == 0.0);  // "won" does not match win*
  CHECK(value(extract_article(article("g", ClassLabel::S, "Winning is good", "Body."), lex), "TTL_Posemo") ==
        doctest::Approx(100.0 * 2 / 3));
  CHECK(value(v, "TXT_WC") == 4.0);
  CHECK(value(v, "TXT_Number") == 0.0);
  const auto w = extract_article(article("a", ClassLabel::R, "He won!", "He won. She lost."), lex);
  CHECK(v == w);
  CHECK_THROWS_AS(extract_article(article("b", ClassLabel::R, "!!!", "Body text."), lex), InputError);
  CHECK_THROWS_AS(extract_article(article("b", ClassLabel::R, "Title", "123 !!"), lex), InputError);
  try {
    extract_article(article("bad1", ClassLabel::R, "!!!", "Body."), lex);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("bad1") != std::string::npos);
  }
  const auto n = extract_article(article("n", ClassLabel::U, "Title here", "Paid 3 dollars and 4,5 more."), lex);
  CHECK(value(n, "TXT_Number") == doctest::Approx(100.0 * 2 / 4));  // numbers are not words
}

TEST_CASE("missing lexicon categories are reported") {
  const auto missing = missing_lexicon_categories(demo_lexicon());
  CHECK(missing.size() == 26);
  CHECK(std::find(missing.begin(), missing.end(), "pronoun") == missing.end());
}

TEST_CASE("corpus extraction order, threading and language checks") {
  const Lexicon lex = demo_lexicon();
  std::vector<Article> arts;
  for (int i = 0; i < 40; ++i)
    arts.push_back(article("a" + std::to_string(i), i % 2 ? ClassLabel::R : ClassLabel::U, "Title number " +
                           std::to_string(i), std::string(static_cast<std::size_t>(i % 5 + 1), 'x') + " is good. The end!"));
  const Corpus c("c", arts);
  const auto seq = extract_corpus(c, lex, 1);
  const auto par = extract_corpus(c, lex, 8);
  REQUIRE(seq.rows.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) CHECK(seq.rows[i].article_id == arts[i].id);
  std::ostringstream a, b;
  write_feature_csv(a, seq);
  write_feature_csv(b, par);
  CHECK(a.str() == b.str());

  const Corpus three("three", {arts[0], arts[1], arts[2]});
  CHECK(extract_corpus(three, lex).rows.size() == 3);

  auto mixed = arts;
  mixed[3].language = Language::Pt;
  CHECK_THROWS_AS(extract_corpus(Corpus("m", mixed), lex), InputError);
  std::istringstream pt_in("# language: pt\n%\n1\tpronoun\n%\nele\t1\n");
  CHECK_THROWS_AS(extract_corpus(c, Lexicon::parse(pt_in)), InputError);
}

TEST_CASE("feature CSV round-trip and validation") {
  const auto m = synth::planted_matrix(5, 4, {0, 1}, 1.0, 3);
  std::ostringstream out;
  write_feature_csv(out, m);
  const std::string text = out.str();
  CHECK(text.substr(0, 29) == "article_id,label,TTL_GI,TTL_S");
  std::istringstream in(text);
  const auto back = read_feature_csv(in, "x");
  REQUIRE(back.rows.size() == 9);
  CHECK(back.feature_ids == m.feature_ids);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 102; ++j) CHECK(back.rows[i].values[j] == doctest::Approx(m.rows[i].values[j]).epsilon(1e-5));
  std::ostringstream again;
  write_feature_csv(again, back);
  CHECK(again.str() == text);

  auto bad = [](const std::string& s) {
    std::istringstream is(s);
    return read_feature_csv(is, "bad");
  };
  CHECK_THROWS_AS(bad("article_id,label,TXT_Nope\na,R,1\n"), InputError);
  CHECK_THROWS_AS(bad("article_id,label,TXT_WC,TXT_WC\na,R,1,2\n"), InputError);
  CHECK_THROWS_AS(bad("article_id,label,TXT_WC\na,R,nan\n"), InputError);
  CHECK_THROWS_AS(bad("article_id,label,TXT_WC\na,Q,1\n"), InputError);
  CHECK_THROWS_AS(bad("article_id,label,TXT_WC\na,R\n"), InputError);
  CHECK_THROWS_AS(bad(""), InputError);
  CHECK(bad("article_id,label,TXT_WC\n\"a,1\",R,3\n").rows[0].article_id == "a,1");
}

TEST_CASE("matrix helpers") {
  const auto m = synth::planted_matrix(10, 6, {}, 0.0, 1);
  const auto sel = m.select_features(std::vector<FeatureId>{*find_feature("TXT_WC"), *find_feature("TTL_GI")});
  CHECK(sel.feature_ids.size() == 2);
  CHECK(sel.rows[0].values[0] == m.rows[0].values[registry_index(*find_feature("TXT_WC"))]);
  CHECK(m.count(ClassLabel::R) == 10);
  CHECK(m.column(0, ClassLabel::U).size() == 6);
  const auto split = split_matrix(m, 0.25, 4);
  CHECK(split.test.count(ClassLabel::R) + split.train.count(ClassLabel::R) == 10);
  const auto up = upsample_matrix(split.train, {ClassLabel::R, ClassLabel::U}, 4);
  CHECK(up.count(ClassLabel::R) == up.count(ClassLabel::U));
  CHECK(concat(m, m, "mm").rows.size() == 32);
  CHECK_THROWS_AS(concat(m, sel, "x"), InputError);
  CHECK(m.restrict_to({ClassLabel::R, ClassLabel::S}).rows.size() == 10);
}

TEST_CASE("feature invariants on random texts") {
  const Lexicon lex = demo_lexicon();
  const char* words[] = {"the", "cat", "he", "good", "winning", "Extraordinary", "NASA", "she", "dog", "ran",
                         "information", "a", "7"};
  const char* marks[] = {",", ";", ":", "-", "(", ")", "\"", "?!", "!", "."};
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    std::string text;
    const auto n_sent = 1 + rng.below(4);
    for (std::uint64_t s = 0; s < n_sent; ++s) {
      std::string sent = "Start";
      const auto n = 1 + rng.below(10);
      for (std::uint64_t i = 0; i < n; ++i) {
        sent += std::string(" ") + words[rng.below(std::size(words))];
        if (rng.below(4) == 0) sent += marks[rng.below(std::size(marks))];
      }
      text += sent + ". ";
    }
    const auto tok = analyze(text, Language::En);
    const auto p = stylistic_profile(tok);
    double sum = 0.0;
    for (const char* k : {"Comma", "Period", "Colon", "SemiC", "QMark", "Exclam", "Dash", "Quote", "Parenth", "OtherP"})
      sum += p.at(k);
    CHECK(p.at("AllPunc") == doctest::Approx(sum).epsilon(1e-12));
    const auto ls = lexical_stats(tok);
    CHECK(ls.ttr > 0.0);
    CHECK(ls.ttr <= 1.0);
    CHECK(ls.word_count > 0);
    CHECK(ls.words_per_sentence > 0);
    CHECK(ls.avg_word_length > 0);
    for (const auto& [k, v] : category_frequencies(lex, tok)) {
      CHECK(v >= 0.0);
      CHECK(v <= 100.0);
    }

    // Doubling the text keeps ratio features and doubles WC.
    const auto tok2 = analyze(text + " " + text, Language::En);
    const auto r1 = readability_indices(tok), r2 = readability_indices(tok2);
    CHECK(r2.gunning_fog == doctest::Approx(r1.gunning_fog).epsilon(1e-9));
    CHECK(r2.flesch_reading_ease == doctest::Approx(r1.flesch_reading_ease).epsilon(1e-9));
    CHECK(r2.flesch_kincaid_grade == doctest::Approx(r1.flesch_kincaid_grade).epsilon(1e-9));
    const auto ls2 = lexical_stats(tok2);
    CHECK(ls2.word_count == 2 * ls.word_count);
    CHECK(ls2.words_per_sentence == doctest::Approx(ls.words_per_sentence).epsilon(1e-9));
    CHECK(ls2.six_letter_pct == doctest::Approx(ls.six_letter_pct).epsilon(1e-9));
    const auto p2 = stylistic_profile(tok2);
    for (const auto& [k, v] : p) CHECK(p2.at(k) == doctest::Approx(v).epsilon(1e-9));

    // One more polysyllabic word in the last sentence raises P without lowering SMOG or GI.
    const auto tok3 = analyze(text + "Start information.", Language::En);
    const auto tok4 = analyze(text + "Start information information.", Language::En);
    CHECK(tok4.polysyllable_count == tok3.polysyllable_count + 1);
    CHECK(readability_indices(tok4).smog >= readability_indices(tok3).smog);
    CHECK(readability_indices(tok4).gunning_fog >= readability_indices(tok3).gunning_fog);
  }
}
