#include "stylo/features.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_set>

#include "stylo/error.hpp"
#include "stylo/sampling.hpp"
#include "stylo/unicode.hpp"

namespace stylo {
namespace {

using FC = FeatureCategory;

const std::vector<std::pair<std::string_view, FC>> kAbbreviations{
    {"GI", FC::Complexity},        {"SMOG", FC::Complexity},      {"FK-RE", FC::Complexity},
    {"FK-GL", FC::Complexity},     {"TTR", FC::Complexity},       {"WC", FC::Complexity},
    {"WPS", FC::Complexity},       {"AVG_WLEN", FC::Complexity},  {"SixLtr", FC::Complexity},
    {"Comma", FC::Stylistic},      {"Period", FC::Stylistic},     {"Colon", FC::Stylistic},
    {"SemiC", FC::Stylistic},      {"QMark", FC::Stylistic},      {"Exclam", FC::Stylistic},
    {"Dash", FC::Stylistic},       {"Quote", FC::Stylistic},      {"Parenth", FC::Stylistic},
    {"OtherP", FC::Stylistic},     {"AllPunc", FC::Stylistic},    {"AllCaps", FC::Stylistic},
    {"Funct", FC::Linguistic},     {"Pronoun", FC::Linguistic},   {"PPronoun", FC::Linguistic},
    {"IPron", FC::Linguistic},     {"You", FC::Linguistic},       {"SheHe", FC::Linguistic},
    {"We", FC::Linguistic},        {"Negate", FC::Linguistic},    {"Compare", FC::Linguistic},
    {"Preps", FC::Linguistic},     {"Article", FC::Linguistic},   {"Verb", FC::Linguistic},
    {"AuxVerb", FC::Linguistic},   {"Quant", FC::Linguistic},     {"Number", FC::Linguistic},
    {"Adjective", FC::Linguistic}, {"Conj", FC::Linguistic},      {"Insight", FC::Psychological},
    {"Percept", FC::Psychological}, {"Posemo", FC::Psychological}, {"Negemo", FC::Psychological},
    {"Tentat", FC::Psychological}, {"Certain", FC::Psychological}, {"Sad", FC::Psychological},
    {"Achieve", FC::Psychological}, {"Anger", FC::Psychological}, {"Anx", FC::Psychological},
    {"Cause", FC::Psychological},  {"Discrep", FC::Psychological}, {"Feel", FC::Psychological},
};

// Lexicon category names accepted for each dictionary-backed feature (first is canonical).
const std::vector<std::pair<std::string_view, std::vector<std::string_view>>> kLexiconCategories{
    {"Funct", {"funct", "function"}},
    {"Pronoun", {"pronoun"}},
    {"PPronoun", {"ppronoun", "ppron"}},
    {"IPron", {"ipron"}},
    {"You", {"you"}},
    {"SheHe", {"shehe"}},
    {"We", {"we"}},
    {"Negate", {"negate"}},
    {"Compare", {"compare"}},
    {"Preps", {"preps", "prep"}},
    {"Article", {"article"}},
    {"Verb", {"verb"}},
    {"AuxVerb", {"auxverb"}},
    {"Quant", {"quant"}},
    {"Adjective", {"adjective", "adj"}},
    {"Conj", {"conj"}},
    {"Insight", {"insight"}},
    {"Percept", {"percept"}},
    {"Posemo", {"posemo"}},
    {"Negemo", {"negemo"}},
    {"Tentat", {"tentat"}},
    {"Certain", {"certain"}},
    {"Sad", {"sad"}},
    {"Achieve", {"achieve"}},
    {"Anger", {"anger"}},
    {"Anx", {"anx"}},
    {"Cause", {"cause"}},
    {"Discrep", {"discrep"}},
    {"Feel", {"feel"}},
};

enum class PunctClass { Comma, Period, Colon, SemiC, QMark, Exclam, Dash, Quote, Parenth, Other };

PunctClass classify_punct(std::string_view surface) {
  const std::u32string cps = unicode::decode(surface);
  if (cps.size() != 1) return PunctClass::Other;
  switch (cps[0]) {
    case U',': return PunctClass::Comma;
    case U'.': return PunctClass::Period;
    case U':': return PunctClass::Colon;
    case U';': return PunctClass::SemiC;
    case U'?': return PunctClass::QMark;
    case U'!': return PunctClass::Exclam;
    case U'-':
    case U'‐':
    case U'–':
    case U'—': return PunctClass::Dash;
    case U'"':
    case U'“':
    case U'”':
    case U'\'':
    case U'‘':
    case U'’': return PunctClass::Quote;
    case U'(':
    case U')': return PunctClass::Parenth;
    default: return PunctClass::Other;
  }
}

void require_words(const TokenizedText& tok) {
  if (tok.word_count < 1) throw InputError("text has no word tokens");
}

// Resolves, per abbreviation of one scope, which lexicon category (if any) feeds it.
class ScopeScorer {
 public:
  explicit ScopeScorer(const Lexicon& lexicon) : lexicon_(lexicon) {
    for (const auto& [abbr, names] : kLexiconCategories) {
      std::optional<std::size_t> idx;
      for (auto name : names)
        if ((idx = lexicon.category_index(name))) break;
      lexicon_slot_.emplace(std::string(abbr), idx);
    }
  }

  void score(const TokenizedText& tok, std::vector<double>& out) const {
    require_words(tok);
    const auto read = readability_indices(tok);
    const auto lex = lexical_stats(tok);
    const auto style = stylistic_profile(tok);
    const auto counts = category_counts(lexicon_, tok);
    int numbers = 0;
    tok.for_each_token([&](const Token& t) { numbers += t.kind == TokenKind::Number ? 1 : 0; });
    const double words = tok.word_count;

    for (const auto& [abbr, category] : kAbbreviations) {
      double v = 0.0;
      if (abbr == "GI") v = read.gunning_fog;
      else if (abbr == "SMOG") v = read.smog;
      else if (abbr == "FK-RE") v = read.flesch_reading_ease;
      else if (abbr == "FK-GL") v = read.flesch_kincaid_grade;
      else if (abbr == "TTR") v = lex.ttr;
      else if (abbr == "WC") v = lex.word_count;
      else if (abbr == "WPS") v = lex.words_per_sentence;
      else if (abbr == "AVG_WLEN") v = lex.avg_word_length;
      else if (abbr == "SixLtr") v = lex.six_letter_pct;
      else if (abbr == "Number") v = 100.0 * numbers / words;
      else if (category == FC::Stylistic) v = style.at(std::string(abbr));
      else if (auto slot = lexicon_slot_.at(std::string(abbr))) v = 100.0 * counts[*slot] / words;
      out.push_back(v);
    }
  }

 private:
  const Lexicon& lexicon_;
  std::map<std::string, std::optional<std::size_t>> lexicon_slot_;
};

FeatureVector extract_with(const ScopeScorer& scorer, const Article& article, const Lexicon& lexicon) {
  if (lexicon.language() && *lexicon.language() != article.language)
    throw InputError("article language '" + std::string(to_string(article.language)) +
                     "' does not match lexicon language '" + std::string(to_string(*lexicon.language())) + "'");
  FeatureVector fv;
  fv.article_id = article.id;
  fv.label = article.label;
  fv.values.reserve(feature_registry().size());
  const auto title = analyze(article.title, article.language);
  if (title.word_count < 1) throw InputError("title has no word tokens");
  const auto body = analyze(article.body, article.language);
  if (body.word_count < 1) throw InputError("body has no word tokens");
  scorer.score(title, fv.values);
  scorer.score(body, fv.values);
  return fv;
}

}  // namespace

std::string_view to_string(Scope scope) { return scope == Scope::TTL ? "TTL" : "TXT"; }

std::string_view to_string(FeatureCategory category) {
  switch (category) {
    case FC::Complexity: return "complexity";
    case FC::Stylistic: return "stylistic";
    case FC::Linguistic: return "linguistic";
    case FC::Psychological: return "psychological";
  }
  return "?";
}

std::string FeatureId::name() const {
  std::string out(to_string(scope));
  out += '_';
  out += abbr;
  return out;
}

const std::vector<std::pair<std::string_view, FeatureCategory>>& feature_abbreviations() { return kAbbreviations; }

const std::vector<FeatureId>& feature_registry() {
  static const std::vector<FeatureId> registry = [] {
    std::vector<FeatureId> ids;
    for (Scope scope : {Scope::TTL, Scope::TXT})
      for (const auto& [abbr, category] : kAbbreviations) ids.push_back(FeatureId{scope, std::string(abbr), category});
    return ids;
  }();
  return registry;
}

std::optional<FeatureId> find_feature(std::string_view column_name) {
  for (const auto& id : feature_registry())
    if (id.name() == column_name) return id;
  return std::nullopt;
}

std::size_t registry_index(const FeatureId& id) {
  const auto& reg = feature_registry();
  auto it = std::find(reg.begin(), reg.end(), id);
  if (it == reg.end()) throw InputError("unknown feature " + id.name());
  return static_cast<std::size_t>(it - reg.begin());
}

ReadabilityScores readability_from_counts(double words, double sentences, double polysyllables, double syllables) {
  if (words < 1) throw InputError("readability needs at least one word");
  if (sentences < 1) throw InputError("readability needs at least one sentence");
  const double wps = words / sentences;
  const double spw = syllables / words;
  ReadabilityScores r;
  r.gunning_fog = 0.4 * (wps + 100.0 * polysyllables / words);
  r.smog = 1.0430 * std::sqrt(polysyllables * 30.0 / sentences) + 3.1291;
  r.flesch_reading_ease = 206.835 - 1.015 * wps - 84.6 * spw;
  r.flesch_kincaid_grade = 0.39 * wps + 11.8 * spw - 15.59;
  return r;
}

ReadabilityScores readability_indices(const TokenizedText& tok) {
  return readability_from_counts(tok.word_count, tok.sentence_count, tok.polysyllable_count, tok.syllable_total);
}

LexicalStats lexical_stats(const TokenizedText& tok) {
  require_words(tok);
  std::unordered_set<std::string> types;
  long letters = 0;
  int long_words = 0;
  tok.for_each_token([&](const Token& t) {
    if (t.kind != TokenKind::Word) return;
    types.insert(unicode::fold_case(t.surface));
    letters += t.letter_count;
    if (t.letter_count > 6) ++long_words;
  });
  const double w = tok.word_count;
  LexicalStats s;
  s.ttr = static_cast<double>(types.size()) / w;
  s.word_count = w;
  s.words_per_sentence = w / tok.sentence_count;
  s.avg_word_length = static_cast<double>(letters) / w;
  s.six_letter_pct = 100.0 * long_words / w;
  return s;
}

std::map<std::string, double> stylistic_profile(const TokenizedText& tok) {
  require_words(tok);
  std::array<int, 10> by_class{};
  int all_punct = 0;
  int all_caps = 0;
  tok.for_each_token([&](const Token& t) {
    if (t.kind == TokenKind::Punct) {
      ++all_punct;
      ++by_class[static_cast<std::size_t>(classify_punct(t.surface))];
    } else if (t.kind == TokenKind::Word && t.is_all_caps) {
      ++all_caps;
    }
  });
  const double w = tok.word_count;
  auto pct = [w](int n) { return 100.0 * n / w; };
  return {
      {"Comma", pct(by_class[0])},  {"Period", pct(by_class[1])}, {"Colon", pct(by_class[2])},
      {"SemiC", pct(by_class[3])},  {"QMark", pct(by_class[4])},  {"Exclam", pct(by_class[5])},
      {"Dash", pct(by_class[6])},   {"Quote", pct(by_class[7])},  {"Parenth", pct(by_class[8])},
      {"OtherP", pct(by_class[9])}, {"AllPunc", pct(all_punct)},  {"AllCaps", pct(all_caps)},
  };
}

std::vector<std::string> missing_lexicon_categories(const Lexicon& lexicon) {
  std::vector<std::string> missing;
  for (const auto& [abbr, names] : kLexiconCategories) {
    const bool found =
        std::any_of(names.begin(), names.end(), [&](auto n) { return lexicon.category_index(n).has_value(); });
    if (!found) missing.emplace_back(names.front());
  }
  return missing;
}

FeatureVector extract_article(const Article& article, const Lexicon& lexicon) {
  ScopeScorer scorer(lexicon);
  try {
    return extract_with(scorer, article, lexicon);
  } catch (const InputError& e) {
    throw InputError("article '" + article.id + "': " + e.what());
  }
}

FeatureMatrix extract_corpus(const Corpus& corpus, const Lexicon& lexicon, unsigned threads) {
  const auto& articles = corpus.articles();
  if (!articles.empty()) {
    const Language lang = articles.front().language;
    for (const auto& a : articles)
      if (a.language != lang)
        throw InputError("article '" + a.id + "': mixed-language corpus; expected '" +
                         std::string(to_string(lang)) + "', got '" + std::string(to_string(a.language)) + "'");
  }

  ScopeScorer scorer(lexicon);
  FeatureMatrix m;
  m.corpus_name = corpus.name();
  m.feature_ids = feature_registry();
  m.rows.resize(articles.size());
  std::vector<std::exception_ptr> errors(articles.size());

  auto work = [&](std::size_t i) {
    try {
      m.rows[i] = extract_with(scorer, articles[i], lexicon);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(articles.size(), 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < articles.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < articles.size(); i = next++) work(i);
      });
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw InputError("article '" + articles[i].id + "': " + e.what());
    }
  }
  return m;
}

std::size_t FeatureMatrix::feature_index(const FeatureId& id) const {
  auto it = std::find(feature_ids.begin(), feature_ids.end(), id);
  if (it == feature_ids.end()) throw InputError("feature " + id.name() + " is not a column of '" + corpus_name + "'");
  return static_cast<std::size_t>(it - feature_ids.begin());
}

std::optional<std::size_t> FeatureMatrix::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < feature_ids.size(); ++i)
    if (feature_ids[i].name() == name) return i;
  return std::nullopt;
}

std::vector<double> FeatureMatrix::column(std::size_t feature, std::optional<ClassLabel> label) const {
  std::vector<double> out;
  for (const auto& row : rows)
    if (!label || row.label == *label) out.push_back(row.values.at(feature));
  return out;
}

std::size_t FeatureMatrix::count(ClassLabel label) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [label](const FeatureVector& r) { return r.label == label; }));
}

FeatureMatrix FeatureMatrix::select_features(std::span<const FeatureId> features) const {
  std::vector<std::size_t> cols;
  for (const auto& f : features) cols.push_back(feature_index(f));
  FeatureMatrix out;
  out.corpus_name = corpus_name;
  out.feature_ids.assign(features.begin(), features.end());
  out.rows.reserve(rows.size());
  for (const auto& row : rows) {
    FeatureVector r{row.article_id, row.label, {}};
    r.values.reserve(cols.size());
    for (auto c : cols) r.values.push_back(row.values[c]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

FeatureMatrix FeatureMatrix::restrict_to(ClassPair pair) const {
  FeatureMatrix out;
  out.corpus_name = corpus_name;
  out.feature_ids = feature_ids;
  for (const auto& row : rows)
    if (row.label == pair.first || row.label == pair.second) out.rows.push_back(row);
  return out;
}

namespace {

std::vector<ClassLabel> row_labels(const FeatureMatrix& m) {
  std::vector<ClassLabel> labels;
  labels.reserve(m.rows.size());
  for (const auto& r : m.rows) labels.push_back(r.label);
  return labels;
}

FeatureMatrix take_rows(const FeatureMatrix& m, std::span<const std::size_t> idx) {
  FeatureMatrix out;
  out.corpus_name = m.corpus_name;
  out.feature_ids = m.feature_ids;
  out.rows.reserve(idx.size());
  for (auto i : idx) out.rows.push_back(m.rows[i]);
  return out;
}

}  // namespace

MatrixSplit split_matrix(const FeatureMatrix& matrix, double test_fraction, std::uint64_t seed) {
  const auto split = stratified_split_indices(row_labels(matrix), test_fraction, seed);
  return {take_rows(matrix, split.train), take_rows(matrix, split.test)};
}

FeatureMatrix upsample_matrix(const FeatureMatrix& matrix, ClassPair classes, std::uint64_t seed) {
  return take_rows(matrix, upsample_indices(row_labels(matrix), classes, seed));
}

FeatureMatrix concat(const FeatureMatrix& a, const FeatureMatrix& b, std::string corpus_name) {
  if (a.feature_ids != b.feature_ids)
    throw InputError("cannot combine '" + a.corpus_name + "' and '" + b.corpus_name + "': feature columns differ");
  FeatureMatrix out = a;
  out.corpus_name = std::move(corpus_name);
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  return out;
}

}  // namespace stylo
