#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/corpus.hpp"
#include "stylo/lexicon.hpp"
#include "stylo/textproc.hpp"

namespace stylo {

enum class Scope : std::uint8_t { TTL, TXT };
enum class FeatureCategory : std::uint8_t { Complexity, Stylistic, Linguistic, Psychological };

std::string_view to_string(Scope scope);
std::string_view to_string(FeatureCategory category);

struct FeatureId {
  Scope scope = Scope::TXT;
  std::string abbr;
  FeatureCategory category = FeatureCategory::Complexity;

  /// Column name, e.g. "TXT_FK-RE".
  std::string name() const;

  friend bool operator==(const FeatureId& a, const FeatureId& b) { return a.scope == b.scope && a.abbr == b.abbr; }
};

/// Abbreviations of one scope, grouped by category in registry order (51 entries).
const std::vector<std::pair<std::string_view, FeatureCategory>>& feature_abbreviations();

/// All 102 features: every abbreviation in TTL scope, then every one in TXT scope.
const std::vector<FeatureId>& feature_registry();
std::optional<FeatureId> find_feature(std::string_view column_name);
/// Position in feature_registry(); throws InputError for unknown features.
std::size_t registry_index(const FeatureId& id);

struct ReadabilityScores {
  double gunning_fog = 0.0;
  double smog = 0.0;
  double flesch_reading_ease = 0.0;
  double flesch_kincaid_grade = 0.0;
};

/// words W, sentences S, polysyllables P, syllables Y
ReadabilityScores readability_from_counts(double words, double sentences, double polysyllables, double syllables);
ReadabilityScores readability_indices(const TokenizedText& tok);

struct LexicalStats {
  double ttr = 0.0;
  double word_count = 0.0;
  double words_per_sentence = 0.0;
  double avg_word_length = 0.0;
  double six_letter_pct = 0.0;  // words with more than six letters
};

LexicalStats lexical_stats(const TokenizedText& tok);

/// Punctuation and all-caps frequencies as percent of words, keyed by abbreviation.
std::map<std::string, double> stylistic_profile(const TokenizedText& tok);

struct FeatureVector {
  std::string article_id;
  ClassLabel label = ClassLabel::R;
  std::vector<double> values;  // aligned with the owning matrix's feature_ids

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct FeatureMatrix {
  std::string corpus_name;
  std::vector<FeatureId> feature_ids;
  std::vector<FeatureVector> rows;

  std::size_t feature_index(const FeatureId& id) const;
  std::optional<std::size_t> find_column(std::string_view name) const;
  std::vector<double> column(std::size_t feature, std::optional<ClassLabel> label = std::nullopt) const;
  std::size_t count(ClassLabel label) const;

  /// Keeps only the given columns, in the given order.
  FeatureMatrix select_features(std::span<const FeatureId> features) const;
  /// Keeps only rows whose label is one of the pair's classes.
  FeatureMatrix restrict_to(ClassPair pair) const;
};

/// Lexicon categories the registry looks for but the lexicon lacks (features read 0).
std::vector<std::string> missing_lexicon_categories(const Lexicon& lexicon);

/// Complete 102-value vector in registry order; title and body scored separately.
FeatureVector extract_article(const Article& article, const Lexicon& lexicon);

/// One row per article in corpus order. threads == 0 picks the hardware concurrency;
/// output is identical for every thread count.
FeatureMatrix extract_corpus(const Corpus& corpus, const Lexicon& lexicon, unsigned threads = 0);

/// Header "article_id,label,<feature names>", values with 6 significant digits.
void write_feature_csv(std::ostream& out, const FeatureMatrix& matrix);
FeatureMatrix read_feature_csv(std::istream& in, std::string corpus_name);
void save_feature_csv(const std::filesystem::path& path, const FeatureMatrix& matrix);
FeatureMatrix load_feature_csv(const std::filesystem::path& path);

struct MatrixSplit {
  FeatureMatrix train;
  FeatureMatrix test;
};

/// stratified_split_indices applied to matrix rows.
MatrixSplit split_matrix(const FeatureMatrix& matrix, double test_fraction, std::uint64_t seed);
/// upsample_indices applied to matrix rows.
FeatureMatrix upsample_matrix(const FeatureMatrix& matrix, ClassPair classes, std::uint64_t seed);

/// Row-wise concatenation; both matrices must share the same columns.
FeatureMatrix concat(const FeatureMatrix& a, const FeatureMatrix& b, std::string corpus_name);

}  // namespace stylo
