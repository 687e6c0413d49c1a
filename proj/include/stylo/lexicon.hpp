#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stylo/textproc.hpp"
#include "stylo/types.hpp"

namespace stylo {

/// LIWC-style word-category dictionary.
///
/// File format (UTF-8):
///
///     # language: en          optional pragma, before the first '%'
///     %
///     1	pronoun
///     2	article
///     %
///     he	1
///     the	2
///     certain*	3,4
///
/// Lines starting with '#' are comments. A trailing '*' marks a prefix
/// pattern. Patterns are NFC-normalized and case-folded on load.
class Lexicon {
 public:
  struct Pattern {
    std::string text;  // folded, without the '*'
    bool prefix = false;
    std::vector<std::size_t> categories;  // positions in categories()
  };

  static Lexicon parse(std::istream& in, const std::string& origin = "<lexicon>");

  std::optional<Language> language() const { return language_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  std::optional<std::size_t> category_index(std::string_view name) const;

  /// Category positions of the winning pattern: an exact match if any,
  /// otherwise the longest matching prefix pattern. Empty for unknown words.
  const std::vector<std::size_t>& match_indices(std::string_view word) const;
  std::set<std::string> match_word(std::string_view word) const;

 private:
  std::optional<Language> language_;
  std::vector<std::string> categories_;
  std::vector<Pattern> patterns_;
  std::unordered_map<std::string, std::size_t> exact_;
  std::unordered_map<std::string, std::size_t> prefix_;
  std::size_t max_prefix_bytes_ = 0;
};

Lexicon load_lexicon(const std::filesystem::path& path);

/// Hits per category position over the word tokens of the text.
std::vector<int> category_counts(const Lexicon& lexicon, const TokenizedText& tokens);

/// 100 * (matching word tokens) / word_count for every category; throws on zero words.
std::map<std::string, double> category_frequencies(const Lexicon& lexicon, const TokenizedText& tokens);

}  // namespace stylo
