#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stylo/types.hpp"

namespace stylo {

enum class TokenKind : std::uint8_t { Word, Number, Punct };

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::Punct;
  int letter_count = 0;
  bool is_all_caps = false;
  int syllables = 0;  // words only

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenizedText {
  std::vector<std::vector<Token>> sentences;
  int word_count = 0;
  int sentence_count = 0;
  int syllable_total = 0;
  int polysyllable_count = 0;  // words with >= 3 syllables

  /// Visits every token in reading order.
  template <typename F>
  void for_each_token(F&& f) const {
    for (const auto& sentence : sentences)
      for (const auto& tok : sentence) f(tok);
  }
};

/// Removes URLs (http://, https://, www.) and @-handles.
std::string strip_boilerplate(std::string_view text);

/// Splits on . ! ? and the ellipsis character when followed by whitespace and
/// an uppercase letter, digit or opening quote, except after a known
/// abbreviation. Throws InputError on blank input.
std::vector<std::string> segment_sentences(std::string_view text, Language language);

std::vector<Token> tokenize(std::string_view sentence, Language language);

/// Vowel-group heuristic; always >= 1. Throws InputError if the word has no letters.
int count_syllables(std::string_view word, Language language);

/// strip_boilerplate -> segment_sentences -> tokenize, with aggregate counts.
TokenizedText analyze(std::string_view text, Language language);

}  // namespace stylo
