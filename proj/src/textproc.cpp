#include "stylo/textproc.hpp"

#include <algorithm>
#include <array>

#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

namespace stylo {
namespace {

using unicode::is_letter;
using unicode::is_mark;
using unicode::is_space;

constexpr std::array<std::u32string_view, 13> kAbbrevEn{
    U"mr.", U"mrs.", U"ms.", U"dr.", U"u.s.", U"vs.", U"etc.", U"jr.", U"sr.", U"st.", U"prof.", U"sen.", U"gov."};
constexpr std::array<std::u32string_view, 9> kAbbrevPt{
    U"sr.", U"sra.", U"dr.", U"dra.", U"etc.", U"pág.", U"prof.", U"profa.", U"av."};

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?' || c == U'…'; }

bool is_opening_quote(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'“' || c == U'‘' || c == U'«' || c == U'(' ||
         c == U'[';
}

bool is_closing_mark(char32_t c) {
  return c == U'"' || c == U'\'' || c == U'”' || c == U'’' || c == U'»' || c == U')' ||
         c == U']';
}

bool is_apostrophe_or_hyphen(char32_t c) {
  return c == U'\'' || c == U'’' || c == U'-' || c == U'‐';
}

std::u32string trim(std::u32string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::u32string(s.substr(b, e - b));
}

std::u32string lower(std::u32string_view s) {
  std::u32string out(s);
  for (auto& c : out) c = unicode::to_lower(c);
  return out;
}

bool is_abbreviation(std::u32string_view text, std::size_t period_pos, Language language) {
  std::size_t start = period_pos;
  while (start > 0 && !is_space(text[start - 1])) --start;
  while (start < period_pos && is_opening_quote(text[start])) ++start;
  const std::u32string chunk = lower(text.substr(start, period_pos - start + 1));
  if (language == Language::En)
    return std::find(kAbbrevEn.begin(), kAbbrevEn.end(), chunk) != kAbbrevEn.end();
  return std::find(kAbbrevPt.begin(), kAbbrevPt.end(), chunk) != kAbbrevPt.end();
}

bool starts_sentence(char32_t c) { return unicode::is_upper(c) || unicode::is_digit(c) || is_opening_quote(c); }

bool is_vowel_en(char32_t c) {
  static constexpr std::u32string_view kVowels = U"aeiouyàáâãäåèéêëìíîïòóôõöùúûüý";
  return kVowels.find(c) != std::u32string_view::npos;
}

bool is_vowel_pt(char32_t c) {
  static constexpr std::u32string_view kVowels = U"aeiouáéíóúâêôãõàü";
  return kVowels.find(c) != std::u32string_view::npos;
}

bool is_acute_pt(char32_t c) { return c == U'á' || c == U'é' || c == U'í' || c == U'ó' || c == U'ú'; }

int syllables_en(const std::u32string& w) {
  int groups = 0;
  bool in_group = false;
  for (char32_t c : w) {
    const bool v = is_vowel_en(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  // Silent final e: "make" -> 1, but "table" keeps its -le syllable.
  std::u32string letters;
  for (char32_t c : w)
    if (is_letter(c)) letters.push_back(c);
  const auto n = letters.size();
  if (groups > 1 && n >= 2 && letters[n - 1] == U'e' && !is_vowel_en(letters[n - 2])) {
    const bool consonant_le = n >= 3 && letters[n - 2] == U'l' && !is_vowel_en(letters[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(groups, 1);
}

int syllables_pt(const std::u32string& w) {
  int groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const char32_t c = w[i];
    bool v = is_vowel_pt(c);
    // "qu"/"gu" before e/i: the u is not pronounced as a separate vowel.
    if (c == U'u' && i > 0 && (w[i - 1] == U'q' || w[i - 1] == U'g') && i + 1 < w.size()) {
      const char32_t next = w[i + 1];
      if (next == U'e' || next == U'i' || next == U'é' || next == U'í' || next == U'ê') v = false;
    }
    if (!v) {
      in_group = false;
      continue;
    }
    // An acute vowel is a syllable nucleus on its own (hiatus): sa-í-da, pa-ís.
    if (is_acute_pt(c)) {
      ++groups;
      in_group = false;
      continue;
    }
    if (!in_group) {
      ++groups;
      in_group = true;
    }
  }
  return std::max(groups, 1);
}

Token make_word(std::u32string_view cps, Language language) {
  Token t;
  t.kind = TokenKind::Word;
  t.surface = unicode::encode(cps);
  bool all_upper = true;
  for (char32_t c : cps) {
    if (!is_letter(c)) continue;
    ++t.letter_count;
    if (!unicode::is_upper(c)) all_upper = false;
  }
  t.is_all_caps = t.letter_count >= 2 && all_upper;
  t.syllables = count_syllables(t.surface, language);
  return t;
}

}  // namespace

std::string strip_boilerplate(std::string_view text) {
  const std::u32string cps = unicode::decode(text);
  std::u32string out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    if (is_space(cps[i])) {
      out.push_back(cps[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    const std::u32string chunk = lower(std::u32string_view(cps).substr(i, j - i));
    const bool url = chunk.starts_with(U"http://") || chunk.starts_with(U"https://") || chunk.starts_with(U"www.");
    const bool handle = chunk.size() > 1 && chunk[0] == U'@' &&
                        (is_letter(chunk[1]) || unicode::is_digit(chunk[1]) || chunk[1] == U'_');
    if (!url && !handle) out.append(cps, i, j - i);
    i = j;
  }
  return unicode::encode(out);
}

std::vector<std::string> segment_sentences(std::string_view text, Language language) {
  const std::u32string cps = trim(unicode::decode(text));
  if (cps.empty()) throw InputError("cannot segment empty text");

  std::vector<std::string> sentences;
  auto emit = [&](std::size_t from, std::size_t to) {
    std::u32string s = trim(std::u32string_view(cps).substr(from, to - from));
    if (!s.empty()) sentences.push_back(unicode::encode(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!is_terminator(cps[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < cps.size() && is_terminator(cps[end])) ++end;
    const bool single_period = end - i == 1 && cps[i] == U'.';
    while (end < cps.size() && is_closing_mark(cps[end])) ++end;
    if (end >= cps.size() || !is_space(cps[end])) {
      i = end;
      continue;
    }
    std::size_t next = end;
    while (next < cps.size() && is_space(cps[next])) ++next;
    if (next < cps.size() && starts_sentence(cps[next]) && !(single_period && is_abbreviation(cps, i, language))) {
      emit(start, end);
      start = next;
    }
    i = next;
  }
  emit(start, cps.size());
  return sentences;
}

std::vector<Token> tokenize(std::string_view sentence, Language language) {
  const std::u32string cps = unicode::decode(sentence);
  std::vector<Token> tokens;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = cps[i];
    if (is_space(c)) {
      ++i;
    } else if (is_letter(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_letter(cps[j]) || is_mark(cps[j])) {
          ++j;
        } else if (is_apostrophe_or_hyphen(cps[j]) && j + 1 < n && is_letter(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      tokens.push_back(make_word(std::u32string_view(cps).substr(i, j - i), language));
      i = j;
    } else if (unicode::is_digit(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (unicode::is_digit(cps[j])) {
          ++j;
        } else if ((cps[j] == U'.' || cps[j] == U',') && j + 1 < n && unicode::is_digit(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      Token t;
      t.kind = TokenKind::Number;
      t.surface = unicode::encode(std::u32string_view(cps).substr(i, j - i));
      tokens.push_back(std::move(t));
      i = j;
    } else {
      Token t;
      t.kind = TokenKind::Punct;
      unicode::append_utf8(t.surface, c);
      tokens.push_back(std::move(t));
      ++i;
    }
  }
  return tokens;
}

int count_syllables(std::string_view word, Language language) {
  std::u32string w = unicode::decode(word);
  if (std::none_of(w.begin(), w.end(), [](char32_t c) { return is_letter(c); }))
    throw InputError("cannot count syllables of a word without letters");
  for (auto& c : w) c = unicode::to_lower(c);
  return language == Language::En ? syllables_en(w) : syllables_pt(w);
}

TokenizedText analyze(std::string_view text, Language language) {
  const std::string cleaned = strip_boilerplate(text);
  TokenizedText out;
  for (const auto& sentence : segment_sentences(cleaned, language)) {
    auto tokens = tokenize(sentence, language);
    for (const auto& t : tokens) {
      if (t.kind != TokenKind::Word) continue;
      ++out.word_count;
      out.syllable_total += t.syllables;
      if (t.syllables >= 3) ++out.polysyllable_count;
    }
    out.sentences.push_back(std::move(tokens));
  }
  out.sentence_count = static_cast<int>(out.sentences.size());
  return out;
}

}  // namespace stylo
