#include "stylo/types.hpp"

namespace stylo {

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::R: return "R";
    case ClassLabel::U: return "U";
    case ClassLabel::S: return "S";
  }
  return "?";
}

std::string_view to_string(Language lang) { return lang == Language::En ? "en" : "pt"; }

std::optional<ClassLabel> parse_label(std::string_view s) {
  if (s == "R") return ClassLabel::R;
  if (s == "U") return ClassLabel::U;
  if (s == "S") return ClassLabel::S;
  return std::nullopt;
}

std::optional<Language> parse_language(std::string_view s) {
  if (s == "en") return Language::En;
  if (s == "pt") return Language::Pt;
  return std::nullopt;
}

std::string to_string(ClassPair pair) {
  std::string out(to_string(pair.first));
  out += ',';
  out += to_string(pair.second);
  return out;
}

std::optional<ClassPair> parse_pair(std::string_view s) {
  std::optional<ClassLabel> first;
  std::optional<ClassLabel> second;
  if (s.size() == 2) {
    first = parse_label(s.substr(0, 1));
    second = parse_label(s.substr(1, 1));
  } else if (s.size() == 3 && (s[1] == ',' || s[1] == '-' || s[1] == '/')) {
    first = parse_label(s.substr(0, 1));
    second = parse_label(s.substr(2, 1));
  }
  if (!first || !second || *first == *second) return std::nullopt;
  return ClassPair{*first, *second};
}

}  // namespace stylo
