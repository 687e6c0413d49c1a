#include "stylo/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "stylo/error.hpp"
#include "stylo/unicode.hpp"

namespace stylo {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) tab = line.size();
    auto field = trim(line.substr(pos, tab - pos));
    if (!field.empty()) out.push_back(field);
    pos = tab + 1;
  }
  return out;
}

std::optional<long> parse_int(std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_utf8_boundary(std::string_view s, std::size_t pos) {
  return pos >= s.size() || (static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80;
}

const std::vector<std::size_t> kNoCategories;

}  // namespace

Lexicon Lexicon::parse(std::istream& in, const std::string& origin) {
  Lexicon lex;
  std::unordered_map<long, std::size_t> index_of;
  enum class Section { Header, Categories, Patterns } section = Section::Header;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw InputError(origin + ":" + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!unicode::is_valid_utf8(line)) fail("invalid UTF-8");
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view pragma = "# language:";
      if (section == Section::Header && text.starts_with(pragma)) {
        const auto value = trim(text.substr(pragma.size()));
        auto lang = parse_language(value);
        if (!lang) fail("unknown language '" + std::string(value) + "'");
        lex.language_ = lang;
      }
      continue;
    }
    if (text == "%") {
      if (section == Section::Header) {
        section = Section::Categories;
      } else if (section == Section::Categories) {
        if (lex.categories_.empty()) fail("empty category section");
        section = Section::Patterns;
      } else {
        fail("unexpected third '%' line");
      }
      continue;
    }

    const auto fields = split_fields(text);
    if (section == Section::Header) fail("expected '%' before category declarations");
    if (section == Section::Categories) {
      if (fields.size() != 2) fail("category line must be 'index<TAB>name'");
      const auto idx = parse_int(fields[0]);
      if (!idx) fail("invalid category index '" + std::string(fields[0]) + "'");
      const std::string name(fields[1]);
      if (index_of.contains(*idx)) fail("duplicate category index " + std::to_string(*idx));
      if (std::find(lex.categories_.begin(), lex.categories_.end(), name) != lex.categories_.end())
        fail("duplicate category name '" + name + "'");
      index_of.emplace(*idx, lex.categories_.size());
      lex.categories_.push_back(name);
      continue;
    }

    // Pattern section: pattern<TAB>index[,index...]; extra tab-separated indices are accepted too.
    if (fields.size() < 2) fail("pattern line must be 'pattern<TAB>index[,index...]'");
    std::string_view raw = fields[0];
    Pattern p;
    if (raw.ends_with('*')) {
      p.prefix = true;
      raw.remove_suffix(1);
    }
    if (raw.empty()) fail("empty pattern");
    if (raw.find('*') != std::string_view::npos) fail("'*' is only allowed as the final character of a pattern");
    p.text = unicode::fold_case(raw);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      std::string_view refs = fields[f];
      while (!refs.empty()) {
        auto comma = refs.find(',');
        auto item = trim(refs.substr(0, comma));
        refs = comma == std::string_view::npos ? std::string_view{} : refs.substr(comma + 1);
        if (item.empty()) continue;
        const auto idx = parse_int(item);
        if (!idx) fail("invalid category reference '" + std::string(item) + "'");
        auto it = index_of.find(*idx);
        if (it == index_of.end()) fail("unknown category reference " + std::to_string(*idx));
        if (std::find(p.categories.begin(), p.categories.end(), it->second) == p.categories.end())
          p.categories.push_back(it->second);
      }
    }
    if (p.categories.empty()) fail("pattern without categories");
    std::sort(p.categories.begin(), p.categories.end());
    auto& table = p.prefix ? lex.prefix_ : lex.exact_;
    if (table.contains(p.text)) fail("duplicate pattern '" + std::string(fields[0]) + "'");
    table.emplace(p.text, lex.patterns_.size());
    if (p.prefix) lex.max_prefix_bytes_ = std::max(lex.max_prefix_bytes_, p.text.size());
    lex.patterns_.push_back(std::move(p));
  }
  if (section == Section::Header) throw InputError(origin + ": missing category section");
  if (section == Section::Categories) {
    if (lex.categories_.empty()) throw InputError(origin + ": empty category section");
    throw InputError(origin + ": category section is not closed by '%'");
  }
  return lex;
}

std::optional<std::size_t> Lexicon::category_index(std::string_view name) const {
  auto it = std::find(categories_.begin(), categories_.end(), name);
  if (it == categories_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - categories_.begin());
}

const std::vector<std::size_t>& Lexicon::match_indices(std::string_view word) const {
  if (word.empty()) return kNoCategories;
  const std::string folded = unicode::fold_case(word);
  if (auto it = exact_.find(folded); it != exact_.end()) return patterns_[it->second].categories;
  for (std::size_t len = std::min(folded.size(), max_prefix_bytes_); len > 0; --len) {
    if (!is_utf8_boundary(folded, len)) continue;
    if (auto it = prefix_.find(folded.substr(0, len)); it != prefix_.end()) return patterns_[it->second].categories;
  }
  return kNoCategories;
}

std::set<std::string> Lexicon::match_word(std::string_view word) const {
  std::set<std::string> out;
  for (std::size_t idx : match_indices(word)) out.insert(categories_[idx]);
  return out;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open lexicon file: " + path.string());
  return Lexicon::parse(in, path.string());
}

std::vector<int> category_counts(const Lexicon& lexicon, const TokenizedText& tokens) {
  std::vector<int> counts(lexicon.categories().size(), 0);
  tokens.for_each_token([&](const Token& t) {
    if (t.kind != TokenKind::Word) return;
    for (std::size_t idx : lexicon.match_indices(t.surface)) ++counts[idx];
  });
  return counts;
}

std::map<std::string, double> category_frequencies(const Lexicon& lexicon, const TokenizedText& tokens) {
  if (tokens.word_count < 1) throw InputError("category frequencies need at least one word");
  const auto counts = category_counts(lexicon, tokens);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < counts.size(); ++i)
    out[lexicon.categories()[i]] = 100.0 * counts[i] / tokens.word_count;
  return out;
}

}  // namespace stylo
