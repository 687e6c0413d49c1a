#include "stylo/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_set>

#include <json.hpp>

#include "stylo/error.hpp"
#include "stylo/sampling.hpp"
#include "stylo/unicode.hpp"

namespace stylo {
namespace {

constexpr std::array<std::string_view, 6> kFields{"id", "source", "language", "label", "title", "body"};

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; });
}

bool blank_unicode(std::string_view s) {
  for (char32_t cp : unicode::decode(s))
    if (!unicode::is_space(cp)) return false;
  return true;
}

[[noreturn]] void fail_at(std::size_t line, const std::string& what) {
  throw InputError(what + " at line " + std::to_string(line));
}

Article parse_record(std::string_view text, std::size_t line_no) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail_at(line_no, std::string("malformed JSON record (") + e.what() + ")");
  }
  if (!j.is_object()) fail_at(line_no, "record is not a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end())
      fail_at(line_no, "unknown field '" + key + "'");
    if (!value.is_string()) fail_at(line_no, "field '" + key + "' is not a string");
  }
  for (auto field : kFields)
    if (!j.contains(field)) fail_at(line_no, "missing field '" + std::string(field) + "'");

  auto text_field = [&](std::string_view key) {
    const auto& raw = j.at(std::string(key)).get_ref<const std::string&>();
    try {
      return unicode::nfc(raw);
    } catch (const InputError&) {
      fail_at(line_no, "field '" + std::string(key) + "' is not valid UTF-8");
    }
  };

  Article a;
  a.id = text_field("id");
  a.source = text_field("source");
  const auto label = parse_label(j.at("label").get<std::string>());
  if (!label) fail_at(line_no, "unknown label '" + j.at("label").get<std::string>() + "'");
  a.label = *label;
  const auto lang = parse_language(j.at("language").get<std::string>());
  if (!lang) fail_at(line_no, "unknown language '" + j.at("language").get<std::string>() + "'");
  a.language = *lang;
  a.title = text_field("title");
  a.body = text_field("body");
  if (a.id.empty()) fail_at(line_no, "empty id");
  if (blank_unicode(a.title)) fail_at(line_no, "empty title");
  if (blank_unicode(a.body)) fail_at(line_no, "empty body");
  return a;
}

}  // namespace

Corpus::Corpus(std::string name, std::vector<Article> articles)
    : name_(std::move(name)), articles_(std::move(articles)) {
  for (const auto& a : articles_) ++counts_[a.label];
}

std::size_t Corpus::count(ClassLabel label) const {
  auto it = counts_.find(label);
  return it == counts_.end() ? 0 : it->second;
}

Corpus parse_corpus(std::istream& in, std::string name, std::optional<Language> expected_language) {
  std::vector<Article> articles;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    Article a = parse_record(line, line_no);
    if (expected_language && a.language != *expected_language)
      fail_at(line_no, "language mismatch: expected '" + std::string(to_string(*expected_language)) + "', got '" +
                           std::string(to_string(a.language)) + "'");
    if (!ids.insert(a.id).second) fail_at(line_no, "duplicate id '" + a.id + "'");
    articles.push_back(std::move(a));
  }
  return Corpus(std::move(name), std::move(articles));
}

Corpus load_corpus(const std::filesystem::path& path, std::optional<Language> expected_language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file: " + path.string());
  try {
    return parse_corpus(in, path.stem().string(), expected_language);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& a : corpus.articles()) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["source"] = a.source;
    j["language"] = std::string(to_string(a.language));
    j["label"] = std::string(to_string(a.label));
    j["title"] = a.title;
    j["body"] = a.body;
    out << j.dump() << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write corpus file: " + path.string());
  write_corpus(out, corpus);
}

CorpusSplit stratified_split(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
  const auto& articles = corpus.articles();
  std::vector<ClassLabel> labels;
  for (const auto& a : articles) labels.push_back(a.label);
  const auto split = stratified_split_indices(labels, test_fraction, seed);
  std::vector<Article> train;
  std::vector<Article> test;
  for (auto i : split.train) train.push_back(articles[i]);
  for (auto i : split.test) test.push_back(articles[i]);
  return {Corpus(corpus.name() + ".train", std::move(train)), Corpus(corpus.name() + ".test", std::move(test))};
}

Corpus upsample_minority(const Corpus& corpus, ClassPair classes, std::uint64_t seed) {
  std::vector<ClassLabel> labels;
  for (const auto& a : corpus.articles()) labels.push_back(a.label);
  std::vector<Article> articles;
  for (auto i : upsample_indices(labels, classes, seed)) articles.push_back(corpus.articles()[i]);
  return Corpus(corpus.name(), std::move(articles));
}

}  // namespace stylo
