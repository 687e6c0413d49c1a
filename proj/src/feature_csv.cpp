#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "stylo/error.hpp"
#include "stylo/features.hpp"

namespace stylo {
namespace {

void write_field(std::ostream& out, std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// RFC 4180 record reader; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (int ch = in.get(); ch != std::char_traits<char>::eof(); ch = in.get()) {
    any = true;
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (quoted) throw InputError("unterminated quoted CSV field");
  fields.push_back(std::move(field));
  return any;
}

}  // namespace

void write_feature_csv(std::ostream& out, const FeatureMatrix& matrix) {
  out << "article_id,label";
  for (const auto& id : matrix.feature_ids) out << ',' << id.name();
  out << '\n';
  for (const auto& row : matrix.rows) {
    write_field(out, row.article_id);
    out << ',' << to_string(row.label);
    for (double v : row.values) out << ',' << format_value(v);
    out << '\n';
  }
}

FeatureMatrix read_feature_csv(std::istream& in, std::string corpus_name) {
  FeatureMatrix m;
  m.corpus_name = std::move(corpus_name);
  std::vector<std::string> fields;
  if (!read_record(in, fields)) throw InputError("feature CSV is empty");
  if (fields.size() < 3 || fields[0] != "article_id" || fields[1] != "label")
    throw InputError("feature CSV header must start with 'article_id,label' and name at least one feature");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 2; i < fields.size(); ++i) {
    auto id = find_feature(fields[i]);
    if (!id) throw InputError("unknown feature column '" + fields[i] + "'");
    if (!seen.insert(fields[i]).second) throw InputError("duplicate feature column '" + fields[i] + "'");
    m.feature_ids.push_back(*id);
  }

  std::size_t line = 1;
  while (read_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != m.feature_ids.size() + 2)
      throw InputError("feature CSV line " + std::to_string(line) + ": expected " +
                       std::to_string(m.feature_ids.size() + 2) + " fields, got " + std::to_string(fields.size()));
    FeatureVector row;
    row.article_id = fields[0];
    auto label = parse_label(fields[1]);
    if (!label) throw InputError("feature CSV line " + std::to_string(line) + ": unknown label '" + fields[1] + "'");
    row.label = *label;
    row.values.reserve(m.feature_ids.size());
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const auto& f = fields[i];
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(v))
        throw InputError("feature CSV line " + std::to_string(line) + ": invalid value '" + f + "' in column " +
                         m.feature_ids[i - 2].name());
      row.values.push_back(v);
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

void save_feature_csv(const std::filesystem::path& path, const FeatureMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write feature CSV: " + path.string());
  write_feature_csv(out, matrix);
}

FeatureMatrix load_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open feature CSV: " + path.string());
  try {
    return read_feature_csv(in, path.stem().string());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace stylo
