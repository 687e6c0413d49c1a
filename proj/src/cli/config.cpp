#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cli/internal.hpp"
#include "stylo/error.hpp"
#include "stylo/hashing.hpp"

namespace stylo::cli {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw InputError("config key '" + key + "': invalid number '" + value + "'");
  return v;
}

template <typename T>
void overlay(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

std::string iso_utc(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t RunConfig::require_seed(const std::string& command) const {
  if (!seed) throw InputError("'" + command + "' requires --seed (or 'seed' in the config file)");
  return *seed;
}

std::string RunConfig::resolved_timestamp() const {
  if (timestamp == "now") return iso_utc(std::time(nullptr));
  if (!timestamp.empty()) return timestamp;
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"); sde != nullptr && *sde != '\0')
    return iso_utc(static_cast<std::time_t>(parse_number<long long>("SOURCE_DATE_EPOCH", sde)));
  return iso_utc(0);
}

ConfigLayer read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path.string());
  ConfigLayer layer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") layer.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "out") layer.out_dir = value;
    else if (key == "format") layer.format = value;
    else if (key == "p_threshold") layer.p_threshold = parse_number<double>(key, value);
    else if (key == "d_select_threshold") layer.d_select_threshold = parse_number<double>(key, value);
    else if (key == "d_equality_threshold") layer.d_equality_threshold = parse_number<double>(key, value);
    else if (key == "lambda") layer.lambda = parse_number<double>(key, value);
    else if (key == "epochs") layer.epochs = parse_number<int>(key, value);
    else if (key == "test_fraction") layer.test_fraction = parse_number<double>(key, value);
    else if (key == "threads") layer.threads = parse_number<unsigned>(key, value);
    else if (key == "timestamp") layer.timestamp = value;
    else throw InputError(path.string() + ":" + std::to_string(line_no) + ": unknown config key '" + key + "'");
  }
  return layer;
}

RunConfig resolve_config(const ConfigLayer& file, const ConfigLayer& flags) {
  ConfigLayer merged = file;
  overlay(merged.seed, flags.seed);
  overlay(merged.out_dir, flags.out_dir);
  overlay(merged.format, flags.format);
  overlay(merged.p_threshold, flags.p_threshold);
  overlay(merged.d_select_threshold, flags.d_select_threshold);
  overlay(merged.d_equality_threshold, flags.d_equality_threshold);
  overlay(merged.lambda, flags.lambda);
  overlay(merged.epochs, flags.epochs);
  overlay(merged.test_fraction, flags.test_fraction);
  overlay(merged.threads, flags.threads);
  overlay(merged.timestamp, flags.timestamp);

  RunConfig c;
  c.seed = merged.seed;
  if (merged.out_dir) c.out_dir = *merged.out_dir;
  if (merged.format) {
    if (*merged.format == "json") c.format = Format::Json;
    else if (*merged.format == "table") c.format = Format::Table;
    else if (*merged.format == "both") c.format = Format::Both;
    else throw InputError("format must be json, table or both; got '" + *merged.format + "'");
  }
  if (merged.p_threshold) c.analysis.p_threshold = *merged.p_threshold;
  if (merged.d_select_threshold) c.analysis.d_select_threshold = *merged.d_select_threshold;
  if (merged.d_equality_threshold) c.analysis.d_equality_threshold = *merged.d_equality_threshold;
  c.analysis.validate();
  if (merged.lambda) c.lambda = *merged.lambda;
  if (merged.epochs) c.epochs = *merged.epochs;
  if (merged.test_fraction) c.test_fraction = *merged.test_fraction;
  if (merged.threads) c.threads = *merged.threads;
  if (merged.timestamp) c.timestamp = *merged.timestamp;
  if (!(c.lambda > 0.0)) throw InputError("lambda must be positive");
  if (c.epochs < 1) throw InputError("epochs must be at least 1");
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) throw InputError("test_fraction must lie in (0, 1)");
  return c;
}

Json config_echo(const RunConfig& c) {
  Json j;
  j["p_threshold"] = c.analysis.p_threshold;
  j["d_select_threshold"] = c.analysis.d_select_threshold;
  j["d_equality_threshold"] = c.analysis.d_equality_threshold;
  j["lambda"] = c.lambda;
  j["epochs"] = c.epochs;
  j["test_fraction"] = c.test_fraction;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  return j;
}

Json input_entry(const std::filesystem::path& path) {
  Json j;
  j["path"] = path.generic_string();
  j["sha256"] = sha256_file(path);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open report file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j = Json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw InputError(path.string() + ": not valid JSON");
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path.string());
  out << text;
}

}  // namespace stylo::cli
