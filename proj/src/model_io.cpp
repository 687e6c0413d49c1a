#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stylo/classifier.hpp"
#include "stylo/error.hpp"
#include "stylo/hashing.hpp"

namespace stylo {
namespace {

using nlohmann::json;

json feature_names(std::span<const FeatureId> ids) {
  json arr = json::array();
  for (const auto& id : ids) arr.push_back(id.name());
  return arr;
}

std::vector<FeatureId> parse_feature_names(const json& arr) {
  std::vector<FeatureId> ids;
  for (const auto& name : arr) {
    auto id = find_feature(name.get<std::string>());
    if (!id) throw ModelFormatError("model references unknown feature '" + name.get<std::string>() + "'");
    ids.push_back(*id);
  }
  return ids;
}

json payload(const LinearSvmModel& m) {
  json j;
  j["version"] = kModelSchemaVersion;
  j["task"] = {std::string(to_string(m.task.first)), std::string(to_string(m.task.second))};
  j["feature_ids"] = feature_names(m.feature_ids);
  j["means"] = m.standardizer.means;
  j["stds"] = m.standardizer.stds;
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["lambda"] = m.hyperparams.lambda;
  j["epochs"] = m.hyperparams.epochs;
  j["seed"] = m.hyperparams.seed;
  j["provenance"] = {{"corpus_name", m.provenance.corpus_name},
                     {"config_hash", m.provenance.config_hash},
                     {"created", m.provenance.created}};
  return j;
}

// The checksum covers the compact, key-sorted dump of every field but itself.
std::string checksum_of(const json& body) { return sha256_hex(body.dump()); }

}  // namespace

std::string model_to_json(const LinearSvmModel& model) {
  json j = payload(model);
  j["checksum"] = checksum_of(j);
  return j.dump(2) + "\n";
}

LinearSvmModel model_from_json(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ModelFormatError("model file is truncated or corrupted: checksum cannot be verified");
  try {
    if (!j.contains("version") || !j["version"].is_number_integer())
      throw ModelFormatError("model file has no schema version");
    const int version = j["version"].get<int>();
    if (version != kModelSchemaVersion)
      throw ModelFormatError("unsupported model schema version " + std::to_string(version) + " (expected " +
                             std::to_string(kModelSchemaVersion) + ")");
    if (!j.contains("checksum")) throw ModelFormatError("model file has no checksum");
    const std::string stored = j["checksum"].get<std::string>();
    json body = j;
    body.erase("checksum");
    if (checksum_of(body) != stored) throw ModelFormatError("model checksum mismatch: file is corrupted");

    LinearSvmModel m;
    const auto& task = j.at("task");
    auto first = parse_label(task.at(0).get<std::string>());
    auto second = parse_label(task.at(1).get<std::string>());
    if (!first || !second || *first == *second) throw ModelFormatError("model has an invalid task");
    m.task = {*first, *second};
    m.feature_ids = parse_feature_names(j.at("feature_ids"));
    m.standardizer.feature_ids = m.feature_ids;
    m.standardizer.means = j.at("means").get<std::vector<double>>();
    m.standardizer.stds = j.at("stds").get<std::vector<double>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.hyperparams.lambda = j.at("lambda").get<double>();
    m.hyperparams.epochs = j.at("epochs").get<int>();
    m.hyperparams.seed = j.at("seed").get<std::uint64_t>();
    const auto& prov = j.at("provenance");
    m.provenance.corpus_name = prov.at("corpus_name").get<std::string>();
    m.provenance.config_hash = prov.at("config_hash").get<std::string>();
    m.provenance.created = prov.at("created").get<std::string>();
    const auto d = m.feature_ids.size();
    if (m.weights.size() != d || m.standardizer.means.size() != d || m.standardizer.stds.size() != d)
      throw ModelFormatError("model arrays disagree with the feature list length");
    return m;
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const LinearSvmModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write model file: " + path.string());
  out << model_to_json(model);
}

LinearSvmModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return model_from_json(buf.str());
  } catch (const ModelFormatError& e) {
    throw ModelFormatError(path.string() + ": " + e.what());
  }
}

}  // namespace stylo
