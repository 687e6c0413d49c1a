#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cli/internal.hpp"
#include "stylo/error.hpp"

namespace stylo::cli {
namespace {

constexpr std::array<FeatureCategory, 4> kCategories{FeatureCategory::Complexity, FeatureCategory::Stylistic,
                                                     FeatureCategory::Linguistic, FeatureCategory::Psychological};

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string title_case(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

ClassPair pair_from(const std::string& s, const std::string& origin) {
  auto p = parse_pair(s);
  if (!p) throw InputError(origin + ": invalid class pair '" + s + "'");
  return *p;
}

FeatureId feature_from(const std::string& s, const std::string& origin) {
  auto f = find_feature(s);
  if (!f) throw InputError(origin + ": unknown feature '" + s + "'");
  return *f;
}

std::string join(const Json& arr, std::string_view sep = ", ") {
  std::string out;
  for (const auto& v : arr) {
    if (!out.empty()) out += sep;
    out += v.get<std::string>();
  }
  return out;
}

// "TXT_FK-RE" -> ("FK-RE", "TXT")
std::pair<std::string, std::string> split_name(const std::string& name) {
  return {name.substr(4), name.substr(0, 3)};
}

std::string render_analysis(const Json& j) {
  std::ostringstream os;
  os << "# Feature analysis: " << j.at("dataset").get<std::string>() << "\n\n";
  const auto& cfg = j.at("config");
  os << "Thresholds: p < " << cfg.at("p_threshold").get<double>() << ", |d| >= "
     << cfg.at("d_select_threshold").get<double>() << " selects; |d| < "
     << cfg.at("d_equality_threshold").get<double>() << " is equality\n\n";
  os << "Classes:";
  for (const auto& [label, n] : j.at("class_counts").items()) os << ' ' << label << '=' << n.get<std::size_t>();
  os << "\n";

  const auto& selected = j.at("selected");
  std::vector<std::string> any_selected;
  for (const auto& [pair, list] : selected.items())
    for (const auto& f : list)
      if (std::find(any_selected.begin(), any_selected.end(), f.get<std::string>()) == any_selected.end())
        any_selected.push_back(f.get<std::string>());

  for (FeatureCategory cat : kCategories) {
    std::vector<std::string> rows;
    for (const auto& id : feature_registry()) {
      if (id.category != cat) continue;
      const auto name = id.name();
      if (std::find(any_selected.begin(), any_selected.end(), name) == any_selected.end()) continue;
      const auto& entry = j.at("ordering").at(name);
      std::string row = "| " + id.abbr + " | " + std::string(to_string(id.scope)) + " | " +
                        entry.at("order").get<std::string>() + " |";
      for (const auto& [pair, list] : selected.items()) {
        const bool hit = std::any_of(list.begin(), list.end(), [&](const Json& f) { return f == name; });
        row += hit ? " x |" : "   |";
      }
      rows.push_back(row);
    }
    os << "\n## " << title_case(to_string(cat)) << "\n\n";
    if (rows.empty()) {
      os << "(no selected features)\n";
      continue;
    }
    os << "| Feature | Where | Order |";
    for (const auto& [pair, list] : selected.items()) os << ' ' << pair << " |";
    os << "\n|---|---|---|";
    for (std::size_t i = 0; i < selected.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& r : rows) os << r << "\n";
  }

  os << "\n## Selected features per pair\n\n";
  for (const auto& [pair, list] : selected.items())
    os << "- " << pair << " (" << list.size() << "): " << (list.empty() ? "none" : join(list)) << "\n";

  std::vector<std::string> no_variance;
  for (const auto& e : j.at("excluded")) {
    const auto f = e.at("feature").get<std::string>();
    if (e.at("reason") == "no variance" && std::find(no_variance.begin(), no_variance.end(), f) == no_variance.end())
      no_variance.push_back(f);
  }
  if (!no_variance.empty()) {
    os << "\nExcluded: no variance: ";
    for (std::size_t i = 0; i < no_variance.size(); ++i) os << (i ? ", " : "") << no_variance[i];
    os << "\n";
  }
  const auto& diag = j.at("diagnostics");
  if (!diag.at("normality_warnings").empty())
    os << "\nNormality diagnostic flagged " << diag.at("normality_warnings").size()
       << " feature/class distributions (|skew| > 2 or |excess kurtosis| > 7); advisory only.\n";
  for (const auto& w : diag.at("warnings")) os << "\nWarning: " << w.get<std::string>() << "\n";
  return os.str();
}

std::string render_comparison(const Json& j) {
  std::ostringstream os;
  const auto& ds = j.at("datasets");
  const auto a = ds.at(0).get<std::string>();
  const auto b = ds.at(1).get<std::string>();
  os << "# Agreement between " << a << " and " << b << "\n\n";
  os << "Overall agreement: " << fixed(j.at("overall").get<double>()) << " (" << j.at("agreements").get<int>()
     << " agreements, " << j.at("disagreements").get<int>() << " disagreements, " << j.at("comparisons").get<int>()
     << " comparisons)\n";
  for (const auto& [pair, v] : j.at("per_pair").items())
    os << "Pair " << pair << " agreement: " << fixed(v.get<double>()) << "\n";

  for (FeatureCategory cat : kCategories) {
    const std::string cname(to_string(cat));
    std::vector<const Json*> rows;
    for (const auto& f : j.at("features"))
      if (f.at("category") == cname) rows.push_back(&f);
    if (rows.empty()) continue;
    os << "\n## " << title_case(cname) << "\n\n";
    os << "| Feature | Where | " << a << " | " << b << " |\n|---|---|---|---|\n";
    for (const Json* f : rows) {
      auto [abbr, scope] = split_name(f->at("feature").get<std::string>());
      os << "| " << abbr << " | " << scope << " | " << f->at("order_a").get<std::string>() << " | "
         << f->at("order_b").get<std::string>() << " |\n";
    }
    const auto& cat_entry = j.at("per_category").at(cname);
    os << "\nOverall agreement: " << fixed(cat_entry.at("overall").get<double>()) << "\n";
    for (const auto& [pair, v] : cat_entry.at("per_pair").items())
      os << "Pair " << pair << " agreement: " << fixed(v.get<double>()) << "\n";
  }

  os << "\n## Universal features\n\n";
  for (const auto& [pair, list] : j.at("universal").items())
    os << "- " << pair << " (" << list.size() << "): " << (list.empty() ? "none" : join(list)) << "\n";
  for (const auto& w : j.at("warnings")) os << "\nWarning: " << w.get<std::string>() << "\n";
  os << "\nNote: " << j.at("convention").get<std::string>() << "\n";
  return os.str();
}

std::string render_evaluation(const Json& j) {
  std::ostringstream os;
  const std::string task = j.at("task").get<std::string>();
  const std::string pos = task.substr(0, 1);
  const std::string neg = task.substr(2, 1);
  os << "# Classification " << pos << " vs " << neg;
  if (j.contains("dataset")) os << ": " << j.at("dataset").get<std::string>();
  os << "\n\n";
  os << "| Features | Test articles | Accuracy | Baseline |\n|---|---|---|---|\n";
  os << "| " << j.at("n_features").get<std::size_t>() << " | " << j.at("n_test").get<std::size_t>() << " | "
     << fixed(100.0 * j.at("accuracy").get<double>(), 1) << "% | " << fixed(100.0 * j.at("baseline").get<double>(), 0)
     << "% |\n\n";
  const auto& c = j.at("confusion");
  os << "| actual \\ predicted | " << pos << " | " << neg << " |\n|---|---|---|\n";
  os << "| " << pos << " | " << c.at(0).at(0).get<std::size_t>() << " | " << c.at(0).at(1).get<std::size_t>() << " |\n";
  os << "| " << neg << " | " << c.at(1).at(0).get<std::size_t>() << " | " << c.at(1).at(1).get<std::size_t>() << " |\n";
  if (j.contains("train_counts")) {
    os << "\nTraining rows after upsampling:";
    for (const auto& [label, n] : j.at("train_counts").items()) os << ' ' << label << '=' << n.get<std::size_t>();
    os << "\n";
  }
  return os.str();
}

}  // namespace

Json analysis_to_json(const DatasetAnalysis& analysis, const RunConfig& config, const Json& inputs) {
  Json j;
  j["kind"] = "analysis";
  j["dataset"] = analysis.dataset_name;
  Json cfg = config_echo(config);
  j["config"] = {{"p_threshold", cfg["p_threshold"]},
                 {"d_select_threshold", cfg["d_select_threshold"]},
                 {"d_equality_threshold", cfg["d_equality_threshold"]}};
  j["inputs"] = inputs;
  Json counts = Json::object();
  for (const auto& [label, n] : analysis.class_counts) counts[std::string(to_string(label))] = n;
  j["class_counts"] = counts;
  Json pairs = Json::array();
  for (auto p : analysis.pairs) pairs.push_back(to_string(p));
  j["pairs"] = pairs;

  Json stats = Json::array();
  for (const auto& s : analysis.stats) {
    Json e;
    e["feature"] = s.feature.name();
    e["category"] = std::string(to_string(s.feature.category));
    e["pair"] = to_string(s.pair);
    e["f_stat"] = std::isfinite(s.f_stat) ? Json(s.f_stat) : Json(nullptr);
    e["p_value"] = s.p_value;
    e["cohens_d"] = std::isfinite(s.cohens_d) ? Json(s.cohens_d) : Json(nullptr);
    e["relation"] = std::string(to_string(s.relation));
    e["degenerate"] = s.degenerate;
    stats.push_back(std::move(e));
  }
  j["stats"] = stats;

  Json selected = Json::object();
  for (const auto& [pair, list] : analysis.selected) {
    Json arr = Json::array();
    for (const auto& f : list) arr.push_back(f.name());
    selected[to_string(pair)] = arr;
  }
  j["selected"] = selected;

  Json excluded = Json::array();
  for (const auto& e : analysis.excluded)
    excluded.push_back({{"feature", e.feature.name()}, {"pair", to_string(e.pair)}, {"reason", e.reason}});
  j["excluded"] = excluded;

  Json ordering = Json::object();
  for (const auto& id : analysis.ordering.features()) {
    Json e;
    for (auto p : analysis.pairs)
      if (auto r = analysis.ordering.relation(id, p)) e[to_string(p)] = std::string(to_string(*r));
    e["order"] = analysis.ordering.order_notation(id);
    ordering[id.name()] = e;
  }
  j["ordering"] = ordering;

  Json normality = Json::array();
  for (const auto& w : analysis.normality_warnings)
    normality.push_back({{"feature", w.feature.name()},
                         {"class", std::string(to_string(w.label))},
                         {"skewness", w.diagnostic.skewness},
                         {"excess_kurtosis", w.diagnostic.excess_kurtosis}});
  j["diagnostics"] = {{"normality_warnings", normality}, {"warnings", analysis.warnings}};
  return j;
}

LoadedAnalysis analysis_from_json(const Json& j, const std::string& origin) {
  if (!j.is_object() || j.value("kind", "") != "analysis") throw InputError(origin + ": not an analysis report");
  try {
    LoadedAnalysis a;
    a.dataset = j.at("dataset").get<std::string>();
    a.ordering = OrderingTable(a.dataset);
    for (const auto& p : j.at("pairs")) a.pairs.push_back(pair_from(p.get<std::string>(), origin));
    for (const auto& [pair, list] : j.at("selected").items()) {
      auto& dst = a.selected[pair_from(pair, origin)];
      for (const auto& f : list) dst.push_back(feature_from(f.get<std::string>(), origin));
    }
    for (const auto& [name, entry] : j.at("ordering").items()) {
      const FeatureId id = feature_from(name, origin);
      bool any_pair = false;
      for (const auto& [key, value] : entry.items()) {
        if (key == "order") continue;
        auto rel = parse_relation(value.get<std::string>());
        if (!rel) throw InputError(origin + ": invalid relation '" + value.get<std::string>() + "'");
        a.ordering.set(id, pair_from(key, origin), *rel);
        any_pair = true;
      }
      if (!any_pair && entry.contains("order")) a.ordering.set_order(id, entry.at("order").get<std::string>());
    }
    return a;
  } catch (const Json::exception& e) {
    throw InputError(origin + ": malformed analysis report (" + e.what() + ")");
  }
}

Json comparison_to_json(const LoadedAnalysis& a, const LoadedAnalysis& b, const AgreementReport& report,
                        const std::map<ClassPair, std::vector<FeatureId>>& universal, const Json& inputs,
                        const std::vector<std::string>& warnings) {
  Json j;
  j["kind"] = "comparison";
  j["datasets"] = {a.dataset, b.dataset};
  j["inputs"] = inputs;
  j["convention"] =
      "+1 when both datasets hold the identical relation for a class pair (ties included), -1 otherwise; a tie "
      "against a strict ordering is a disagreement. Scores are computed over the shared selected features listed "
      "here, so they can differ from figures computed over larger, unpublished feature sets.";
  Json pairs = Json::array();
  for (auto p : report.pairs) pairs.push_back(to_string(p));
  j["pairs"] = pairs;
  j["overall"] = report.overall;
  j["agreements"] = report.agreements;
  j["disagreements"] = report.disagreements;
  j["comparisons"] = report.comparisons();
  Json per_pair = Json::object();
  for (const auto& [p, v] : report.per_pair) per_pair[to_string(p)] = v;
  j["per_pair"] = per_pair;

  Json per_cat = Json::object();
  for (FeatureCategory cat : kCategories) {
    std::vector<FeatureId> subset;
    for (const auto& f : report.compared_features)
      if (f.category == cat) subset.push_back(f);
    if (subset.empty()) continue;
    const auto sub = agreement_score(a.ordering, b.ordering, subset, report.pairs);
    Json e;
    e["overall"] = sub.overall;
    e["comparisons"] = sub.comparisons();
    Json pp = Json::object();
    for (const auto& [p, v] : sub.per_pair) pp[to_string(p)] = v;
    e["per_pair"] = pp;
    per_cat[std::string(to_string(cat))] = e;
  }
  j["per_category"] = per_cat;

  Json features = Json::array();
  for (const auto& f : report.compared_features)
    features.push_back({{"feature", f.name()},
                        {"category", std::string(to_string(f.category))},
                        {"order_a", a.ordering.order_notation(f)},
                        {"order_b", b.ordering.order_notation(f)}});
  j["features"] = features;

  Json uni = Json::object();
  for (const auto& [p, list] : universal) {
    Json arr = Json::array();
    for (const auto& f : list) arr.push_back(f.name());
    uni[to_string(p)] = arr;
  }
  j["universal"] = uni;
  j["warnings"] = warnings;
  return j;
}

Json eval_to_json(const EvalReport& report, const LinearSvmModel& model) {
  Json j;
  j["kind"] = "evaluation";
  j["task"] = to_string(report.task);
  j["n_features"] = model.feature_ids.size();
  Json feats = Json::array();
  for (const auto& f : model.feature_ids) feats.push_back(f.name());
  j["features"] = feats;
  j["n_test"] = report.n_test;
  j["accuracy"] = report.accuracy;
  j["baseline"] = report.baseline;
  j["confusion"] = {{report.confusion[0][0], report.confusion[0][1]}, {report.confusion[1][0], report.confusion[1][1]}};
  j["confusion_layout"] = "rows: actual (positive, negative); columns: predicted (positive, negative)";
  return j;
}

std::string render_table(const Json& report) {
  const std::string kind = report.value("kind", "");
  try {
    if (kind == "analysis") return render_analysis(report);
    if (kind == "comparison") return render_comparison(report);
    if (kind == "evaluation") return render_evaluation(report);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed ") + kind + " report (" + e.what() + ")");
  }
  throw InputError("unknown report kind '" + kind + "'");
}

}  // namespace stylo::cli
