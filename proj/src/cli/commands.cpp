#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "cli/internal.hpp"
#include "stylo/cli.hpp"
#include "stylo/corpus.hpp"
#include "stylo/error.hpp"
#include "stylo/hashing.hpp"
#include "stylo/lexicon.hpp"

namespace stylo::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config_path;
  ConfigLayer flags;
};

struct ExtractOptions {
  std::string corpus;
  std::string lexicon;
  std::string output;
};

struct AnalyzeOptions {
  std::string csv;
  std::string name;
  std::string output = "analysis";
};

struct CompareOptions {
  std::string report_a;
  std::string report_b;
  std::string output = "comparison";
};

struct TrainOptions {
  std::vector<std::string> csvs;
  std::string task;
  std::string features_from;
  std::string feature_list;
  std::string name;
  std::string output = "model";
};

struct EvaluateOptions {
  std::string model;
  std::string csv;
  bool holdout = false;
  std::string output = "evaluation";
};

struct ReportOptions {
  std::string report;
  std::string output;
};

// "en_demo.features.csv" -> "en_demo"
std::string dataset_name(const fs::path& csv) {
  std::string stem = csv.stem().string();
  constexpr std::string_view suffix = ".features";
  if (stem.size() > suffix.size() && stem.ends_with(suffix)) stem.resize(stem.size() - suffix.size());
  return stem;
}

FeatureMatrix load_named(const std::string& path) {
  FeatureMatrix m = load_feature_csv(path);
  m.corpus_name = dataset_name(path);
  return m;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Writes <out>/<base>.json and/or <out>/<base>.md according to the format.
void emit_report(const RunConfig& cfg, const std::string& base, const Json& report, std::ostream& out) {
  if (cfg.format != Format::Table) {
    const fs::path p = cfg.out_dir / (base + ".json");
    write_text_file(p, dump(report));
    out << "wrote " << p.generic_string() << "\n";
  }
  if (cfg.format != Format::Json) {
    const fs::path p = cfg.out_dir / (base + ".md");
    write_text_file(p, render_table(report));
    out << "wrote " << p.generic_string() << "\n";
  }
}

ClassPair parse_task(const std::string& s) {
  auto p = parse_pair(s);
  if (!p) throw InputError("invalid task '" + s + "'; expected two distinct classes such as R,U");
  return *p;
}

ClassPair canonical(ClassPair p) {
  for (auto c : kCanonicalPairs)
    if (c == p || (c.first == p.second && c.second == p.first)) return c;
  return p;
}

std::vector<FeatureId> parse_feature_list(const std::string& list) {
  std::vector<FeatureId> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto f = find_feature(item);
    if (!f) throw InputError("unknown feature '" + item + "' in --feature-list");
    if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
  }
  if (out.empty()) throw InputError("--feature-list names no features");
  return out;
}

std::vector<FeatureId> features_from_report(const fs::path& path, ClassPair task) {
  const Json j = read_json_file(path);
  const std::string key = to_string(canonical(task));
  const std::string kind = j.value("kind", "");
  const Json* list = nullptr;
  if (kind == "analysis" && j.contains("selected") && j["selected"].contains(key)) list = &j["selected"][key];
  else if (kind == "comparison" && j.contains("universal") && j["universal"].contains(key)) list = &j["universal"][key];
  else if (kind != "analysis" && kind != "comparison")
    throw InputError(path.string() + ": expected an analysis or comparison report");
  if (list == nullptr) throw InputError(path.string() + ": report has no feature list for pair " + key);
  std::vector<FeatureId> out;
  for (const auto& n : *list) {
    auto f = find_feature(n.get<std::string>());
    if (!f) throw InputError(path.string() + ": unknown feature '" + n.get<std::string>() + "'");
    out.push_back(*f);
  }
  return out;
}

void check_columns(const FeatureMatrix& m, std::span<const FeatureId> features, const std::string& what) {
  for (const auto& f : features)
    if (!m.find_column(f.name())) throw InputError(what + " lacks feature column " + f.name());
}

Json class_counts(const FeatureMatrix& m) {
  Json j = Json::object();
  for (auto l : kAllLabels)
    if (m.count(l) > 0) j[std::string(to_string(l))] = m.count(l);
  return j;
}

int cmd_extract(const ExtractOptions& o, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Lexicon lexicon = load_lexicon(o.lexicon);
  const Corpus corpus = load_corpus(o.corpus);
  for (const auto& c : missing_lexicon_categories(lexicon))
    err << "warning: lexicon has no '" << c << "' category; its features read 0\n";
  const FeatureMatrix m = extract_corpus(corpus, lexicon, cfg.threads);
  const fs::path dst =
      o.output.empty() ? cfg.out_dir / (fs::path(o.corpus).stem().string() + ".features.csv") : fs::path(o.output);
  if (dst.has_parent_path()) fs::create_directories(dst.parent_path());
  save_feature_csv(dst, m);
  out << "wrote " << dst.generic_string() << " (" << m.rows.size() << " articles, " << m.feature_ids.size()
      << " features)\n";
  return kOk;
}

int cmd_analyze(const AnalyzeOptions& o, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  FeatureMatrix m = load_named(o.csv);
  if (!o.name.empty()) m.corpus_name = o.name;
  const DatasetAnalysis a = analyze_dataset(m, cfg.analysis);
  for (const auto& w : a.warnings) err << "warning: " << w << "\n";
  Json inputs = Json::array({input_entry(o.csv)});
  emit_report(cfg, o.output, analysis_to_json(a, cfg, inputs), out);
  for (const auto& [pair, list] : a.selected)
    out << "pair " << to_string(pair) << ": " << list.size() << " selected features\n";
  return kOk;
}

int cmd_compare(const CompareOptions& o, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const LoadedAnalysis a = analysis_from_json(read_json_file(o.report_a), o.report_a);
  const LoadedAnalysis b = analysis_from_json(read_json_file(o.report_b), o.report_b);

  std::vector<ClassPair> pairs;
  for (auto p : a.pairs)
    if (std::find(b.pairs.begin(), b.pairs.end(), p) != b.pairs.end()) pairs.push_back(p);

  // Shared selected set: selected for some pair in both reports, in registry order.
  auto selected_any = [](const LoadedAnalysis& x, const FeatureId& f) {
    return std::any_of(x.selected.begin(), x.selected.end(), [&](const auto& kv) {
      return std::find(kv.second.begin(), kv.second.end(), f) != kv.second.end();
    });
  };
  std::vector<FeatureId> shared;
  for (const auto& f : feature_registry())
    if (selected_any(a, f) && selected_any(b, f) && a.ordering.contains(f) && b.ordering.contains(f))
      shared.push_back(f);

  std::vector<std::string> warnings;
  if (pairs.empty()) warnings.push_back("the reports share no class pair");
  if (shared.empty()) warnings.push_back("the reports share no selected feature; agreement is undefined");

  const AgreementReport report = agreement_score(a.ordering, b.ordering, shared, pairs);
  std::map<ClassPair, std::vector<FeatureId>> universal;
  for (auto p : pairs) {
    universal[p] = universal_features(a.selected, b.selected, p);
    if (universal[p].empty()) warnings.push_back("0 universal features for pair " + to_string(p));
  }
  for (const auto& w : warnings) err << "warning: " << w << "\n";

  Json inputs = Json::array({input_entry(o.report_a), input_entry(o.report_b)});
  emit_report(cfg, o.output, comparison_to_json(a, b, report, universal, inputs, warnings), out);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", report.overall);
  out << "overall agreement " << buf << " over " << shared.size() << " shared features\n";
  return kOk;
}

int cmd_train(const TrainOptions& o, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = cfg.require_seed("train");
  const ClassPair task = parse_task(o.task);
  if (!o.features_from.empty() && !o.feature_list.empty())
    throw InputError("use either --features-from or --feature-list, not both");

  Json inputs = Json::array();
  FeatureMatrix all;
  std::string name;
  for (std::size_t i = 0; i < o.csvs.size(); ++i) {
    FeatureMatrix m = load_named(o.csvs[i]);
    inputs.push_back(input_entry(o.csvs[i]));
    name += (i ? "+" : "") + m.corpus_name;
    all = i == 0 ? std::move(m) : concat(all, m, name);
  }
  all.corpus_name = o.name.empty() ? name : o.name;
  const FeatureMatrix task_rows = all.restrict_to(task);

  const MatrixSplit split = split_matrix(task_rows, cfg.test_fraction, seed);
  const FeatureMatrix train_rows = upsample_matrix(split.train, task, seed + 1);

  std::vector<FeatureId> features;
  std::string feature_source;
  if (!o.feature_list.empty()) {
    features = parse_feature_list(o.feature_list);
    feature_source = "list";
  } else if (!o.features_from.empty()) {
    features = features_from_report(o.features_from, task);
    inputs.push_back(input_entry(o.features_from));
    feature_source = o.features_from;
  } else {
    // Select on the training split only, so test rows never inform the feature set.
    const DatasetAnalysis a = analyze_dataset(split.train, cfg.analysis);
    const auto it = a.selected.find(canonical(task));
    if (it != a.selected.end()) features = it->second;
    feature_source = "training-split analysis";
  }
  if (features.empty()) throw InputError("no features to train on for task " + to_string(task));
  check_columns(all, features, "feature CSV");

  Json config = config_echo(cfg);
  config["task"] = to_string(task);
  config["features"] = Json::array();
  for (const auto& f : features) config["features"].push_back(f.name());
  config["inputs"] = inputs;

  Provenance prov{all.corpus_name, sha256_hex(config.dump()), cfg.resolved_timestamp()};
  const SvmHyperparams params{cfg.lambda, cfg.epochs, seed};
  const TrainResult result = train_svm(train_rows.select_features(features), task, params, prov);
  const fs::path model_path = cfg.out_dir / (o.output + ".json");
  if (model_path.has_parent_path()) fs::create_directories(model_path.parent_path());
  save_model(model_path, result.model);
  out << "wrote " << model_path.generic_string() << "\n";

  const EvalReport eval = evaluate(result.model, split.test);
  Json j = eval_to_json(eval, result.model);
  j["dataset"] = all.corpus_name;
  j["feature_source"] = feature_source;
  j["train_counts"] = class_counts(train_rows);
  j["test_counts"] = class_counts(split.test);
  j["final_objective"] = result.epoch_loss.back();
  j["model"] = input_entry(model_path);
  j["config"] = config_echo(cfg);
  j["inputs"] = inputs;
  if (train_rows.count(task.first) != train_rows.count(task.second))
    err << "warning: training classes are not balanced after upsampling\n";
  emit_report(cfg, o.output + ".eval", j, out);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", eval.accuracy);
  out << "accuracy " << buf << " on " << eval.n_test << " test articles with " << features.size()
      << " features (baseline 0.5)\n";
  return kOk;
}

int cmd_evaluate(const EvaluateOptions& o, const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const LinearSvmModel model = load_model(o.model);
  const FeatureMatrix all = load_named(o.csv);
  check_columns(all, model.feature_ids, o.csv);
  FeatureMatrix rows = all.restrict_to(model.task);
  if (o.holdout) rows = split_matrix(rows, cfg.test_fraction, cfg.require_seed("evaluate --holdout")).test;
  const EvalReport eval = evaluate(model, rows);
  Json j = eval_to_json(eval, model);
  j["dataset"] = all.corpus_name;
  j["holdout"] = o.holdout;
  j["config"] = config_echo(cfg);
  j["inputs"] = Json::array({input_entry(o.model), input_entry(o.csv)});
  emit_report(cfg, o.output, j, out);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", eval.accuracy);
  out << "accuracy " << buf << " on " << eval.n_test << " articles\n";
  return kOk;
}

int cmd_report(const ReportOptions& o, std::ostream& out) {
  const std::string table = render_table(read_json_file(o.report));
  if (o.output.empty()) out << table;
  else write_text_file(o.output, table);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stylometric feature extraction, analysis and classification for news corpora", "stylo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", STYLO_VERSION);

  GlobalOptions g;
  auto& f = g.flags;
  app.add_option("--config", g.config_path, "Flat key = value config file");
  app.add_option("--seed", f.seed, "Random seed (required by train and evaluate --holdout)");
  app.add_option("--out", f.out_dir, "Output directory");
  app.add_option("--format", f.format, "Report format: json, table or both")
      ->check(CLI::IsMember({"json", "table", "both"}));
  app.add_option("--p-threshold", f.p_threshold, "Significance threshold");
  app.add_option("--d-select", f.d_select_threshold, "Minimum |d| for selection");
  app.add_option("--d-equal", f.d_equality_threshold, "|d| below which classes are equal");
  app.add_option("--lambda", f.lambda, "SVM regularization");
  app.add_option("--epochs", f.epochs, "SVM training epochs");
  app.add_option("--test-fraction", f.test_fraction, "Held-out fraction per class");
  app.add_option("--threads", f.threads, "Extraction worker threads (0 = all cores)");
  app.add_option("--timestamp", f.timestamp, "Model creation time; 'now' for the wall clock");

  ExtractOptions xo;
  auto* extract = app.add_subcommand("extract", "Extract the 102-feature matrix from a JSONL corpus");
  extract->add_option("corpus", xo.corpus, "Corpus JSONL file")->required();
  extract->add_option("lexicon", xo.lexicon, "Category lexicon (.dic)")->required();
  extract->add_option("-o,--output", xo.output, "CSV path (default <out>/<corpus>.features.csv)");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Pairwise ANOVA and effect sizes; selects features");
  analyze->add_option("features", ao.csv, "Feature CSV")->required();
  analyze->add_option("--name", ao.name, "Dataset name (default: CSV file stem)");
  analyze->add_option("-o,--output", ao.output, "Report base name inside --out");

  CompareOptions co;
  auto* compare = app.add_subcommand("compare", "Agreement and universal features between two analyses");
  compare->add_option("report_a", co.report_a, "First analysis report")->required();
  compare->add_option("report_b", co.report_b, "Second analysis report")->required();
  compare->add_option("-o,--output", co.output, "Report base name inside --out");

  TrainOptions to;
  auto* train = app.add_subcommand("train", "Split, upsample, train a linear SVM and evaluate it");
  train->add_option("features", to.csvs, "Feature CSV(s); several are concatenated")->required();
  train->add_option("--task", to.task, "Class pair, positive class first (e.g. R,U)")->required();
  train->add_option("--features-from", to.features_from, "Analysis or comparison report supplying features");
  train->add_option("--feature-list", to.feature_list, "Comma-separated feature names");
  train->add_option("--name", to.name, "Dataset name recorded in the model");
  train->add_option("-o,--output", to.output, "Model base name inside --out");

  EvaluateOptions eo;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a saved model on a feature CSV");
  evaluate_cmd->add_option("model", eo.model, "Model JSON")->required();
  evaluate_cmd->add_option("features", eo.csv, "Feature CSV")->required();
  evaluate_cmd->add_flag("--holdout", eo.holdout, "Use only the seeded test split of the CSV");
  evaluate_cmd->add_option("-o,--output", eo.output, "Report base name inside --out");

  ReportOptions ro;
  auto* report = app.add_subcommand("report", "Render a report JSON as markdown tables");
  report->add_option("report", ro.report, "Report JSON")->required();
  report->add_option("-o,--output", ro.output, "Write to a file instead of stdout");

  for (auto* sub : {extract, analyze, compare, train, evaluate_cmd, report}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const ConfigLayer file = g.config_path.empty() ? ConfigLayer{} : read_config_file(g.config_path);
    const RunConfig cfg = resolve_config(file, g.flags);
    if (extract->parsed()) return cmd_extract(xo, cfg, out, err);
    if (analyze->parsed()) return cmd_analyze(ao, cfg, out, err);
    if (compare->parsed()) return cmd_compare(co, cfg, out, err);
    if (train->parsed()) return cmd_train(to, cfg, out, err);
    if (evaluate_cmd->parsed()) return cmd_evaluate(eo, cfg, out, err);
    if (report->parsed()) return cmd_report(ro, out);
    return kInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace stylo::cli
