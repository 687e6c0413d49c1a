#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cli/internal.hpp"
#include "stylo/classifier.hpp"
#include "stylo/cli.hpp"
#include "stylo/error.hpp"
#include "stylo/special.hpp"
#include "stylo/stats.hpp"

namespace py = pybind11;
using namespace stylo;

namespace {

Language language(const std::string& tag) {
  auto l = parse_language(tag);
  if (!l) throw InputError("unknown language '" + tag + "'");
  return *l;
}

py::dict matrix_to_dict(const FeatureMatrix& m) {
  std::vector<std::string> ids, labels, names;
  std::vector<std::vector<double>> values;
  for (const auto& f : m.feature_ids) names.push_back(f.name());
  for (const auto& r : m.rows) {
    ids.push_back(r.article_id);
    labels.emplace_back(to_string(r.label));
    values.push_back(r.values);
  }
  py::dict d;
  d["corpus"] = m.corpus_name;
  d["article_ids"] = ids;
  d["labels"] = labels;
  d["features"] = names;
  d["values"] = values;
  return d;
}

OrderingTable ordering_from(const std::map<std::string, std::string>& orders, const std::string& name) {
  OrderingTable t(name);
  for (const auto& [feature, order] : orders) {
    auto f = find_feature(feature);
    if (!f) throw InputError("unknown feature '" + feature + "'");
    t.set_order(*f, order);
  }
  return t;
}

}  // namespace

PYBIND11_MODULE(_stylo, m) {
  m.doc() = "Stylometric feature extraction, statistics and classification";
  m.attr("__version__") = STYLO_VERSION;

  auto base = py::register_exception<Error>(m, "StyloError");
  auto input = py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<ModelFormatError>(m, "ModelFormatError", input.ptr());

  m.def("feature_names", [] {
    std::vector<std::string> out;
    for (const auto& f : feature_registry()) out.push_back(f.name());
    return out;
  }, "All 102 feature column names in registry order.");

  m.def("count_syllables", [](const std::string& word, const std::string& lang) {
    return count_syllables(word, language(lang));
  }, py::arg("word"), py::arg("language") = "en");

  m.def("analyze_text", [](const std::string& text, const std::string& lang) {
    const auto t = analyze(text, language(lang));
    const auto r = readability_indices(t);
    py::dict d;
    d["words"] = t.word_count;
    d["sentences"] = t.sentence_count;
    d["syllables"] = t.syllable_total;
    d["polysyllables"] = t.polysyllable_count;
    d["GI"] = r.gunning_fog;
    d["SMOG"] = r.smog;
    d["FK-RE"] = r.flesch_reading_ease;
    d["FK-GL"] = r.flesch_kincaid_grade;
    return d;
  }, py::arg("text"), py::arg("language") = "en", "Token counts and readability indices of a text.");

  m.def("readability_from_counts", [](double w, double s, double p, double y) {
    const auto r = readability_from_counts(w, s, p, y);
    return std::map<std::string, double>{
        {"GI", r.gunning_fog}, {"SMOG", r.smog}, {"FK-RE", r.flesch_reading_ease}, {"FK-GL", r.flesch_kincaid_grade}};
  }, py::arg("words"), py::arg("sentences"), py::arg("polysyllables"), py::arg("syllables"));

  m.def("match_word", [](const std::filesystem::path& lexicon, const std::string& word) {
    return load_lexicon(lexicon).match_word(word);
  }, py::arg("lexicon"), py::arg("word"));

  m.def("extract", [](const std::filesystem::path& corpus, const std::filesystem::path& lexicon, unsigned threads) {
    return matrix_to_dict(extract_corpus(load_corpus(corpus), load_lexicon(lexicon), threads));
  }, py::arg("corpus"), py::arg("lexicon"), py::arg("threads") = 0,
        "Feature matrix of a JSONL corpus as a dict of lists.");

  m.def("one_way_anova", [](const std::vector<std::vector<double>>& groups) {
    const auto r = one_way_anova(groups);
    return py::make_tuple(r.f_stat, r.p_value);
  }, py::arg("groups"), "(F, p) of a one-way ANOVA.");

  m.def("cohens_d", [](const std::vector<double>& a, const std::vector<double>& b) { return cohens_d(a, b); },
        py::arg("a"), py::arg("b"));

  m.def("incomplete_beta", &special::incomplete_beta, py::arg("x"), py::arg("a"), py::arg("b"));

  m.def("agreement", [](const std::map<std::string, std::string>& a, const std::map<std::string, std::string>& b) {
    const auto ta = ordering_from(a, "a"), tb = ordering_from(b, "b");
    std::vector<FeatureId> shared;
    for (const auto& f : ta.features())
      if (tb.contains(f)) shared.push_back(f);
    const auto r = agreement_score(ta, tb, shared);
    py::dict d;
    d["overall"] = r.overall;
    std::map<std::string, double> pairs;
    for (const auto& [p, v] : r.per_pair) pairs[to_string(p)] = v;
    d["per_pair"] = pairs;
    d["agreements"] = r.agreements;
    d["disagreements"] = r.disagreements;
    return d;
  }, py::arg("orders_a"), py::arg("orders_b"),
        "Agreement between two {feature: 'U > R > S'} mappings over their shared features.");

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs a stylo command line; returns (exit_code, stdout, stderr).");
}
