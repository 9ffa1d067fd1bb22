#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <optional>

#include "quale/corpus.hpp"
#include "quale/dataset.hpp"
#include "quale/error.hpp"
#include "quale/inference.hpp"
#include "quale/qrkb.hpp"
#include "quale/resources.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json from_py(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

quale::Problem problem_of(const py::dict& d) { return quale::problem_from_json(from_py(d)); }

// Wraps a Python callable (premise, hypothesis) -> float.
class PyScorer final : public quale::EntailmentScorer {
 public:
  explicit PyScorer(py::function f) : f_(std::move(f)) {}
  ~PyScorer() override {
    py::gil_scoped_acquire gil;
    f_ = py::function();
  }
  double score(std::string_view premise, std::string_view hypothesis) const override {
    py::gil_scoped_acquire gil;
    return f_(std::string(premise), std::string(hypothesis)).cast<double>();
  }
  bool concurrency_safe() const override { return false; }

 private:
  py::function f_;
};

// Shipped data plus the scorers that can be named from Python.
class Engine {
 public:
  explicit Engine(std::optional<std::string> data_dir) {
    std::filesystem::path dir = data_dir ? std::filesystem::path(*data_dir) : quale::default_data_dir();
    templates_ = quale::load_templates_file(dir / "templates.txt");
    paraphrases_ = quale::load_templates_file(dir / "oracle_paraphrases.txt",
                                              quale::TemplateTable::Coverage::Partial);
    kb_ = quale::load_qrkb_file(dir / "qrkb_seed.txt");
    chunker_ = std::make_unique<quale::ChunkingExtractor>(quale::load_chunker_file(dir / "np_lexicon.txt"));
  }

  quale::ScorerFactory factory(const py::object& spec, quale::Target target) const {
    if (py::isinstance<py::function>(spec))
      return quale::shared_factory(std::make_shared<PyScorer>(spec.cast<py::function>()));
    auto name = spec.cast<std::string>();
    if (name == "lexical") return quale::shared_factory(quale::lexical_scorer());
    if (name == "gold") {
      if (target == quale::Target::Given)
        return [this](const quale::Problem& p) {
          return quale::gold_given_scorer(p, kb_, templates_, &paraphrases_);
        };
      return [this](const quale::Problem& p) { return quale::gold_claim_scorer(p, templates_, &paraphrases_); };
    }
    throw quale::Error(quale::Errc::InvalidArgument, "unknown scorer '" + name + "' (gold, lexical or a callable)");
  }

  std::vector<std::string> noun_phrases(const py::dict& d) const {
    return quale::extract_noun_phrases(problem_of(d), *chunker_);
  }

  py::list hypotheses(const py::dict& d) const {
    py::list out;
    for (const auto& h : quale::generate_hypothesis_set(problem_of(d), templates_, *chunker_))
      out.append(to_py(quale::hypothesis_to_json(h)));
    return out;
  }

  py::object solve(const py::dict& d, const py::object& given, const py::object& claim) const {
    auto p = problem_of(d);
    auto g = factory(given, quale::Target::Given)(p);
    auto c = factory(claim, quale::Target::Claim)(p);
    return to_py(quale::verdict_to_json(quale::solve(p, templates_, *g, *c, *chunker_)));
  }

  py::list solve_corpus(const std::string& path, const py::object& given, const py::object& claim,
                        unsigned jobs) const {
    auto problems = quale::load_corpus(path);
    auto g = factory(given, quale::Target::Given);
    auto c = factory(claim, quale::Target::Claim);
    std::vector<quale::ProblemOutcome> outcomes;
    {
      py::gil_scoped_release release;
      outcomes = quale::solve_corpus(problems, templates_, g, c, *chunker_, jobs);
    }
    py::list out;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      json rec = {{"id", outcomes[i].id}};
      if (problems[i].gold_answer) rec["gold_answer"] = quale::to_string(*problems[i].gold_answer);
      if (outcomes[i].verdict) {
        rec["answer"] = quale::to_string(outcomes[i].verdict->answer);
        rec["trace"] = quale::verdict_to_json(*outcomes[i].verdict);
      } else {
        rec["error"] = outcomes[i].error;
      }
      out.append(to_py(rec));
    }
    return out;
  }

  py::list pairs(const py::dict& d, const std::string& target) const {
    auto t = quale::parse_target(target);
    if (!t) throw quale::Error(quale::Errc::InvalidArgument, "unknown target '" + target + "'");
    auto p = problem_of(d);
    auto v = *t == quale::Target::Claim ? quale::gen_claim_pairs(p, kb_, templates_, *chunker_)
                                         : quale::gen_given_pairs(p, kb_, templates_, *chunker_);
    py::list out;
    for (const auto& pair : v) out.append(to_py(quale::pair_to_json(pair)));
    return out;
  }

 private:
  quale::TemplateTable templates_;
  quale::TemplateTable paraphrases_;
  quale::Qrkb kb_;
  std::unique_ptr<quale::ChunkingExtractor> chunker_;
};

std::optional<std::string> influence(const quale::Qrkb& kb, const std::string& a, const std::string& b) {
  auto s = kb.influence(quale::Property::from_name(a), quale::Property::from_name(b));
  if (!s) return std::nullopt;
  return std::string(quale::to_string(*s));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generate-validate qualitative question answering";
  py::register_exception<quale::Error>(m, "QualeError", PyExc_ValueError);

  m.def("properties", [] {
    std::vector<std::string> out;
    for (auto p : quale::Property::all()) out.emplace_back(p.name());
    return out;
  });
  m.def("canonical_logical_form",
        [](const std::string& text) { return quale::render_logical_form(quale::parse_logical_form(text)); },
        py::arg("text"));
  m.def("load_corpus", [](const std::string& path) {
    py::list out;
    for (const auto& p : quale::load_corpus(path)) out.append(to_py(quale::problem_to_json(p)));
    return out;
  }, py::arg("path"));
  m.def("default_data_dir", [] { return quale::default_data_dir().string(); });

  py::class_<quale::Qrkb>(m, "Qrkb")
      .def(py::init([](const std::string& text) { return quale::load_qrkb(text); }), py::arg("text"))
      .def_static("from_file", [](const std::string& path) { return quale::load_qrkb_file(path); },
                  py::arg("path"))
      .def("influence", &influence, py::arg("a"), py::arg("b"))
      .def("related", [](const quale::Qrkb& kb, const std::string& a, const std::string& b) {
        return influence(kb, a, b).has_value();
      })
      .def("closure", [](const quale::Qrkb& kb) {
        std::vector<std::tuple<std::string, std::string, std::string>> out;
        for (const auto& r : kb.closure())
          out.emplace_back(quale::to_string(r.sign), r.a.name(), r.b.name());
        return out;
      });

  py::class_<Engine>(m, "Engine")
      .def(py::init<std::optional<std::string>>(), py::arg("data_dir") = py::none())
      .def("noun_phrases", &Engine::noun_phrases, py::arg("problem"))
      .def("hypotheses", &Engine::hypotheses, py::arg("problem"))
      .def("solve", &Engine::solve, py::arg("problem"), py::arg("given") = "gold", py::arg("claim") = "gold")
      .def("solve_corpus", &Engine::solve_corpus, py::arg("path"), py::arg("given") = "gold",
           py::arg("claim") = "gold", py::arg("jobs") = 1)
      .def("pairs", &Engine::pairs, py::arg("problem"), py::arg("target") = "claim");
}
