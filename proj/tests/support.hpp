#pragma once
// Fixture loading shared by the unit and acceptance tests. Paths come from
// QUALE_SOURCE_DIR, defined by the build.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "quale/corpus.hpp"
#include "quale/qrkb.hpp"
#include "quale/resources.hpp"
#include "quale/templates.hpp"

namespace fixtures {

inline std::string source_path(const std::string& rel) { return std::string(QUALE_SOURCE_DIR) + "/" + rel; }
inline std::string data_path(const std::string& name) { return source_path("data/" + name); }
inline std::string test_data_path(const std::string& name) { return source_path("tests/data/" + name); }

inline const quale::TemplateTable& templates() {
  static const auto t = quale::load_templates_file(data_path("templates.txt"));
  return t;
}

inline const quale::TemplateTable& paraphrases() {
  static const auto t = quale::load_templates_file(data_path("oracle_paraphrases.txt"),
                                                   quale::TemplateTable::Coverage::Partial);
  return t;
}

inline const quale::Qrkb& seed_kb() {
  static const auto kb = quale::load_qrkb_file(data_path("qrkb_seed.txt"));
  return kb;
}

inline const quale::ChunkingExtractor& chunker() {
  static const auto c = quale::load_chunker_file(data_path("np_lexicon.txt"));
  return c;
}

inline const std::vector<quale::Problem>& examples() {
  static const auto v = quale::load_corpus(test_data_path("quarel_examples.jsonl"));
  return v;
}

inline const std::vector<quale::Problem>& mini_corpus() {
  static const auto v = quale::load_corpus(data_path("mini_corpus.jsonl"));
  return v;
}

inline const quale::Problem& example(const std::string& id) {
  const auto& v = examples();
  auto it = std::find_if(v.begin(), v.end(), [&](const quale::Problem& p) { return p.id == id; });
  if (it == v.end()) throw std::runtime_error("no fixture problem " + id);
  return *it;
}

// The two worked problems and the thick-hair error case.
inline const quale::Problem& problem_1() { return example("quarel-I"); }
inline const quale::Problem& problem_2() { return example("quarel-II"); }
inline const quale::Problem& nell_lynn() { return example("error-I"); }

}  // namespace fixtures
