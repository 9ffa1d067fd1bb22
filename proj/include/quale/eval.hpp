#pragma once

#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "quale/dataset.hpp"
#include "quale/inference.hpp"

namespace quale {

struct Tally {
  std::size_t n_correct = 0;
  std::size_t n_total = 0;
  std::size_t n_ties = 0;
  std::size_t n_errors = 0;

  double accuracy() const {
    return n_total == 0 ? 0.0 : static_cast<double>(n_correct) / static_cast<double>(n_total);
  }
};

// Matches outcomes to problems by id. Errored problems count as incorrect.
// Throws Error(MissingGold) when an outcome has no problem or the problem
// has no gold answer.
Tally tally(std::span<const ProblemOutcome> outcomes, std::span<const Problem> corpus);
double accuracy(std::span<const ProblemOutcome> outcomes, std::span<const Problem> corpus);

struct EvalRow {
  std::string given_scorer;
  std::string claim_scorer;
  std::string split;
  double accuracy = 0;
  std::size_t n_correct = 0;
  std::size_t n_total = 0;
  std::size_t n_ties = 0;
  std::size_t n_errors = 0;
};

struct EvalReport {
  std::vector<EvalRow> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;
  std::string to_table() const;
};

// One row per (given, claim, split), given-major. Failures inside a cell are
// counted in n_errors; the grid always completes.
EvalReport run_grid(std::span<const SplitCorpus> corpus, std::span<const NamedScorer> given,
                    std::span<const NamedScorer> claim, const TemplateTable& templates,
                    const NounPhraseExtractor& extractor, unsigned jobs = 1);

// Published accuracies (%) of the original neural configurations, kept for
// comparison in reports. They need fine-tuned entailment models and are not
// reproduced by the oracle or lexical scorers.
struct ReferenceCell {
  const char* given;
  const char* claim;
  double dev;
  double test;
};
std::span<const ReferenceCell> reference_grid();
struct ReferenceSystem {
  const char* name;
  double test;
};
std::span<const ReferenceSystem> reference_systems();

}  // namespace quale
