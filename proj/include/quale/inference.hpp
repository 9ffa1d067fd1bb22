#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quale/noun_phrases.hpp"
#include "quale/scorers.hpp"
#include "quale/templates.hpp"

namespace quale {

struct Verdict {
  Answer answer = Answer::A;
  ScoredHypothesis claim_a_star;
  ScoredHypothesis claim_b_star;
  std::size_t claim_a_index = 0;  // position in the hypothesis set
  std::size_t claim_b_index = 0;
  double given_of_a_star = 0;
  double given_of_b_star = 0;
  bool tie = false;  // given scores exactly equal, resolved to A
};

// Step 3 on already scored hypotheses: claimA* / claimB* are the first
// argmax of claimA / claimB score; answer is A unless given(claimB*) is
// strictly greater than given(claimA*).
Verdict decide(std::span<const ScoredHypothesis> scored);

// Recomputes the answer from a verdict's own trace fields.
Answer answer_from_trace(const Verdict& v);

Verdict solve(const Problem& problem, const TemplateTable& templates,
              const EntailmentScorer& given, const EntailmentScorer& claim,
              const NounPhraseExtractor& extractor);

struct ProblemOutcome {
  std::string id;
  std::optional<Verdict> verdict;
  std::string error;  // set when verdict is empty
};

// Solves each problem independently, `jobs` at a time; output order matches
// input order whatever the job count. A failing problem yields an error
// record instead of aborting the run. Scorers that are not
// concurrency-safe are serialized.
std::vector<ProblemOutcome> solve_corpus(std::span<const Problem> problems,
                                         const TemplateTable& templates,
                                         const ScorerFactory& given, const ScorerFactory& claim,
                                         const NounPhraseExtractor& extractor,
                                         unsigned jobs = 1);

}  // namespace quale
