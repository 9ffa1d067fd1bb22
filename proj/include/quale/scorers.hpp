#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quale/hypothesis.hpp"
#include "quale/logical_form.hpp"
#include "quale/qrkb.hpp"
#include "quale/templates.hpp"

namespace quale {

struct SentencePair {
  std::string premise;
  std::string hypothesis;
};

// An entailment function: probability in [0, 1] that premise entails hypothesis.
class EntailmentScorer {
 public:
  virtual ~EntailmentScorer() = default;

  virtual double score(std::string_view premise, std::string_view hypothesis) const = 0;
  // Must equal element-wise score(); the default just loops.
  virtual std::vector<double> score_batch(std::span<const SentencePair> pairs) const;
  // Scorers returning false are never called from two threads at once.
  virtual bool concurrency_safe() const { return true; }
};

// Oracle scorers are bound to a problem, so pipelines ask a factory for the
// scorer to use on each problem.
using ScorerFactory = std::function<std::shared_ptr<const EntailmentScorer>(const Problem&)>;

struct NamedScorer {
  std::string name;
  ScorerFactory make;
};

// Wraps one shared scorer instance as a factory.
ScorerFactory shared_factory(std::shared_ptr<const EntailmentScorer> scorer);

// "<question> (option) <option>"
std::string make_qa(std::string_view question, std::string_view option);

struct ScoredHypothesis {
  Hypothesis hypothesis;
  double given_score = 0;
  double claim_a_score = 0;
  double claim_b_score = 0;
};

// given = given(T, h), claimA = claim(QA1, h), claimB = claim(QA2, h) for
// each hypothesis, order preserved. Scorer failures surface as ScorerError
// carrying the hypothesis index.
std::vector<ScoredHypothesis> score_all(const Problem& problem, std::span<const Hypothesis> hyps,
                                        const EntailmentScorer& given,
                                        const EntailmentScorer& claim);

// Surfaces accepted by the oracles as a description of (p, d, literal): all
// templates of the group plus any paraphrases, normalized.
std::vector<std::string> accepted_surfaces(const TemplateTable& templates,
                                           const TemplateTable* paraphrases, Property p,
                                           Direction d, std::string_view literal);

// 1 for (QA1, description of claimA) and (QA2, description of claimB), else 0.
std::shared_ptr<const EntailmentScorer> gold_claim_scorer(const Problem& problem,
                                                          const TemplateTable& templates,
                                                          const TemplateTable* paraphrases = nullptr);

// 1 for (T, description of a setup fact or of anything the knowledge base
// derives from one in the same world), else 0.
std::shared_ptr<const EntailmentScorer> gold_given_scorer(const Problem& problem, const Qrkb& kb,
                                                          const TemplateTable& templates,
                                                          const TemplateTable* paraphrases = nullptr);

// |tokens(premise) & tokens(hypothesis)| / |tokens(hypothesis)| over
// lowercased word tokens with stop words removed. 0 when the hypothesis has
// no content tokens.
std::shared_ptr<const EntailmentScorer> lexical_scorer();
std::span<const std::string_view> lexical_stopwords();

}  // namespace quale
