#include "quale/scorers.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "quale/error.hpp"
#include "quale/text.hpp"

namespace quale {

namespace {

constexpr std::string_view kStopwords[] = {
    "a",     "an",    "the",   "this",  "that",  "these", "those", "some",  "any",   "each",
    "every", "i",     "me",    "you",   "he",    "him",   "she",   "it",    "we",    "us",
    "they",  "them",  "his",   "her",   "its",   "their", "our",   "my",    "your",  "is",
    "are",   "was",   "were",  "be",    "been",  "being", "am",    "do",    "does",  "did",
    "have",  "has",   "had",   "will",  "would", "shall", "should", "can",  "could", "may",
    "might", "must",  "of",    "in",    "on",    "at",    "to",    "from",  "by",    "with",
    "for",   "into",  "onto",  "over",  "under", "through", "about", "as",  "and",   "or",
    "but",   "nor",   "so",    "then",  "than",  "if",    "when",  "while", "because", "which",
    "what",  "who",   "whom",  "whose", "where", "why",   "how",   "there", "here",  "also",
    "just",  "very",  "quite", "option", "s"};

class GoldClaimScorer final : public EntailmentScorer {
 public:
  GoldClaimScorer(std::string qa1, std::vector<std::string> accept_a, std::string qa2,
                  std::vector<std::string> accept_b)
      : qa1_(std::move(qa1)),
        qa2_(std::move(qa2)),
        accept_a_(accept_a.begin(), accept_a.end()),
        accept_b_(accept_b.begin(), accept_b.end()) {}

  double score(std::string_view premise, std::string_view hypothesis) const override {
    auto p = text::normalize(premise);
    auto h = text::normalize(hypothesis);
    // QA1 and QA2 can only coincide when the options are equal; then both
    // accept sets apply.
    bool hit = (p == qa1_ && accept_a_.contains(h)) || (p == qa2_ && accept_b_.contains(h));
    return hit ? 1.0 : 0.0;
  }

 private:
  std::string qa1_, qa2_;
  std::unordered_set<std::string> accept_a_, accept_b_;
};

class GoldGivenScorer final : public EntailmentScorer {
 public:
  GoldGivenScorer(std::string premise, std::unordered_set<std::string> accept)
      : premise_(std::move(premise)), accept_(std::move(accept)) {}

  double score(std::string_view premise, std::string_view hypothesis) const override {
    if (text::normalize(premise) != premise_) return 0.0;
    return accept_.contains(text::normalize(hypothesis)) ? 1.0 : 0.0;
  }

 private:
  std::string premise_;
  std::unordered_set<std::string> accept_;
};

class LexicalScorer final : public EntailmentScorer {
 public:
  double score(std::string_view premise, std::string_view hypothesis) const override {
    auto hyp = content_tokens(hypothesis);
    if (hyp.empty()) return 0.0;
    auto prem = content_tokens(premise);
    auto shared = std::count_if(hyp.begin(), hyp.end(),
                                [&](const std::string& t) { return prem.contains(t); });
    return static_cast<double>(shared) / static_cast<double>(hyp.size());
  }

 private:
  static std::unordered_set<std::string> content_tokens(std::string_view s) {
    std::unordered_set<std::string> out;
    for (auto& t : text::word_tokens(s))
      if (std::find(std::begin(kStopwords), std::end(kStopwords), t) == std::end(kStopwords))
        out.insert(std::move(t));
    return out;
  }
};

void check_scores(const std::vector<double>& scores, std::size_t expected, std::string_view what) {
  if (scores.size() != expected)
    throw ScorerError(Errc::ProtocolError, std::min(scores.size(), expected),
                      std::string(what) + " scorer returned " + std::to_string(scores.size()) +
                          " scores for " + std::to_string(expected) + " pairs");
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (!std::isfinite(scores[i]) || scores[i] < 0.0 || scores[i] > 1.0)
      throw ScorerError(Errc::InvalidScore, i,
                        std::string(what) + " score " + std::to_string(scores[i]) +
                            " outside [0, 1]");
}

std::vector<double> run_batch(const EntailmentScorer& scorer, std::span<const SentencePair> pairs,
                              std::string_view what) {
  std::vector<double> scores;
  try {
    scores = scorer.score_batch(pairs);
  } catch (const ScorerError& e) {
    throw ScorerError(e.code(), e.index(), std::string(what) + " scorer: " + e.message());
  } catch (const Error& e) {
    throw ScorerError(e.code(), 0, std::string(what) + " scorer: " + e.message());
  }
  check_scores(scores, pairs.size(), what);
  return scores;
}

}  // namespace

std::vector<double> EntailmentScorer::score_batch(std::span<const SentencePair> pairs) const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(score(p.premise, p.hypothesis));
  return out;
}

ScorerFactory shared_factory(std::shared_ptr<const EntailmentScorer> scorer) {
  return [scorer = std::move(scorer)](const Problem&) { return scorer; };
}

std::string make_qa(std::string_view question, std::string_view option) {
  if (text::trim(question).empty() || text::trim(option).empty())
    throw Error(Errc::InvalidArgument, "make_qa needs a non-empty question and option");
  std::string out(text::trim(question));
  out += " (option) ";
  out += text::trim(option);
  return out;
}

std::vector<ScoredHypothesis> score_all(const Problem& problem, std::span<const Hypothesis> hyps,
                                        const EntailmentScorer& given,
                                        const EntailmentScorer& claim) {
  if (hyps.empty()) throw Error(Errc::InvalidArgument, "score_all needs at least one hypothesis");
  auto qa1 = make_qa(problem.question, problem.option_a);
  auto qa2 = make_qa(problem.question, problem.option_b);

  std::vector<SentencePair> given_pairs, a_pairs, b_pairs;
  given_pairs.reserve(hyps.size());
  a_pairs.reserve(hyps.size());
  b_pairs.reserve(hyps.size());
  for (const auto& h : hyps) {
    given_pairs.push_back({problem.text, h.surface});
    a_pairs.push_back({qa1, h.surface});
    b_pairs.push_back({qa2, h.surface});
  }
  auto g = run_batch(given, given_pairs, "given");
  auto a = run_batch(claim, a_pairs, "claimA");
  auto b = run_batch(claim, b_pairs, "claimB");

  std::vector<ScoredHypothesis> out;
  out.reserve(hyps.size());
  for (std::size_t i = 0; i < hyps.size(); ++i) out.push_back({hyps[i], g[i], a[i], b[i]});
  return out;
}

std::vector<std::string> accepted_surfaces(const TemplateTable& templates,
                                           const TemplateTable* paraphrases, Property p,
                                           Direction d, std::string_view literal) {
  auto out = templates.instantiate_all(p, d, literal);
  if (paraphrases) {
    auto extra = paraphrases->instantiate_all(p, d, literal);
    out.insert(out.end(), extra.begin(), extra.end());
  }
  return out;
}

std::shared_ptr<const EntailmentScorer> gold_claim_scorer(const Problem& problem,
                                                          const TemplateTable& templates,
                                                          const TemplateTable* paraphrases) {
  auto describe = [&](const QPred& c) {
    return accepted_surfaces(templates, paraphrases, c.property, c.direction,
                             literal_of(problem, c.world));
  };
  return std::make_shared<GoldClaimScorer>(
      text::normalize(make_qa(problem.question, problem.option_a)), describe(problem.form.claim_a),
      text::normalize(make_qa(problem.question, problem.option_b)), describe(problem.form.claim_b));
}

std::shared_ptr<const EntailmentScorer> gold_given_scorer(const Problem& problem, const Qrkb& kb,
                                                          const TemplateTable& templates,
                                                          const TemplateTable* paraphrases) {
  std::unordered_set<std::string> accept;
  for (const auto& fact : problem.form.setup) {
    for (auto target : Property::all()) {
      auto derived = entail_fact(kb, fact, target);
      if (!derived) continue;
      for (auto& s : accepted_surfaces(templates, paraphrases, derived->property,
                                       derived->direction, literal_of(problem, derived->world)))
        accept.insert(std::move(s));
    }
  }
  return std::make_shared<GoldGivenScorer>(text::normalize(problem.text), std::move(accept));
}

std::shared_ptr<const EntailmentScorer> lexical_scorer() {
  return std::make_shared<LexicalScorer>();
}

std::span<const std::string_view> lexical_stopwords() { return kStopwords; }

}  // namespace quale
