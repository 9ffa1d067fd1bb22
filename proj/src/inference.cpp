#include "quale/inference.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "quale/error.hpp"

namespace quale {

namespace {

// Forwards to an inner scorer under a mutex shared by every unsafe scorer
// of the run.
class SerializedScorer final : public EntailmentScorer {
 public:
  SerializedScorer(std::shared_ptr<const EntailmentScorer> inner, std::shared_ptr<std::mutex> mu)
      : inner_(std::move(inner)), mu_(std::move(mu)) {}

  double score(std::string_view p, std::string_view h) const override {
    std::lock_guard lock(*mu_);
    return inner_->score(p, h);
  }
  std::vector<double> score_batch(std::span<const SentencePair> pairs) const override {
    std::lock_guard lock(*mu_);
    return inner_->score_batch(pairs);
  }

 private:
  std::shared_ptr<const EntailmentScorer> inner_;
  std::shared_ptr<std::mutex> mu_;
};

std::shared_ptr<const EntailmentScorer> guarded(std::shared_ptr<const EntailmentScorer> s,
                                                const std::shared_ptr<std::mutex>& mu) {
  if (!s) throw Error(Errc::InvalidArgument, "scorer factory returned no scorer");
  if (s->concurrency_safe()) return s;
  return std::make_shared<SerializedScorer>(std::move(s), mu);
}

}  // namespace

Verdict decide(std::span<const ScoredHypothesis> scored) {
  if (scored.empty()) throw Error(Errc::InvalidArgument, "decide needs at least one hypothesis");
  std::size_t a = 0, b = 0;
  for (std::size_t i = 1; i < scored.size(); ++i) {
    if (scored[i].claim_a_score > scored[a].claim_a_score) a = i;
    if (scored[i].claim_b_score > scored[b].claim_b_score) b = i;
  }
  Verdict v;
  v.claim_a_star = scored[a];
  v.claim_b_star = scored[b];
  v.claim_a_index = a;
  v.claim_b_index = b;
  v.given_of_a_star = scored[a].given_score;
  v.given_of_b_star = scored[b].given_score;
  v.tie = v.given_of_a_star == v.given_of_b_star;
  v.answer = answer_from_trace(v);
  return v;
}

Answer answer_from_trace(const Verdict& v) {
  return v.given_of_b_star > v.given_of_a_star ? Answer::B : Answer::A;
}

Verdict solve(const Problem& problem, const TemplateTable& templates,
              const EntailmentScorer& given, const EntailmentScorer& claim,
              const NounPhraseExtractor& extractor) {
  auto hyps = generate_hypothesis_set(problem, templates, extractor);
  auto scored = score_all(problem, hyps, given, claim);
  return decide(scored);
}

std::vector<ProblemOutcome> solve_corpus(std::span<const Problem> problems,
                                         const TemplateTable& templates,
                                         const ScorerFactory& given, const ScorerFactory& claim,
                                         const NounPhraseExtractor& extractor, unsigned jobs) {
  std::vector<ProblemOutcome> out(problems.size());
  // One lock for every unsafe scorer: the same instance may serve both roles.
  auto unsafe_mu = std::make_shared<std::mutex>();
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (auto i = next.fetch_add(1); i < problems.size(); i = next.fetch_add(1)) {
      const auto& problem = problems[i];
      auto& slot = out[i];
      slot.id = problem.id;
      try {
        auto g = guarded(given(problem), unsafe_mu);
        auto c = guarded(claim(problem), unsafe_mu);
        slot.verdict = solve(problem, templates, *g, *c, extractor);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(problems.size())));
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  return out;
}

}  // namespace quale
