#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "quale/error.hpp"
#include "quale/inference.hpp"
#include "support.hpp"

using namespace quale;

namespace {

class ConstantScorer final : public EntailmentScorer {
 public:
  explicit ConstantScorer(double v) : v_(v) {}
  double score(std::string_view, std::string_view) const override { return v_; }

 private:
  double v_;
};

// Detects overlapping calls; declares itself unsafe for concurrent use.
class ExclusiveScorer final : public EntailmentScorer {
 public:
  double score(std::string_view, std::string_view) const override { return 0.5; }
  std::vector<double> score_batch(std::span<const SentencePair> pairs) const override {
    if (busy_.exchange(true)) overlapped_ = true;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    busy_ = false;
    return std::vector<double>(pairs.size(), 0.5);
  }
  bool concurrency_safe() const override { return false; }
  bool overlapped() const { return overlapped_; }

 private:
  mutable std::atomic<bool> busy_{false};
  mutable std::atomic<bool> overlapped_{false};
};

ScorerFactory gold_given() {
  return [](const Problem& p) {
    return gold_given_scorer(p, fixtures::seed_kb(), fixtures::templates(), &fixtures::paraphrases());
  };
}

ScorerFactory gold_claim() {
  return [](const Problem& p) { return gold_claim_scorer(p, fixtures::templates(), &fixtures::paraphrases()); };
}

Verdict gold_solve(const Problem& p) {
  return solve(p, fixtures::templates(), *gold_given()(p), *gold_claim()(p), fixtures::chunker());
}

ScoredHypothesis sh(double g, double a, double b, const char* surface = "x") {
  ScoredHypothesis s;
  s.hypothesis.surface = surface;
  s.given_score = g;
  s.claim_a_score = a;
  s.claim_b_score = b;
  return s;
}

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("worked problem with two same-world claims resolves to A") {
  auto v = gold_solve(fixtures::problem_2());
  CHECK(v.answer == Answer::A);
  CHECK_FALSE(v.tie);
  CHECK(v.claim_a_star.hypothesis.surface == "more heat is generated on carpet");
  // The table's "less heat is generated on carpet" is a paraphrase; the
  // hypothesis set only holds the tabulated heat/low template.
  CHECK(v.claim_b_star.hypothesis.property == Property::from_name("heat"));
  CHECK(v.claim_b_star.hypothesis.direction == Direction::Low);
  CHECK(v.claim_b_star.hypothesis.noun_phrase == "carpet");
  CHECK(v.claim_b_star.hypothesis.surface == "small amount of heat is generated on carpet");
  CHECK(v.given_of_a_star == 1.0);
  CHECK(v.given_of_b_star == 0.0);
}

TEST_CASE("two-fact problem with cross-world claims resolves to B") {
  auto v = gold_solve(fixtures::problem_1());
  CHECK(v.answer == Answer::B);
  CHECK(v.claim_a_star.hypothesis.surface == "windy sky has less friction");
  CHECK(v.claim_b_star.hypothesis.surface == "calm sky has less friction");
  CHECK(v.given_of_a_star == 0.0);
  CHECK(v.given_of_b_star == 1.0);
}

TEST_CASE("hair thickness example picks the strength claims") {
  auto v = gold_solve(fixtures::nell_lynn());
  CHECK(v.claim_a_star.hypothesis.property == Property::from_name("strength"));
  CHECK(v.claim_a_star.hypothesis.direction == Direction::High);
  CHECK(v.claim_a_star.hypothesis.noun_phrase == "nell");
  CHECK(v.claim_b_star.hypothesis.property == Property::from_name("strength"));
  CHECK(v.claim_b_star.hypothesis.direction == Direction::High);
  CHECK(v.claim_b_star.hypothesis.noun_phrase == "lynn 's hair");
  CHECK(v.claim_b_star.hypothesis.surface == "lynn 's hair has more strength");
  CHECK(v.answer == Answer::A);
}

TEST_CASE("constant scores tie toward A and the first hypothesis") {
  ConstantScorer c(0.3);
  auto v = solve(fixtures::problem_2(), fixtures::templates(), c, c, fixtures::chunker());
  CHECK(v.answer == Answer::A);
  CHECK(v.tie);
  CHECK(v.claim_a_index == 0);
  CHECK(v.claim_b_index == 0);
}

TEST_CASE("decide: first-occurrence argmax and strict comparison") {
  std::vector<ScoredHypothesis> s{sh(0.1, 0.2, 0.9, "h0"), sh(0.7, 0.8, 0.1, "h1"), sh(0.9, 0.8, 0.9, "h2"),
                                  sh(0.2, 0.1, 0.3, "h3")};
  auto v = decide(s);
  CHECK(v.claim_a_index == 1);
  CHECK(v.claim_b_index == 0);
  CHECK(v.given_of_a_star == 0.7);
  CHECK(v.given_of_b_star == 0.1);
  CHECK(v.answer == Answer::A);
  CHECK_FALSE(v.tie);

  s[0].given_score = 0.75;
  v = decide(s);
  CHECK(v.answer == Answer::B);

  s[0].given_score = 0.7;
  v = decide(s);
  CHECK(v.answer == Answer::A);
  CHECK(v.tie);
  CHECK_THROWS_AS(decide(std::span<const ScoredHypothesis>{}), Error);
}

TEST_CASE("the answer is a pure function of the trace") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    std::vector<ScoredHypothesis> s;
    for (int k = 0; k < 12; ++k) s.push_back(sh(u(rng), u(rng), u(rng)));
    auto v = decide(s);
    CHECK(answer_from_trace(v) == v.answer);
    CHECK(v.given_of_a_star == s[v.claim_a_index].given_score);
    CHECK(v.given_of_b_star == s[v.claim_b_index].given_score);
  }
}

TEST_CASE("strictly increasing transforms leave verdicts unchanged") {
  std::mt19937_64 rng(99);
  // Coarse score grid so ties actually occur.
  auto draw = [&] { return static_cast<double>(rng() % 6) / 5.0; };
  for (int i = 0; i < 100; ++i) {
    std::vector<ScoredHypothesis> s;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int k = 0; k < n; ++k) s.push_back(sh(draw(), draw(), draw()));
    const double a = 0.1 + static_cast<double>(rng() % 100) / 10.0;
    const double b = static_cast<double>(rng() % 100) / 100.0 - 0.5;
    const int kind = static_cast<int>(rng() % 3);
    auto f = [&](double x) {
      switch (kind) {
        case 0: return a * x + b;
        case 1: return std::exp(a * x) + b;
        default: return a * x * x * x + x + b;
      }
    };
    auto t = s;
    for (auto& x : t) {
      x.given_score = f(x.given_score);
      x.claim_a_score = f(x.claim_a_score);
      x.claim_b_score = f(x.claim_b_score);
    }
    auto v = decide(s);
    auto w = decide(t);
    CAPTURE(i);
    CHECK(v.claim_a_index == w.claim_a_index);
    CHECK(v.claim_b_index == w.claim_b_index);
    CHECK(v.answer == w.answer);
    CHECK(v.tie == w.tie);
  }
}

TEST_CASE("solve_corpus edge cases") {
  std::vector<Problem> none;
  CHECK(solve_corpus(none, fixtures::templates(), gold_given(), gold_claim(), fixtures::chunker()).empty());
  std::vector<Problem> one{fixtures::problem_2()};
  auto out = solve_corpus(one, fixtures::templates(), gold_given(), gold_claim(), fixtures::chunker());
  REQUIRE(out.size() == 1);
  CHECK(out[0].id == "quarel-II");
  REQUIRE(out[0].verdict);
  CHECK(out[0].verdict->answer == Answer::A);
}

TEST_CASE("mini-corpus with oracle scorers, any job count") {
  const auto& corpus = fixtures::mini_corpus();
  auto seq = solve_corpus(corpus, fixtures::templates(), gold_given(), gold_claim(), fixtures::chunker(), 1);
  auto par = solve_corpus(corpus, fixtures::templates(), gold_given(), gold_claim(), fixtures::chunker(), 4);
  REQUIRE(seq.size() == corpus.size());
  REQUIRE(par.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(corpus[i].id);
    REQUIRE(seq[i].verdict);
    CHECK(seq[i].id == corpus[i].id);
    CHECK(par[i].id == corpus[i].id);
    CHECK(seq[i].verdict->answer == *corpus[i].gold_answer);
    CHECK_FALSE(seq[i].verdict->tie);
    CHECK(seq[i].verdict->claim_a_star.claim_a_score == 1.0);
    CHECK(seq[i].verdict->claim_b_star.claim_b_score == 1.0);
    REQUIRE(par[i].verdict);
    CHECK(par[i].verdict->answer == seq[i].verdict->answer);
    CHECK(par[i].verdict->claim_a_index == seq[i].verdict->claim_a_index);
    CHECK(par[i].verdict->claim_b_index == seq[i].verdict->claim_b_index);
  }
}

TEST_CASE("a failing problem is recorded, the rest still solve") {
  std::vector<Problem> corpus{fixtures::problem_1(), fixtures::problem_2()};
  corpus[0].noun_phrases = std::vector<std::string>{};
  auto out = solve_corpus(corpus, fixtures::templates(), gold_given(), gold_claim(), fixtures::chunker(), 2);
  REQUIRE(out.size() == 2);
  CHECK_FALSE(out[0].verdict);
  CHECK(out[0].error.find("EmptyNounPhraseSet") != std::string::npos);
  REQUIRE(out[1].verdict);
  CHECK(out[1].verdict->answer == Answer::A);
}

TEST_CASE("scorers that are not concurrency-safe are never called concurrently") {
  auto exclusive = std::make_shared<ExclusiveScorer>();
  auto corpus = fixtures::mini_corpus();
  auto out = solve_corpus(corpus, fixtures::templates(), shared_factory(exclusive), shared_factory(exclusive),
                          fixtures::chunker(), 8);
  CHECK(out.size() == corpus.size());
  CHECK_FALSE(exclusive->overlapped());
}

}  // TEST_SUITE
