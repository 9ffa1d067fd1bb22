// Acceptance suite: one PASS/FAIL line per primary criterion. Exit status is
// the number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/path_sign_oracle.hpp"
#include "oracles/rule_oracle.hpp"
#include "quale/dataset.hpp"
#include "quale/error.hpp"
#include "quale/eval.hpp"
#include "quale/hypothesis.hpp"
#include "quale/inference.hpp"
#include "quale/qrkb.hpp"
#include "support.hpp"

using namespace quale;

namespace {

// Collects failed expectations for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Property P(const char* name) { return Property::from_name(name); }

ScorerFactory gold_given() {
  return [](const Problem& p) {
    return gold_given_scorer(p, fixtures::seed_kb(), fixtures::templates(), &fixtures::paraphrases());
  };
}

ScorerFactory gold_claim() {
  return [](const Problem& p) { return gold_claim_scorer(p, fixtures::templates(), &fixtures::paraphrases()); };
}

void template_fidelity(Check& c) {
  const auto& t = fixtures::templates();
  std::ifstream in(fixtures::test_data_path("template_table.golden"));
  std::vector<std::string> golden;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') golden.push_back(line);
  c.expect(golden.size() == 46, "golden file has 46 rows");
  c.expect(t.size() == 46, "template file has 46 templates");
  for (std::size_t i = 0; i < std::min(golden.size(), t.size()); ++i) {
    const auto& tpl = t.all()[i];
    const auto& row = golden[i];
    auto a = row.find('|');
    auto b = row.find('|', a + 1);
    bool same = tpl.property == P(row.substr(0, a).c_str()) &&
                to_string(tpl.direction) == row.substr(a + 1, b - a - 1) && tpl.pattern == row.substr(b + 1);
    c.expect(same, "row " + std::to_string(i) + ": " + row);
  }
  for (auto p : Property::all())
    for (auto d : kDirections) {
      std::size_t want = p == P("speed") ? 2 : p == P("distance") ? 4 : 1;
      c.expect(t.templates_for(p, d).size() == want, "group size of " + std::string(p.name()));
    }
  c.note = "46 templates match the golden table; group sizes 1/2/4";
}

void hypothesis_set_size(Check& c) {
  auto t0 = Clock::now();
  auto h = generate_hypothesis_set(fixtures::problem_2(), fixtures::templates(), fixtures::chunker());
  double secs = seconds_since(t0);
  c.expect(h.size() == 460, "460 hypotheses, got " + std::to_string(h.size()));
  std::vector<std::string> slice;
  for (const auto& x : h)
    if (x.property == P("friction") && x.direction == Direction::High) slice.push_back(x.surface);
  const std::vector<std::string> want{
      "heat has more friction",   "trial and error has more friction", "claws has more friction",
      "kitten has more friction", "carpet has more friction",          "skin has more friction",
      "tank kitten has more friction", "error has more friction",      "tank has more friction",
      "trial has more friction"};
  c.expect(slice == want, "friction/high slice");
  c.expect(secs < 1.0, "runtime under 1s");
  std::ostringstream note;
  note << h.size() << " hypotheses in " << secs * 1000 << " ms";
  c.note = note.str();
}

void bad_set_reproduction(Check& c) {
  auto bad = bad_set(fixtures::problem_2(), fixtures::chunker());
  const std::vector<std::string> want{"heat", "trial and error", "claws", "kitten", "tank kitten",
                                      "error", "tank", "trial"};
  c.expect(bad.phrases == want, "8-element bad set");
  c.note = std::to_string(bad.phrases.size()) + " phrases";
}

std::vector<oracle::OraclePair> as_oracle(const std::vector<EntailmentPair>& pairs) {
  std::vector<oracle::OraclePair> out;
  for (const auto& p : pairs) out.push_back({p.premise, p.hypothesis, p.label == Label::Entail ? 1 : 0, p.rule_id});
  return out;
}

void rule_oracle_equivalence(Check& c) {
  oracle::RuleOracle o(fixtures::data_path("templates.txt"), fixtures::data_path("qrkb_seed.txt"));
  std::size_t compared = 0;
  for (const auto& p : {fixtures::problem_1(), fixtures::problem_2()}) {
    auto phrases = extract_noun_phrases(p, fixtures::chunker());
    auto claim = gen_claim_pairs(p, fixtures::seed_kb(), fixtures::templates(), fixtures::chunker());
    auto given = gen_given_pairs(p, fixtures::seed_kb(), fixtures::templates(), fixtures::chunker());
    c.expect(as_oracle(claim) == o.claim_pairs(p, phrases), p.id + " claim pairs");
    c.expect(as_oracle(given) == o.given_pairs(p, phrases), p.id + " given pairs");
    compared += claim.size() + given.size();
  }
  auto claim = gen_claim_pairs(fixtures::problem_2(), fixtures::seed_kb(), fixtures::templates(), fixtures::chunker());
  auto pos = std::count_if(claim.begin(), claim.end(), [](const auto& p) { return p.label == Label::Entail; });
  auto neg = static_cast<std::ptrdiff_t>(claim.size()) - pos;
  c.expect(pos == 2 && neg == 90, "2 positives and 90 negatives");
  auto balanced = balance(claim, 1729);
  c.expect(balanced.size() == 180, "180 pairs after balancing");
  std::ostringstream note;
  note << compared << " pairs identical to the enumerator; " << pos << "+" << neg << " -> " << balanced.size();
  c.note = note.str();
}

void table2_conformance(Check& c) {
  const auto& p = fixtures::problem_2();
  auto given = gold_given()(p);
  auto claim = gold_claim()(p);
  auto qa1 = make_qa(p.question, p.option_a);
  auto qa2 = make_qa(p.question, p.option_b);
  struct Row {
    const EntailmentScorer* scorer;
    std::string premise;
    const char* hypothesis;
    double want;
  };
  const std::vector<Row> rows{
      {given.get(), p.text, "Carpet is less smooth.", 1},
      {given.get(), p.text, "Skin is less smooth.", 0},
      {given.get(), p.text, "Carpet is more smooth.", 0},
      {claim.get(), qa1, "Carpet is less smooth.", 0},
      {claim.get(), qa1, "more heat is generated on carpet", 1},
      {claim.get(), qa1, "less heat is generated on carpet", 0},
      {claim.get(), qa2, "more heat is generated on carpet", 0},
      {claim.get(), qa2, "less heat is generated on carpet", 1},
      {claim.get(), qa2, "less heat is generated on skin", 0},
  };
  int ok = 0;
  for (const auto& r : rows) {
    bool match = r.scorer->score(r.premise, r.hypothesis) == r.want;
    ok += match;
    c.expect(match, std::string("row '") + r.hypothesis + "'");
  }
  c.note = std::to_string(ok) + "/9 rows";
}

void end_to_end(Check& c) {
  auto t0 = Clock::now();
  const auto& corpus = fixtures::mini_corpus();
  auto outcomes = solve_corpus(corpus, fixtures::templates(), gold_given(), gold_claim(), fixtures::chunker(), 4);
  auto t = tally(outcomes, corpus);
  std::set<Property> props;
  bool same = false, cross = false, one = false, two = false;
  for (const auto& p : corpus) {
    for (const auto& f : p.form.setup) props.insert(f.property);
    props.insert(p.form.claim_a.property);
    props.insert(p.form.claim_b.property);
    same = same || p.form.claim_a.world == p.form.claim_b.world;
    cross = cross || p.form.claim_a.world != p.form.claim_b.world;
    one = one || p.form.setup.size() == 1;
    two = two || p.form.setup.size() == 2;
  }
  c.expect(corpus.size() == 20, "20 problems");
  c.expect(props.size() >= 10, "at least 10 properties");
  c.expect(same && cross, "same-world and cross-world claims");
  c.expect(one && two, "both logical-form shapes");
  c.expect(t.accuracy() == 1.0, "accuracy 1.0");
  auto v = solve(fixtures::problem_2(), fixtures::templates(), *gold_given()(fixtures::problem_2()),
                 *gold_claim()(fixtures::problem_2()), fixtures::chunker());
  c.expect(v.answer == Answer::A, "kitten problem answers A");
  double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime under 5s");
  std::ostringstream note;
  note << t.n_correct << "/" << t.n_total << " correct, " << props.size() << " properties, " << secs << " s";
  c.note = note.str();
}

void qrkb_properties(Check& c) {
  std::mt19937_64 rng(424242);
  int consistent = 0, contradictory = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<std::size_t> ids(Property::kCount);
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    ids.resize(n);
    std::vector<int> potential(n);
    for (auto& x : potential) x = rng() % 2 ? 1 : -1;
    const bool by_potential = instance % 4 != 0;
    std::vector<oracle::SignedEdge> edges;
    std::vector<Relation> relations;
    const std::size_t m = 1 + rng() % (n * (n - 1) / 2);
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      int s = by_potential ? potential[a] * potential[b] : (rng() % 2 ? 1 : -1);
      edges.push_back({a, b, s});
      relations.push_back({Property::from_index(ids[a]), Property::from_index(ids[b]),
                           s > 0 ? Sign::Plus : Sign::Minus});
    }
    oracle::PathSigns paths(n, edges);
    std::string tag = "instance " + std::to_string(instance);
    if (!paths.consistent()) {
      ++contradictory;
      bool threw = false;
      try {
        Qrkb::from_relations(relations);
      } catch (const Error& e) {
        threw = e.code() == Errc::ContradictoryClosure;
      }
      c.expect(threw, tag + " contradiction detected");
      continue;
    }
    ++consistent;
    Qrkb kb;
    try {
      kb = Qrkb::from_relations(relations);
    } catch (const Error& e) {
      c.expect(false, tag + " rejected a consistent graph");
      continue;
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto s = kb.influence(Property::from_index(ids[a]), Property::from_index(ids[b]));
        auto r = kb.influence(Property::from_index(ids[b]), Property::from_index(ids[a]));
        c.expect((s ? (*s == Sign::Plus ? 1 : -1) : 0) == paths.sign(a, b), tag + " path sign");
        c.expect(s == r, tag + " symmetry");
        if (!s) continue;
        for (std::size_t d = 0; d < n; ++d) {
          auto s2 = kb.influence(Property::from_index(ids[b]), Property::from_index(ids[d]));
          if (!s2) continue;
          auto s3 = kb.influence(Property::from_index(ids[a]), Property::from_index(ids[d]));
          c.expect(s3 && *s3 == compose(*s, *s2), tag + " transitivity");
        }
      }
  }
  c.expect(consistent > 0 && contradictory > 0, "both consistent and contradictory instances drawn");
  c.note = std::to_string(consistent) + " consistent, " + std::to_string(contradictory) + " contradictory graphs";
}

// Applies a strictly increasing map to every score of an inner scorer.
class TransformedScorer final : public EntailmentScorer {
 public:
  TransformedScorer(std::shared_ptr<const EntailmentScorer> inner, std::function<double(double)> f)
      : inner_(std::move(inner)), f_(std::move(f)) {}
  double score(std::string_view p, std::string_view h) const override { return f_(inner_->score(p, h)); }
  std::vector<double> score_batch(std::span<const SentencePair> pairs) const override {
    auto v = inner_->score_batch(pairs);
    for (auto& x : v) x = f_(x);
    return v;
  }

 private:
  std::shared_ptr<const EntailmentScorer> inner_;
  std::function<double(double)> f_;
};

// Deterministic pseudo-random score in [0, 1] on a coarse grid, so ties occur.
class HashScorer final : public EntailmentScorer {
 public:
  explicit HashScorer(std::uint64_t salt) : salt_(salt) {}
  double score(std::string_view p, std::string_view h) const override {
    std::uint64_t x = salt_ ^ std::hash<std::string_view>{}(p) ^ (std::hash<std::string_view>{}(h) << 1);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<double>(x % 5) / 4.0;
  }

 private:
  std::uint64_t salt_;
};

void argmax_invariance(Check& c) {
  std::mt19937_64 rng(31337);
  // Scores must stay in [0, 1], so every map sends [0, 1] into itself.
  std::uniform_real_distribution<double> power(0.2, 5.0), rate(0.5, 8.0), edge(0.0, 0.4);
  const auto& corpus = fixtures::mini_corpus();
  for (int i = 0; i < 100; ++i) {
    std::function<double(double)> f;
    switch (i % 3) {
      case 0: {
        const double lo = edge(rng), hi = 1.0 - edge(rng);
        f = [lo, hi](double x) { return lo + (hi - lo) * x; };
        break;
      }
      case 1: {
        const double k = rate(rng);
        f = [k](double x) { return std::expm1(k * x) / std::expm1(k); };
        break;
      }
      default: {
        const double k = power(rng);
        f = [k](double x) { return std::pow(x, k); };
        break;
      }
    }
    const auto& problem = corpus[i % corpus.size()];
    auto given = std::make_shared<HashScorer>(rng());
    auto claim = std::make_shared<HashScorer>(rng());
    TransformedScorer tg(given, f), tc(claim, f);
    auto v = solve(problem, fixtures::templates(), *given, *claim, fixtures::chunker());
    auto w = solve(problem, fixtures::templates(), tg, tc, fixtures::chunker());
    std::string tag = "case " + std::to_string(i);
    c.expect(v.answer == w.answer, tag + " answer");
    c.expect(v.claim_a_index == w.claim_a_index && v.claim_b_index == w.claim_b_index, tag + " argmax");
    c.expect(v.tie == w.tie, tag + " tie");
  }
  c.note = "100 random score assignments under affine, exponential and power maps";
}

void reference_figures(Check& c) {
  // Only documented: these need fine-tuned neural scorers.
  auto grid = reference_grid();
  auto systems = reference_systems();
  c.expect(grid.size() == 16, "16 reference cells");
  double best = 0;
  for (const auto& cell : grid) best = std::max(best, cell.test);
  c.expect(best == 76.63, "best test accuracy 76.63");
  c.expect(!systems.empty() && systems.back().test == 76.63, "system table ends at 76.63");
  c.note = "documented only: 16-cell grid, best test 76.63; not reproduced without neural scorers";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)(Check&);
  };
  const Criterion criteria[] = {
      {"template-fidelity", template_fidelity},
      {"hypothesis-set-size", hypothesis_set_size},
      {"bad-set-reproduction", bad_set_reproduction},
      {"dataset-rule-oracle-equivalence", rule_oracle_equivalence},
      {"expected-score-table", table2_conformance},
      {"end-to-end-oracle-solve", end_to_end},
      {"qrkb-closure-properties", qrkb_properties},
      {"argmax-invariance", argmax_invariance},
      {"reference-figures-documented", reference_figures},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Check c;
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", crit.name, c.note.c_str());
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::printf("    %s\n", c.failures[i].c_str());
  }
  return failed;
}
