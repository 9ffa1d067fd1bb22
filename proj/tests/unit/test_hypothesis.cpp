#include <doctest.h>

#include <algorithm>
#include <set>

#include "quale/error.hpp"
#include "quale/hypothesis.hpp"
#include "quale/noun_phrases.hpp"
#include "quale/text.hpp"
#include "support.hpp"

using namespace quale;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_SUITE("hypothesis_gen") {

TEST_CASE("override list is used verbatim after normalization") {
  auto phrases = extract_noun_phrases(fixtures::problem_2(), fixtures::chunker());
  CHECK(phrases == std::vector<std::string>{"heat", "trial and error", "claws", "kitten", "carpet", "skin",
                                            "tank kitten", "error", "tank", "trial"});
  auto p = fixtures::problem_2();
  p.noun_phrases = std::vector<std::string>{"  Carpet ", "carpet", "SKIN", ""};
  CHECK(extract_noun_phrases(p, fixtures::chunker()) == std::vector<std::string>{"carpet", "skin"});
}

TEST_CASE("empty override is an error") {
  auto p = fixtures::problem_2();
  p.noun_phrases = std::vector<std::string>{};
  try {
    extract_noun_phrases(p, fixtures::chunker());
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyNounPhraseSet);
  }
  CHECK_THROWS_AS(generate_hypothesis_set(p, fixtures::templates(), fixtures::chunker()), Error);
}

TEST_CASE("chunker golden output") {
  const auto& c = fixtures::chunker();
  auto np = c.extract_text("the red ball rolls on grass");
  CHECK(contains(np, "red ball"));
  CHECK(contains(np, "grass"));
  CHECK(np == std::vector<std::string>{"red ball", "ball", "grass"});

  auto sky = c.extract_text(
      "A boomerang thrown into a windy sky heats up quite a bit, but one thrown into a calm sky "
      "stays about the same temperature.");
  CHECK(contains(sky, "windy sky"));
  CHECK(contains(sky, "calm sky"));
  CHECK(contains(sky, "boomerang"));
  CHECK(contains(sky, "temperature"));

  auto hair = c.extract_text("Nell has very thick hair; Lynn's hair is much thinner.");
  CHECK(contains(hair, "lynn 's hair"));
  CHECK(contains(hair, "nell"));

  auto trial = c.extract_text("Tank the kitten learned from trial and error that carpet is rougher then skin.");
  CHECK(contains(trial, "trial and error"));
  CHECK(contains(trial, "carpet"));
  CHECK(contains(trial, "skin"));
  CHECK(contains(trial, "kitten"));
}

TEST_CASE("chunker output is lowercased, unique and non-empty") {
  for (const auto& p : fixtures::mini_corpus()) {
    auto np = fixtures::chunker().extract(p);
    REQUIRE_FALSE(np.empty());
    std::set<std::string> seen;
    for (const auto& s : np) {
      CHECK_FALSE(s.empty());
      CHECK(seen.insert(s).second);
      CHECK(s == text::to_lower(s));
    }
  }
}

TEST_CASE("every mini-corpus problem exposes both world literals as phrases") {
  for (const auto& p : fixtures::mini_corpus()) {
    CAPTURE(p.id);
    auto np = extract_noun_phrases(p, fixtures::chunker());
    CHECK(contains(np, text::normalize(p.world1_literal)));
    CHECK(contains(np, text::normalize(p.world2_literal)));
  }
}

TEST_CASE("460 hypotheses for ten phrases, with the friction-high slice") {
  auto h = generate_hypothesis_set(fixtures::problem_2(), fixtures::templates(), fixtures::chunker());
  REQUIRE(h.size() == 460);
  std::vector<std::string> slice;
  for (const auto& x : h)
    if (x.property == Property::from_name("friction") && x.direction == Direction::High)
      slice.push_back(x.surface);
  CHECK(slice == std::vector<std::string>{
                     "heat has more friction", "trial and error has more friction", "claws has more friction",
                     "kitten has more friction", "carpet has more friction", "skin has more friction",
                     "tank kitten has more friction", "error has more friction", "tank has more friction",
                     "trial has more friction"});
}

TEST_CASE("ordering is phrase-major then table order") {
  const auto& t = fixtures::templates();
  std::vector<std::string> phrases{"carpet", "skin"};
  auto h = hypotheses_for_phrases(phrases, t);
  REQUIRE(h.size() == 92);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& tpl = t.all()[i % 46];
    CHECK(h[i].noun_phrase == phrases[i / 46]);
    CHECK(h[i].property == tpl.property);
    CHECK(h[i].direction == tpl.direction);
    CHECK(h[i].template_ordinal == tpl.ordinal);
  }
}

TEST_CASE("single phrase gives one hypothesis per template; provenance rebuilds the surface") {
  const auto& t = fixtures::templates();
  std::vector<std::string> one{"ice rink"};
  auto h = hypotheses_for_phrases(one, t);
  CHECK(h.size() == 46);
  for (const auto& x : h) {
    CHECK(x.surface.find(x.noun_phrase) != std::string::npos);
    CHECK(x.surface == instantiate(t.templates_for(x.property, x.direction)[x.template_ordinal], x.noun_phrase));
  }
}

TEST_CASE("size is 46 times the phrase count on every corpus problem, deterministically") {
  for (const auto& p : fixtures::mini_corpus()) {
    auto n = extract_noun_phrases(p, fixtures::chunker()).size();
    auto a = generate_hypothesis_set(p, fixtures::templates(), fixtures::chunker());
    auto b = generate_hypothesis_set(p, fixtures::templates(), fixtures::chunker());
    CHECK(a.size() == 46 * n);
    CHECK(a == b);
  }
}

}  // TEST_SUITE
