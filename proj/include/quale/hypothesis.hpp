#pragma once

#include <span>
#include <string>
#include <vector>

#include "quale/logical_form.hpp"
#include "quale/noun_phrases.hpp"
#include "quale/templates.hpp"

namespace quale {

struct Hypothesis {
  std::string surface;
  Property property;
  Direction direction = Direction::Low;
  std::string noun_phrase;
  int template_ordinal = 0;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

// Every template crossed with every phrase, phrase-major then table order.
std::vector<Hypothesis> hypotheses_for_phrases(std::span<const std::string> phrases,
                                               const TemplateTable& templates);

// |result| == templates.size() * n, n = number of extracted noun phrases.
std::vector<Hypothesis> generate_hypothesis_set(const Problem& problem,
                                                const TemplateTable& templates,
                                                const NounPhraseExtractor& extractor);

}  // namespace quale
