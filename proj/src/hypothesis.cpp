#include "quale/hypothesis.hpp"

namespace quale {

std::vector<Hypothesis> hypotheses_for_phrases(std::span<const std::string> phrases,
                                               const TemplateTable& templates) {
  std::vector<Hypothesis> out;
  out.reserve(phrases.size() * templates.size());
  for (const auto& phrase : phrases) {
    for (const auto& t : templates.all()) {
      out.push_back({instantiate(t, phrase), t.property, t.direction, phrase, t.ordinal});
    }
  }
  return out;
}

std::vector<Hypothesis> generate_hypothesis_set(const Problem& problem,
                                                const TemplateTable& templates,
                                                const NounPhraseExtractor& extractor) {
  auto phrases = extract_noun_phrases(problem, extractor);
  return hypotheses_for_phrases(phrases, templates);
}

}  // namespace quale
