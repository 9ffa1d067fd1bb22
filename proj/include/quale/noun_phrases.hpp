#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quale/logical_form.hpp"

namespace quale {

class NounPhraseExtractor {
 public:
  virtual ~NounPhraseExtractor() = default;
  // Ordered, lowercased, deduplicated, non-empty phrases found in the
  // problem's text, question and both options. Must be reentrant.
  virtual std::vector<std::string> extract(const Problem& problem) const = 0;
};

// Lowercases, trims, drops empties and keeps the first occurrence of each phrase.
std::vector<std::string> normalize_phrases(std::span<const std::string> phrases);

// Uses the problem's noun_phrases override when present, the extractor
// otherwise. Throws Error(EmptyNounPhraseSet) when nothing is left.
std::vector<std::string> extract_noun_phrases(const Problem& problem,
                                              const NounPhraseExtractor& extractor);

enum class Pos { Det, Pron, Prep, Conj, Aux, Verb, Adj, Adv, Wh, Neg, Noun, Num, Poss, Punct };

// Rule-based chunker: tags words from a small lexicon (unknown words are
// nouns), then reads maximal modifier* noun+ runs, optionally joined by a
// possessive 's or by "and" between bare nouns. Each multi-word chunk also
// contributes its head noun.
class ChunkingExtractor final : public NounPhraseExtractor {
 public:
  // Lexicon format: `<tag> <word> [<word> ...]` per line, `#` comments.
  static ChunkingExtractor from_lexicon(std::string_view lexicon_text);

  std::vector<std::string> extract(const Problem& problem) const override;
  std::vector<std::string> extract_text(std::string_view text) const;

  struct Token {
    std::string word;  // lowercased
    Pos pos;
  };
  std::vector<Token> tag(std::string_view text) const;

 private:
  std::optional<Pos> lookup(const std::string& word) const;
  Pos guess(const std::string& word) const;

  std::unordered_map<std::string, Pos> lexicon_;
};

}  // namespace quale
