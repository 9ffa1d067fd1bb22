#include "quale/noun_phrases.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "quale/error.hpp"
#include "quale/text.hpp"

namespace quale {

namespace {

std::optional<Pos> parse_tag(std::string_view tag) {
  static const std::pair<std::string_view, Pos> kTags[] = {
      {"det", Pos::Det},   {"pron", Pos::Pron}, {"prep", Pos::Prep}, {"conj", Pos::Conj},
      {"aux", Pos::Aux},   {"verb", Pos::Verb}, {"adj", Pos::Adj},   {"adv", Pos::Adv},
      {"wh", Pos::Wh},     {"neg", Pos::Neg},   {"noun", Pos::Noun},
  };
  for (const auto& [name, pos] : kTags)
    if (name == tag) return pos;
  return std::nullopt;
}

bool is_modifier(Pos p) { return p == Pos::Adj || p == Pos::Num || p == Pos::Noun; }

// Splits into words, possessive markers and punctuation. "kate's" becomes
// "kate" + "'s"; other apostrophes are dropped.
std::vector<std::string> raw_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  auto word_char = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u >= 0x80 || std::isalnum(u) || c == '-';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (word_char(c)) {
      auto j = i;
      while (j < s.size() && word_char(s[j])) ++j;
      out.push_back(text::to_lower(s.substr(i, j - i)));
      i = j;
    } else if ((c == '\'' || c == '\x92') && i + 1 < s.size() &&
               (s[i + 1] == 's' || s[i + 1] == 'S') &&
               (i + 2 >= s.size() || !word_char(s[i + 2]))) {
      out.emplace_back("'s");
      i += 2;
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> normalize_phrases(std::span<const std::string> phrases) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : phrases) {
    auto n = text::normalize(p);
    if (n.empty() || !seen.insert(n).second) continue;
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<std::string> extract_noun_phrases(const Problem& problem,
                                              const NounPhraseExtractor& extractor) {
  auto phrases = problem.noun_phrases ? normalize_phrases(*problem.noun_phrases)
                                      : normalize_phrases(extractor.extract(problem));
  if (phrases.empty())
    throw Error(Errc::EmptyNounPhraseSet, "problem '" + problem.id + "' has no noun phrases");
  return phrases;
}

ChunkingExtractor ChunkingExtractor::from_lexicon(std::string_view lexicon_text) {
  ChunkingExtractor out;
  for (const auto& line : text::config_lines(lexicon_text)) {
    auto fields = text::split_ws(line.content);
    auto tag = parse_tag(fields.front());
    if (!tag || fields.size() < 2)
      throw ParseError(Errc::MalformedLine, std::string(fields.front()), line.offset,
                       "line " + std::to_string(line.line_no) + ": expected '<tag> <word>...'");
    for (std::size_t i = 1; i < fields.size(); ++i)
      out.lexicon_.try_emplace(text::to_lower(fields[i]), *tag);
  }
  return out;
}

std::optional<Pos> ChunkingExtractor::lookup(const std::string& word) const {
  if (auto it = lexicon_.find(word); it != lexicon_.end()) return it->second;
  return std::nullopt;
}

// Morphological fallback for words the lexicon does not list directly.
Pos ChunkingExtractor::guess(const std::string& w) const {
  if (std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return Pos::Num;
  auto base_is = [&](std::string_view suffix, std::string_view add, Pos want) {
    if (w.size() <= suffix.size() + 1 || !text::ends_with(w, suffix)) return false;
    auto base = w.substr(0, w.size() - suffix.size()) + std::string(add);
    auto p = lookup(base);
    return p && *p == want;
  };
  // doubled consonant: "bigger" -> "big", "stopped" -> "stop"
  auto base_doubled = [&](std::string_view suffix, Pos want) {
    if (w.size() <= suffix.size() + 2 || !text::ends_with(w, suffix)) return false;
    auto stem = w.substr(0, w.size() - suffix.size());
    if (stem[stem.size() - 1] != stem[stem.size() - 2]) return false;
    auto p = lookup(stem.substr(0, stem.size() - 1));
    return p && *p == want;
  };
  for (auto [suffix, add] : {std::pair<std::string_view, std::string_view>{"ies", "y"},
                             {"es", ""}, {"s", ""}, {"ied", "y"}, {"ed", ""}, {"ed", "e"},
                             {"d", ""}, {"ing", ""}, {"ing", "e"}})
    if (base_is(suffix, add, Pos::Verb)) return Pos::Verb;
  if (base_doubled("ed", Pos::Verb) || base_doubled("ing", Pos::Verb)) return Pos::Verb;
  for (auto [suffix, add] : {std::pair<std::string_view, std::string_view>{"ier", "y"},
                             {"iest", "y"}, {"er", ""}, {"est", ""}, {"r", ""}, {"st", ""},
                             {"ly", ""}})
    if (base_is(suffix, add, Pos::Adj)) return suffix == "ly" ? Pos::Adv : Pos::Adj;
  if (base_doubled("er", Pos::Adj) || base_doubled("est", Pos::Adj)) return Pos::Adj;
  if (w.size() > 4 && text::ends_with(w, "ly")) return Pos::Adv;
  return Pos::Noun;
}

std::vector<ChunkingExtractor::Token> ChunkingExtractor::tag(std::string_view s) const {
  std::vector<Token> out;
  for (auto& word : raw_tokens(s)) {
    Pos pos;
    if (word == "'s") {
      pos = Pos::Poss;
    } else if (!std::isalnum(static_cast<unsigned char>(word[0])) &&
               static_cast<unsigned char>(word[0]) < 0x80) {
      pos = Pos::Punct;
    } else if (auto p = lookup(word)) {
      pos = *p;
    } else {
      pos = guess(word);
    }
    // A verb right after a determiner, adjective, possessive or preposition
    // is being used as a noun ("the heat", "his push").
    if (pos == Pos::Verb && !out.empty()) {
      auto prev = out.back().pos;
      if (prev == Pos::Det || prev == Pos::Adj || prev == Pos::Poss || prev == Pos::Prep ||
          prev == Pos::Num)
        pos = Pos::Noun;
    }
    out.push_back({std::move(word), pos});
  }
  return out;
}

std::vector<std::string> ChunkingExtractor::extract_text(std::string_view s) const {
  auto tokens = tag(s);
  std::vector<std::string> phrases;
  auto join = [&](std::size_t b, std::size_t e) {
    std::string out;
    for (auto i = b; i < e; ++i) {
      if (!out.empty()) out += ' ';
      out += tokens[i].word;
    }
    return out;
  };

  // Spans [b, e) of modifier* noun, with the last token a noun.
  struct Span {
    std::size_t b, e;
  };
  std::vector<Span> chunks;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!is_modifier(tokens[i].pos)) {
      ++i;
      continue;
    }
    auto b = i;
    while (i < tokens.size() && is_modifier(tokens[i].pos)) ++i;
    auto e = i;
    while (e > b && tokens[e - 1].pos != Pos::Noun) --e;
    if (e > b) chunks.push_back({b, e});
  }

  for (std::size_t c = 0; c < chunks.size(); ++c) {
    auto [b, e] = chunks[c];
    // possessive: chunk 's chunk
    if (c + 1 < chunks.size() && e < tokens.size() && tokens[e].pos == Pos::Poss &&
        chunks[c + 1].b == e + 1) {
      phrases.push_back(join(b, chunks[c + 1].e));
      phrases.push_back(join(b, e));
      continue;
    }
    // coordination of bare nouns: noun and noun
    if (c + 1 < chunks.size() && e - b == 1 && e + 1 < tokens.size() &&
        tokens[e].word == "and" && chunks[c + 1].b == e + 1 &&
        chunks[c + 1].e - chunks[c + 1].b == 1) {
      phrases.push_back(join(b, chunks[c + 1].e));
    }
    phrases.push_back(join(b, e));
    if (e - b > 1) phrases.push_back(tokens[e - 1].word);
  }
  return normalize_phrases(phrases);
}

std::vector<std::string> ChunkingExtractor::extract(const Problem& problem) const {
  std::vector<std::string> all;
  for (const auto* part : {&problem.text, &problem.question, &problem.option_a, &problem.option_b}) {
    auto found = extract_text(*part);
    all.insert(all.end(), found.begin(), found.end());
  }
  return normalize_phrases(all);
}

}  // namespace quale
