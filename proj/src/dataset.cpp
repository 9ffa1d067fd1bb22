#include "quale/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "quale/error.hpp"
#include "quale/scorers.hpp"
#include "quale/text.hpp"

namespace quale {

using json = nlohmann::json;

namespace {

// Collects pairs, dropping exact repeats within one rule.
class PairSink {
 public:
  PairSink(const Problem& problem, Split split) : problem_(problem), split_(split) {}

  void add(const char* rule, const std::string& premise, std::string hypothesis, Label label) {
    auto key = std::string(rule) + '\x1f' + premise + '\x1f' + hypothesis + '\x1f' +
               (label == Label::Entail ? '1' : '0');
    if (!seen_.insert(std::move(key)).second) return;
    pairs_.push_back({premise, std::move(hypothesis), label, rule, problem_.id, split_});
  }

  std::vector<EntailmentPair> finish() {
    check_label_consistency(pairs_);
    return std::move(pairs_);
  }

 private:
  const Problem& problem_;
  Split split_;
  std::unordered_set<std::string> seen_;
  std::vector<EntailmentPair> pairs_;
};

void shuffle(std::vector<EntailmentPair>& v, std::mt19937_64& rng) {
  // Plain Fisher-Yates; std::shuffle's output differs between standard libraries.
  for (std::size_t i = v.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

std::string_view to_string(Label l) { return l == Label::Entail ? "entail" : "not_entail"; }

std::string_view to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

std::string_view to_string(Target t) { return t == Target::Given ? "given" : "claim"; }

std::optional<Split> parse_split(std::string_view s) {
  auto l = text::to_lower(s);
  if (l == "train") return Split::Train;
  if (l == "dev") return Split::Dev;
  if (l == "test") return Split::Test;
  return std::nullopt;
}

std::optional<Target> parse_target(std::string_view s) {
  auto l = text::to_lower(s);
  if (l == "given") return Target::Given;
  if (l == "claim") return Target::Claim;
  return std::nullopt;
}

json pair_to_json(const EntailmentPair& p) {
  return {{"premise", p.premise},
          {"hypothesis", p.hypothesis},
          {"label", std::string(to_string(p.label))},
          {"rule_id", p.rule_id},
          {"problem_id", p.problem_id},
          {"split", std::string(to_string(p.split))}};
}

BadSet bad_set(const Problem& problem, const NounPhraseExtractor& extractor) {
  std::vector<std::string> phrases;
  try {
    phrases = extract_noun_phrases(problem, extractor);
  } catch (const Error& e) {
    if (e.code() != Errc::EmptyNounPhraseSet) throw;
  }
  std::unordered_set<std::string> literal_words;
  for (const auto* lit : {&problem.world1_literal, &problem.world2_literal})
    for (auto& w : text::word_tokens(*lit)) literal_words.insert(std::move(w));

  BadSet out;
  for (auto& phrase : phrases) {
    auto words = text::word_tokens(phrase);
    bool overlaps = std::any_of(words.begin(), words.end(),
                                [&](const std::string& w) { return literal_words.contains(w); });
    if (!overlaps) out.phrases.push_back(std::move(phrase));
  }
  return out;
}

std::vector<EntailmentPair> gen_claim_pairs(const Problem& problem, const Qrkb& /*kb*/,
                                            const TemplateTable& templates,
                                            const NounPhraseExtractor& extractor, Split split) {
  const auto& ca = problem.form.claim_a;
  const auto& cb = problem.form.claim_b;
  const auto qa1 = make_qa(problem.question, problem.option_a);
  const auto qa2 = make_qa(problem.question, problem.option_b);
  const auto& lit_a = literal_of(problem, ca.world);
  const auto& lit_b = literal_of(problem, cb.world);
  auto gen = [&](Property p, Direction d, std::string_view lit) { return templates.generate(p, d, lit); };
  const auto bad = bad_set(problem, extractor);

  PairSink sink(problem, split);
  sink.add("C1", qa1, gen(ca.property, ca.direction, lit_a), Label::Entail);
  sink.add("C2", qa2, gen(cb.property, cb.direction, lit_b), Label::Entail);
  sink.add("C3", qa1, gen(ca.property, opposite(ca.direction), lit_a), Label::NotEntail);
  sink.add("C4", qa2, gen(cb.property, opposite(cb.direction), lit_b), Label::NotEntail);
  if (ca.world != cb.world) {
    sink.add("C5", qa1, gen(ca.property, ca.direction, lit_b), Label::NotEntail);
    sink.add("C6", qa2, gen(cb.property, cb.direction, lit_a), Label::NotEntail);
  }
  for (auto p : Property::all()) {
    if (p == ca.property || p == cb.property) continue;
    for (auto d : kDirections) sink.add("C7", qa1, gen(p, d, lit_a), Label::NotEntail);
  }
  for (auto p : Property::all()) {
    if (p == ca.property || p == cb.property) continue;
    for (auto d : kDirections) sink.add("C8", qa2, gen(p, d, lit_b), Label::NotEntail);
  }
  for (const auto& w : bad.phrases) sink.add("C9", qa1, gen(ca.property, ca.direction, w), Label::NotEntail);
  for (const auto& w : bad.phrases) sink.add("C10", qa2, gen(cb.property, cb.direction, w), Label::NotEntail);
  return sink.finish();
}

std::vector<EntailmentPair> gen_given_pairs(const Problem& problem, const Qrkb& kb,
                                            const TemplateTable& templates,
                                            const NounPhraseExtractor& extractor, Split split) {
  const auto& t = problem.text;
  const auto pa = problem.form.claim_a.property;
  const auto pb = problem.form.claim_b.property;
  auto gen = [&](Property p, Direction d, std::string_view lit) { return templates.generate(p, d, lit); };
  const auto bad = bad_set(problem, extractor);

  PairSink sink(problem, split);
  for (const auto& fact : problem.form.setup) {
    const auto pg = fact.property;
    const auto dg = fact.direction;
    const auto& lit = literal_of(problem, fact.world);
    const auto& other_lit = literal_of(problem, other(fact.world));

    sink.add("G1", t, gen(pg, dg, lit), Label::Entail);
    sink.add("G2", t, gen(pg, opposite(dg), lit), Label::NotEntail);
    sink.add("G3", t, gen(pg, dg, other_lit), Label::NotEntail);
    for (const auto& w : bad.phrases) sink.add("G4", t, gen(pg, dg, w), Label::NotEntail);
    for (auto p : Property::all()) {
      if (kb.related(p, pa) || kb.related(p, pb)) continue;
      for (auto d : kDirections)
        for (auto w : kWorlds) sink.add("G5", t, gen(p, d, literal_of(problem, w)), Label::NotEntail);
    }

    // Knowledge-base expansion over properties other than the fact's own.
    for (auto p : Property::all()) {
      if (p == pg) continue;
      if (kb.influence(p, pg) == Sign::Plus) sink.add("K1", t, gen(p, dg, lit), Label::Entail);
    }
    for (auto p : Property::all()) {
      if (p == pg) continue;
      if (kb.influence(p, pg) == Sign::Minus) sink.add("K2", t, gen(p, opposite(dg), lit), Label::Entail);
    }
    for (auto p : Property::all()) {
      if (p == pg) continue;
      if (kb.influence(p, pg) == Sign::Minus) sink.add("K3", t, gen(p, dg, lit), Label::NotEntail);
    }
    for (auto p : Property::all()) {
      if (p == pg) continue;
      if (kb.influence(p, pg) == Sign::Plus) sink.add("K4", t, gen(p, opposite(dg), lit), Label::NotEntail);
    }
  }
  return sink.finish();
}

void check_label_consistency(std::span<const EntailmentPair> pairs) {
  std::unordered_map<std::string, const EntailmentPair*> first;
  for (const auto& p : pairs) {
    auto key = p.problem_id + '\x1f' + p.premise + '\x1f' + p.hypothesis;
    auto [it, inserted] = first.try_emplace(std::move(key), &p);
    if (!inserted && it->second->label != p.label) {
      throw Error(Errc::LabelConflict, "problem '" + p.problem_id + "': hypothesis '" +
                                           p.hypothesis + "' is labelled " +
                                           std::string(to_string(it->second->label)) + " by " +
                                           it->second->rule_id + " and " +
                                           std::string(to_string(p.label)) + " by " + p.rule_id);
    }
  }
}

std::vector<EntailmentPair> balance(std::vector<EntailmentPair> pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    (pairs[i].label == Label::Entail ? pos : neg).push_back(i);
  if (pos.size() != neg.size()) {
    if (pos.empty() || neg.empty())
      throw Error(Errc::DegenerateLabelDistribution,
                  "cannot balance " + std::to_string(pos.size()) + " entail / " +
                      std::to_string(neg.size()) + " not_entail pairs");
    const auto& minority = pos.size() < neg.size() ? pos : neg;
    const auto deficit = std::max(pos.size(), neg.size()) - minority.size();
    const auto start = static_cast<std::size_t>(rng() % minority.size());
    pairs.reserve(pairs.size() + deficit);
    for (std::size_t k = 0; k < deficit; ++k)
      pairs.push_back(pairs[minority[(start + k) % minority.size()]]);
  }
  shuffle(pairs, rng);
  return pairs;
}

std::optional<EntailmentPair> convert_nli_record(const json& record) {
  if (!record.is_object() || !record.contains("sentence1") || !record.contains("sentence2") ||
      !record.contains("gold_label"))
    throw Error(Errc::MalformedStructure, "NLI record needs sentence1, sentence2 and gold_label");
  auto label = record["gold_label"].get<std::string>();
  EntailmentPair out;
  if (label == "-") return std::nullopt;
  if (label == "entailment")
    out.label = Label::Entail;
  else if (label == "contradiction" || label == "neutral")
    out.label = Label::NotEntail;
  else
    throw Error(Errc::UnknownLabel, "unknown NLI label '" + label + "'");
  out.premise = record["sentence1"].get<std::string>();
  out.hypothesis = record["sentence2"].get<std::string>();
  if (text::trim(out.premise).empty() || text::trim(out.hypothesis).empty()) return std::nullopt;
  out.rule_id = "EXT";
  if (record.contains("pairID") && record["pairID"].is_string())
    out.problem_id = record["pairID"].get<std::string>();
  out.split = Split::Train;
  return out;
}

ExternalPairs read_external_nli(std::istream& in, std::string_view source) {
  ExternalPairs out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto pair = convert_nli_record(json::parse(line));
      if (pair)
        out.pairs.push_back(std::move(*pair));
      else
        ++out.skipped;
    } catch (const json::exception& e) {
      throw Error(Errc::MalformedStructure,
                  std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), std::string(source) + ":" + std::to_string(line_no) + ": " + e.message());
    }
  }
  return out;
}

CompiledDataset compile_dataset(std::span<const SplitCorpus> corpus, const Qrkb& kb,
                                const TemplateTable& templates,
                                const NounPhraseExtractor& extractor, Target target,
                                const ExternalPairs* external, std::uint64_t seed) {
  CompiledDataset out;
  out.target = target;
  out.seed = seed;
  for (const auto& part : corpus) {
    auto& pairs = out.splits[part.split];
    auto& stats = out.stats[part.split];
    stats.problems += part.problems.size();
    for (const auto& problem : part.problems) {
      auto generated = target == Target::Claim
                           ? gen_claim_pairs(problem, kb, templates, extractor, part.split)
                           : gen_given_pairs(problem, kb, templates, extractor, part.split);
      pairs.insert(pairs.end(), std::make_move_iterator(generated.begin()),
                   std::make_move_iterator(generated.end()));
    }
  }
  if (external && !out.splits.contains(Split::Train)) out.splits[Split::Train];

  for (auto& [split, pairs] : out.splits) {
    auto& stats = out.stats[split];
    for (const auto& p : pairs) {
      ++stats.rule_counts[p.rule_id];
      ++stats.label_counts_generated[std::string(to_string(p.label))];
    }
    if (!pairs.empty()) pairs = balance(std::move(pairs), seed + static_cast<std::uint64_t>(split));
    for (const auto& p : pairs) ++stats.label_counts_balanced[std::string(to_string(p.label))];
    if (split == Split::Train && external) {
      pairs.insert(pairs.end(), external->pairs.begin(), external->pairs.end());
      stats.external_pairs = external->pairs.size();
      stats.external_skipped = external->skipped;
    }
    stats.total = pairs.size();
  }
  return out;
}

json CompiledDataset::manifest() const {
  json splits_json = json::object();
  for (const auto& [split, stats] : this->stats) {
    json labels_gen = json::object(), labels_bal = json::object(), rules = json::object();
    for (auto l : {Label::Entail, Label::NotEntail}) {
      auto key = std::string(to_string(l));
      auto g = stats.label_counts_generated.find(key);
      auto b = stats.label_counts_balanced.find(key);
      labels_gen[key] = g == stats.label_counts_generated.end() ? 0 : g->second;
      labels_bal[key] = b == stats.label_counts_balanced.end() ? 0 : b->second;
    }
    for (const auto& [rule, n] : stats.rule_counts) rules[rule] = n;
    splits_json[std::string(to_string(split))] = {
        {"problems", stats.problems},
        {"rule_counts", rules},
        {"label_counts_generated", labels_gen},
        {"label_counts_balanced", labels_bal},
        {"external_pairs", stats.external_pairs},
        {"external_skipped", stats.external_skipped},
        {"total", stats.total}};
  }
  return {{"target", std::string(to_string(target))}, {"seed", seed}, {"splits", splits_json}};
}

void write_dataset(const CompiledDataset& data, const std::filesystem::path& dir, const json& extra) {
  std::filesystem::create_directories(dir);
  for (const auto& [split, pairs] : data.splits) {
    auto path = dir / (std::string(to_string(data.target)) + "_" + std::string(to_string(split)) + ".jsonl");
    std::ofstream out(path);
    if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
    for (const auto& p : pairs) out << pair_to_json(p).dump() << '\n';
  }
  auto manifest = data.manifest();
  for (const auto& [k, v] : extra.items()) manifest[k] = v;
  auto path = dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  out << manifest.dump(2) << '\n';
}

}  // namespace quale
