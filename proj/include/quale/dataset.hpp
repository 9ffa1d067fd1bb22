#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quale/logical_form.hpp"
#include "quale/noun_phrases.hpp"
#include "quale/qrkb.hpp"
#include "quale/templates.hpp"

namespace quale {

enum class Label : std::uint8_t { NotEntail, Entail };
enum class Split : std::uint8_t { Train, Dev, Test };
enum class Target : std::uint8_t { Given, Claim };

std::string_view to_string(Label l);   // "entail" / "not_entail"
std::string_view to_string(Split s);   // "train" / "dev" / "test"
std::string_view to_string(Target t);  // "given" / "claim"
std::optional<Split> parse_split(std::string_view s);
std::optional<Target> parse_target(std::string_view s);

struct EntailmentPair {
  std::string premise;
  std::string hypothesis;
  Label label = Label::NotEntail;
  std::string rule_id;  // C1..C10, G1..G5, K1..K4, EXT
  std::string problem_id;
  Split split = Split::Train;

  friend bool operator==(const EntailmentPair&, const EntailmentPair&) = default;
};

nlohmann::json pair_to_json(const EntailmentPair& p);

// Noun phrases of the problem sharing no word with either world literal.
struct BadSet {
  std::vector<std::string> phrases;
};
BadSet bad_set(const Problem& problem, const NounPhraseExtractor& extractor);

// Claim-side pairs (rules C1-C10). Hypotheses use the ordinal-0 template.
std::vector<EntailmentPair> gen_claim_pairs(const Problem& problem, const Qrkb& kb,
                                            const TemplateTable& templates,
                                            const NounPhraseExtractor& extractor,
                                            Split split = Split::Train);

// Given-side pairs (rules G1-G5 and K1-K4), for every setup fact.
std::vector<EntailmentPair> gen_given_pairs(const Problem& problem, const Qrkb& kb,
                                            const TemplateTable& templates,
                                            const NounPhraseExtractor& extractor,
                                            Split split = Split::Train);

// Throws Error(LabelConflict) if one (premise, hypothesis) carries both labels.
void check_label_consistency(std::span<const EntailmentPair> pairs);

// Duplicates the minority label round-robin until both counts match, then
// shuffles. Deterministic in (input, seed). Throws
// Error(DegenerateLabelDistribution) if one label is missing.
std::vector<EntailmentPair> balance(std::vector<EntailmentPair> pairs, std::uint64_t seed);

// 3-class NLI record {sentence1, sentence2, gold_label} to a 2-class pair.
// Returns nullopt for unlabeled ("-") records; throws Error(UnknownLabel).
std::optional<EntailmentPair> convert_nli_record(const nlohmann::json& record);

struct ExternalPairs {
  std::vector<EntailmentPair> pairs;
  std::size_t skipped = 0;
};
ExternalPairs read_external_nli(std::istream& in, std::string_view source = "<stream>");

struct SplitCorpus {
  Split split = Split::Train;
  std::vector<Problem> problems;
};

struct SplitStats {
  std::size_t problems = 0;
  std::map<std::string, std::size_t> rule_counts;  // before balancing
  std::map<std::string, std::size_t> label_counts_generated;
  std::map<std::string, std::size_t> label_counts_balanced;
  std::size_t external_pairs = 0;
  std::size_t external_skipped = 0;
  std::size_t total = 0;
};

struct CompiledDataset {
  Target target = Target::Claim;
  std::uint64_t seed = 0;
  std::map<Split, std::vector<EntailmentPair>> splits;
  std::map<Split, SplitStats> stats;

  nlohmann::json manifest() const;
};

// Generates, balances each split independently and appends external pairs to
// the train split (unbalanced).
CompiledDataset compile_dataset(std::span<const SplitCorpus> corpus, const Qrkb& kb,
                                const TemplateTable& templates,
                                const NounPhraseExtractor& extractor, Target target,
                                const ExternalPairs* external, std::uint64_t seed);

// Writes <target>_<split>.jsonl per split and manifest.json. `extra` is
// merged into the manifest (config hash etc.).
void write_dataset(const CompiledDataset& data, const std::filesystem::path& dir,
                   const nlohmann::json& extra = nlohmann::json::object());

}  // namespace quale
