// quale: command-line driver for solving, dataset compilation and evaluation.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quale/corpus.hpp"
#include "quale/dataset.hpp"
#include "quale/error.hpp"
#include "quale/eval.hpp"
#include "quale/inference.hpp"
#include "quale/remote_scorer.hpp"
#include "quale/resources.hpp"
#include "quale/scorers.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<std::string> corpus;
  std::string qrkb;
  std::string templates;
  std::string paraphrases;
  std::string lexicon;
  std::string given_scorer = "gold";
  std::string claim_scorer = "gold";
  std::string endpoint;
  int timeout_ms = 10000;
  std::size_t max_in_flight = 4;
  std::uint64_t seed = kDefaultSeed;
  unsigned jobs = 1;
  std::string out;
};

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_scorers) {
  cmd->add_option("--corpus", cfg.corpus,
                  "Problem corpus (JSONL); prefix with train=, dev= or test= to tag the split")
      ->type_name("[SPLIT=]PATH");
  cmd->add_option("--qrkb", cfg.qrkb, "Knowledge-base relations file")->capture_default_str();
  cmd->add_option("--templates", cfg.templates, "Template table file")->capture_default_str();
  cmd->add_option("--paraphrases", cfg.paraphrases,
                  "Extra surfaces accepted by the gold scorers (\"none\" disables)")
      ->capture_default_str();
  cmd->add_option("--lexicon", cfg.lexicon, "Chunker lexicon")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--jobs", cfg.jobs, "Problems solved in parallel")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "Output directory");
  if (with_scorers) {
    cmd->add_option("--given-scorer", cfg.given_scorer,
                    "gold | lexical | remote[:URL], optionally NAME=..; comma lists in eval-grid")
        ->capture_default_str();
    cmd->add_option("--claim-scorer", cfg.claim_scorer, "Same syntax as --given-scorer")
        ->capture_default_str();
    cmd->add_option("--endpoint", cfg.endpoint, "Default entailment service URL for remote scorers")
        ->envname("QUALE_ENDPOINT");
    cmd->add_option("--timeout-ms", cfg.timeout_ms, "Remote request timeout")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-in-flight", cfg.max_in_flight, "Concurrent remote requests")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}))
        ->capture_default_str();
  }
}

// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct ScorerSpec {
  std::string name;
  std::string kind;  // gold | lexical | remote
  std::string endpoint;
};

ScorerSpec parse_scorer_spec(const std::string& raw, const std::string& default_endpoint) {
  ScorerSpec s;
  std::string body = raw;
  auto eq = raw.find('=');
  auto colon = raw.find(':');
  if (eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
    s.name = raw.substr(0, eq);
    body = raw.substr(eq + 1);
    if (s.name.empty()) throw ConfigError("empty scorer name in '" + raw + "'");
  }
  colon = body.find(':');
  s.kind = body.substr(0, colon);
  if (s.kind == "remote") {
    s.endpoint = colon == std::string::npos ? default_endpoint : body.substr(colon + 1);
    if (s.endpoint.empty())
      throw ConfigError("scorer '" + raw + "' needs an endpoint (--endpoint or QUALE_ENDPOINT)");
  } else if (s.kind == "gold" || s.kind == "lexical") {
    if (colon != std::string::npos)
      throw ConfigError("scorer '" + raw + "' takes no argument");
  } else {
    throw ConfigError("unknown scorer kind in '" + raw + "' (expected gold, lexical or remote)");
  }
  if (s.name.empty()) s.name = body;
  return s;
}

std::vector<ScorerSpec> parse_scorer_list(const std::string& raw, const std::string& endpoint) {
  std::vector<ScorerSpec> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ConfigError("empty entry in scorer list '" + raw + "'");
    out.push_back(parse_scorer_spec(item, endpoint));
  }
  if (out.empty()) throw ConfigError("empty scorer list");
  return out;
}

// Everything loaded from config files, shared by all subcommands.
struct Resources {
  quale::TemplateTable templates;
  std::optional<quale::TemplateTable> paraphrases;
  quale::Qrkb kb;
  std::unique_ptr<quale::ChunkingExtractor> extractor;
  std::vector<quale::SplitCorpus> corpus;
  std::string fingerprint;  // concatenated file contents, for the config hash

  const quale::TemplateTable* paraphrase_table() const {
    return paraphrases ? &*paraphrases : nullptr;
  }
  std::vector<quale::Problem> all_problems() const {
    std::vector<quale::Problem> out;
    for (const auto& s : corpus) out.insert(out.end(), s.problems.begin(), s.problems.end());
    return out;
  }
};

void require_file(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw ConfigError(std::string(what) + " not found: " + path);
}

void fill_defaults(RunConfig& cfg) {
  auto data = quale::default_data_dir();
  if (cfg.qrkb.empty()) cfg.qrkb = (data / "qrkb_seed.txt").string();
  if (cfg.templates.empty()) cfg.templates = (data / "templates.txt").string();
  if (cfg.paraphrases.empty()) cfg.paraphrases = (data / "oracle_paraphrases.txt").string();
  if (cfg.lexicon.empty()) cfg.lexicon = (data / "np_lexicon.txt").string();
}

Resources load_resources(RunConfig& cfg, bool need_corpus) {
  fill_defaults(cfg);
  if (need_corpus && cfg.corpus.empty()) throw ConfigError("--corpus is required");

  struct Tagged {
    quale::Split split;
    std::string path;
  };
  std::vector<Tagged> tagged;
  for (const auto& c : cfg.corpus) {
    Tagged t{quale::Split::Test, c};
    auto eq = c.find('=');
    if (eq != std::string::npos) {
      auto split = quale::parse_split(c.substr(0, eq));
      if (!split) throw ConfigError("unknown split in --corpus " + c);
      t = {*split, c.substr(eq + 1)};
    }
    require_file(t.path, "corpus file");
    tagged.push_back(t);
  }
  require_file(cfg.qrkb, "knowledge-base file");
  require_file(cfg.templates, "template file");
  require_file(cfg.lexicon, "lexicon file");
  bool use_paraphrases = cfg.paraphrases != "none";
  if (use_paraphrases) require_file(cfg.paraphrases, "paraphrase file");

  Resources r;
  r.templates = quale::load_templates_file(cfg.templates);
  if (use_paraphrases)
    r.paraphrases = quale::load_templates_file(cfg.paraphrases, quale::TemplateTable::Coverage::Partial);
  r.kb = quale::load_qrkb_file(cfg.qrkb);
  r.extractor = std::make_unique<quale::ChunkingExtractor>(quale::load_chunker_file(cfg.lexicon));
  for (const auto& t : tagged) {
    auto problems = quale::load_corpus(t.path);
    auto it = std::find_if(r.corpus.begin(), r.corpus.end(),
                           [&](const quale::SplitCorpus& s) { return s.split == t.split; });
    if (it == r.corpus.end()) {
      r.corpus.push_back({t.split, {}});
      it = std::prev(r.corpus.end());
    }
    it->problems.insert(it->problems.end(), problems.begin(), problems.end());
    r.fingerprint += quale::read_file(t.path);
  }
  std::sort(r.corpus.begin(), r.corpus.end(),
            [](const auto& a, const auto& b) { return a.split < b.split; });
  r.fingerprint += quale::read_file(cfg.qrkb);
  r.fingerprint += quale::read_file(cfg.templates);
  r.fingerprint += quale::read_file(cfg.lexicon);
  if (use_paraphrases) r.fingerprint += quale::read_file(cfg.paraphrases);
  return r;
}

std::string config_hash(const RunConfig& cfg, const Resources& r, const json& extra) {
  json j = {{"corpus", cfg.corpus},         {"given_scorer", cfg.given_scorer},
            {"claim_scorer", cfg.claim_scorer}, {"endpoint", cfg.endpoint},
            {"timeout_ms", cfg.timeout_ms}, {"seed", cfg.seed},
            {"paraphrases", cfg.paraphrases != "none"}, {"extra", extra}};
  return hex(fnv1a(r.fingerprint, fnv1a(j.dump())));
}

quale::NamedScorer make_scorer(const ScorerSpec& spec, quale::Target role, const Resources& r,
                               const RunConfig& cfg) {
  if (spec.kind == "lexical") return {spec.name, quale::shared_factory(quale::lexical_scorer())};
  if (spec.kind == "remote") {
    quale::RemoteOptions o;
    o.endpoint = spec.endpoint;
    o.timeout = std::chrono::milliseconds(cfg.timeout_ms);
    o.max_in_flight = cfg.max_in_flight;
    return {spec.name, quale::shared_factory(std::make_shared<quale::RemoteScorer>(o))};
  }
  const auto* templates = &r.templates;
  const auto* para = r.paraphrase_table();
  if (role == quale::Target::Claim)
    return {spec.name, [templates, para](const quale::Problem& p) {
              return quale::gold_claim_scorer(p, *templates, para);
            }};
  const auto* kb = &r.kb;
  return {spec.name, [templates, para, kb](const quale::Problem& p) {
            return quale::gold_given_scorer(p, *kb, *templates, para);
          }};
}

fs::path output_dir(const RunConfig& cfg, const char* fallback) {
  fs::path dir = cfg.out.empty() ? fs::path(fallback) : fs::path(cfg.out);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw quale::Error(quale::Errc::Io, "cannot write " + path.string());
  f << content;
}

int cmd_solve(RunConfig& cfg) {
  // Scorer specs are checked before anything is loaded or solved.
  auto given_spec = parse_scorer_spec(cfg.given_scorer, cfg.endpoint);
  auto claim_spec = parse_scorer_spec(cfg.claim_scorer, cfg.endpoint);
  auto r = load_resources(cfg, true);
  auto given = make_scorer(given_spec, quale::Target::Given, r, cfg);
  auto claim = make_scorer(claim_spec, quale::Target::Claim, r, cfg);
  auto problems = r.all_problems();
  auto hash = config_hash(cfg, r, "solve");

  auto outcomes = quale::solve_corpus(problems, r.templates, given.make, claim.make, *r.extractor,
                                      cfg.jobs);
  auto dir = output_dir(cfg, "quale-out");
  std::ostringstream lines;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    json rec = {{"id", o.id}, {"config_hash", hash}, {"seed", cfg.seed}};
    if (problems[i].gold_answer) rec["gold_answer"] = quale::to_string(*problems[i].gold_answer);
    if (o.verdict) {
      rec["answer"] = quale::to_string(o.verdict->answer);
      rec["trace"] = quale::verdict_to_json(*o.verdict);
      if (problems[i].gold_answer) rec["correct"] = o.verdict->answer == *problems[i].gold_answer;
    } else {
      rec["error"] = o.error;
    }
    lines << rec.dump() << '\n';
  }
  write_text(dir / "verdicts.jsonl", lines.str());

  json summary = {{"config_hash", hash},         {"seed", cfg.seed},
                  {"given_scorer", given.name},  {"claim_scorer", claim.name},
                  {"n_problems", problems.size()}};
  bool all_gold = std::all_of(problems.begin(), problems.end(),
                              [](const auto& p) { return p.gold_answer.has_value(); });
  if (all_gold) {
    auto t = quale::tally(outcomes, problems);
    summary["accuracy"] = t.accuracy();
    summary["n_correct"] = t.n_correct;
    summary["n_total"] = t.n_total;
    summary["n_ties"] = t.n_ties;
    summary["n_errors"] = t.n_errors;
  }
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << '\n';
  return 0;
}

int cmd_gen_dataset(RunConfig& cfg, const std::string& target_name, const std::string& external) {
  auto target = quale::parse_target(target_name);
  if (!target) throw ConfigError("unknown target " + target_name);
  if (!external.empty()) require_file(external, "external NLI file");
  auto r = load_resources(cfg, true);

  std::optional<quale::ExternalPairs> ext;
  if (!external.empty()) {
    std::ifstream in(external);
    ext = quale::read_external_nli(in, external);
    r.fingerprint += quale::read_file(external);
  }
  auto data = quale::compile_dataset(r.corpus, r.kb, r.templates, *r.extractor, *target,
                                     ext ? &*ext : nullptr, cfg.seed);
  auto hash = config_hash(cfg, r, {{"target", target_name}, {"external", external}});
  auto dir = output_dir(cfg, "quale-dataset");
  quale::write_dataset(data, dir, {{"config_hash", hash}});
  std::cout << data.manifest().dump(2) << '\n';
  return 0;
}

int cmd_eval_grid(RunConfig& cfg, bool show_reference) {
  auto given_specs = parse_scorer_list(cfg.given_scorer, cfg.endpoint);
  auto claim_specs = parse_scorer_list(cfg.claim_scorer, cfg.endpoint);
  auto r = load_resources(cfg, true);
  std::vector<quale::NamedScorer> given, claim;
  for (const auto& s : given_specs) given.push_back(make_scorer(s, quale::Target::Given, r, cfg));
  for (const auto& s : claim_specs) claim.push_back(make_scorer(s, quale::Target::Claim, r, cfg));

  auto report = quale::run_grid(r.corpus, given, claim, r.templates, *r.extractor, cfg.jobs);
  auto hash = config_hash(cfg, r, "eval-grid");
  auto dir = output_dir(cfg, "quale-eval");
  write_text(dir / "grid.csv", report.to_csv());
  json j = {{"config_hash", hash}, {"seed", cfg.seed}, {"rows", report.to_json()}};
  write_text(dir / "grid.json", j.dump(2) + "\n");
  std::cout << report.to_table();

  if (show_reference) {
    std::cout << "\nPublished accuracies of fine-tuned neural scorers (not reproduced here):\n";
    for (const auto& c : quale::reference_grid())
      std::printf("  given=%-8s claim=%-8s dev=%6.2f test=%6.2f\n", c.given, c.claim, c.dev, c.test);
    for (const auto& s : quale::reference_systems())
      std::printf("  %-40s test=%6.2f\n", s.name, s.test);
  }
  return 0;
}

int cmd_qrkb(RunConfig& cfg, const std::vector<std::string>& pair, bool closure) {
  fill_defaults(cfg);
  require_file(cfg.qrkb, "knowledge-base file");
  auto kb = quale::load_qrkb_file(cfg.qrkb);
  if (closure) {
    for (const auto& rel : kb.closure())
      std::cout << quale::to_string(rel.sign) << ' ' << rel.a.display_name() << ' '
                << rel.b.display_name() << '\n';
  }
  if (pair.size() == 2) {
    auto a = quale::Property::from_name(pair[0]);
    auto b = quale::Property::from_name(pair[1]);
    auto s = kb.influence(a, b);
    std::cout << (s ? std::string(quale::to_string(*s)) : std::string("unrelated")) << '\n';
  } else if (!closure) {
    throw ConfigError("qrkb needs two properties or --closure");
  }
  return 0;
}

int cmd_gen_hypotheses(RunConfig& cfg, const std::string& id) {
  auto r = load_resources(cfg, true);
  auto problems = r.all_problems();
  auto it = id.empty() ? problems.begin()
                       : std::find_if(problems.begin(), problems.end(),
                                      [&](const auto& p) { return p.id == id; });
  if (it == problems.end())
    throw ConfigError(id.empty() ? "corpus is empty" : "no problem with id " + id);
  auto hyps = quale::generate_hypothesis_set(*it, r.templates, *r.extractor);
  std::ostringstream lines;
  for (const auto& h : hyps) lines << quale::hypothesis_to_json(h).dump() << '\n';
  if (cfg.out.empty()) {
    std::cout << lines.str();
  } else {
    write_text(cfg.out, lines.str());
    std::cerr << hyps.size() << " hypotheses written to " << cfg.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate-validate question answering over qualitative relations"};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags override it)");
  app.require_subcommand(1);

  RunConfig cfg;

  auto* solve = app.add_subcommand("solve", "Answer every problem of a corpus");
  add_common(solve, cfg, true);

  std::string target, external;
  auto* gen = app.add_subcommand("gen-dataset", "Compile entailment training pairs");
  add_common(gen, cfg, false);
  gen->add_option("--target", target, "Which entailment function the pairs train")
      ->required()
      ->check(CLI::IsMember({"given", "claim"}));
  gen->add_option("--external", external, "3-class NLI JSONL merged into the train split");

  bool show_reference = false;
  auto* grid = app.add_subcommand("eval-grid", "Accuracy of every given x claim scorer pair");
  add_common(grid, cfg, true);
  grid->add_flag("--reference", show_reference, "Also print the published neural accuracies");

  std::vector<std::string> pair;
  bool closure = false;
  auto* qrkb = app.add_subcommand("qrkb", "Query the knowledge base");
  qrkb->add_option("properties", pair, "Two properties")->expected(0, 2);
  qrkb->add_option("--qrkb", cfg.qrkb, "Knowledge-base relations file");
  qrkb->add_flag("--closure", closure, "Print the full closure");

  std::string problem_id;
  auto* hyps = app.add_subcommand("gen-hypotheses", "Dump the hypothesis set of one problem");
  add_common(hyps, cfg, false);
  hyps->add_option("--id", problem_id, "Problem id (default: first problem)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(cfg);
    if (*gen) return cmd_gen_dataset(cfg, target, external);
    if (*grid) return cmd_eval_grid(cfg, show_reference);
    if (*qrkb) return cmd_qrkb(cfg, pair, closure);
    if (*hyps) return cmd_gen_hypotheses(cfg, problem_id);
  } catch (const ConfigError& e) {
    std::cerr << "quale: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "quale: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
