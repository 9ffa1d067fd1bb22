#include "quale/eval.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "quale/error.hpp"

namespace quale {

using json = nlohmann::json;

namespace {

// G1/G2: given model trained on the generated given pairs, without / with
// SNLI. C1/C2 likewise for the claim model.
constexpr ReferenceCell kReferenceGrid[] = {
    {"ESIM G1", "ESIM C1", 67.27, 71.2},  {"ESIM G1", "BERT C1", 62.23, 69.12},
    {"ESIM G1", "ESIM C2", 66.54, 69.57}, {"ESIM G1", "BERT C2", 59.71, 67.39},
    {"BERT G1", "ESIM C1", 67.99, 71.56}, {"BERT G1", "BERT C1", 67.62, 69.38},
    {"BERT G1", "ESIM C2", 62.95, 69.2},  {"BERT G1", "BERT C2", 68.35, 67.93},
    {"ESIM G2", "ESIM C1", 68.34, 67.21}, {"ESIM G2", "BERT C1", 59.35, 66.49},
    {"ESIM G2", "ESIM C2", 66.55, 66.3},  {"ESIM G2", "BERT C2", 58.63, 64.3},
    {"BERT G2", "ESIM C1", 73.38, 76.63}, {"BERT G2", "BERT C1", 72.66, 75.36},
    {"BERT G2", "ESIM C2", 70.50, 73.55}, {"BERT G2", "BERT C2", 73.02, 70.29},
};

constexpr ReferenceSystem kReferenceSystems[] = {
    {"IR", 48.6}, {"PMI", 50.5}, {"QUASP", 56.1}, {"QUASP+", 68.7}, {"gvQPS (BERT given + ESIM claim)", 76.63},
};

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Tally tally(std::span<const ProblemOutcome> outcomes, std::span<const Problem> corpus) {
  std::unordered_map<std::string, const Problem*> by_id;
  for (const auto& p : corpus) by_id.emplace(p.id, &p);
  Tally t;
  for (const auto& o : outcomes) {
    auto it = by_id.find(o.id);
    if (it == by_id.end()) throw Error(Errc::MissingGold, "no problem with id '" + o.id + "'");
    if (!it->second->gold_answer) throw Error(Errc::MissingGold, "problem '" + o.id + "' has no gold answer");
    ++t.n_total;
    if (!o.verdict) {
      ++t.n_errors;
      continue;
    }
    if (o.verdict->tie) ++t.n_ties;
    if (o.verdict->answer == *it->second->gold_answer) ++t.n_correct;
  }
  return t;
}

double accuracy(std::span<const ProblemOutcome> outcomes, std::span<const Problem> corpus) {
  return tally(outcomes, corpus).accuracy();
}

EvalReport run_grid(std::span<const SplitCorpus> corpus, std::span<const NamedScorer> given,
                    std::span<const NamedScorer> claim, const TemplateTable& templates,
                    const NounPhraseExtractor& extractor, unsigned jobs) {
  EvalReport report;
  for (const auto& g : given) {
    for (const auto& c : claim) {
      for (const auto& part : corpus) {
        auto outcomes = solve_corpus(part.problems, templates, g.make, c.make, extractor, jobs);
        auto t = tally(outcomes, part.problems);
        report.rows.push_back({g.name, c.name, std::string(to_string(part.split)), t.accuracy(),
                               t.n_correct, t.n_total, t.n_ties, t.n_errors});
      }
    }
  }
  return report;
}

std::string EvalReport::to_csv() const {
  std::string out = "given_scorer,claim_scorer,split,accuracy,n_correct,n_total,n_ties,n_errors\n";
  for (const auto& r : rows) {
    out += csv_field(r.given_scorer) + ',' + csv_field(r.claim_scorer) + ',' + r.split + ',' +
           fixed(r.accuracy, 6) + ',' + std::to_string(r.n_correct) + ',' +
           std::to_string(r.n_total) + ',' + std::to_string(r.n_ties) + ',' +
           std::to_string(r.n_errors) + '\n';
  }
  return out;
}

json EvalReport::to_json() const {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"given_scorer", r.given_scorer},
                   {"claim_scorer", r.claim_scorer},
                   {"split", r.split},
                   {"accuracy", r.accuracy},
                   {"n_correct", r.n_correct},
                   {"n_total", r.n_total},
                   {"n_ties", r.n_ties},
                   {"n_errors", r.n_errors}});
  }
  return arr;
}

std::string EvalReport::to_table() const {
  std::size_t wg = 12, wc = 12, ws = 5;
  for (const auto& r : rows) {
    wg = std::max(wg, r.given_scorer.size());
    wc = std::max(wc, r.claim_scorer.size());
    ws = std::max(ws, r.split.size());
  }
  std::ostringstream ss;
  ss << std::left << std::setw(static_cast<int>(wg)) << "given_scorer" << "  "
     << std::setw(static_cast<int>(wc)) << "claim_scorer" << "  " << std::setw(static_cast<int>(ws))
     << "split" << "  " << std::right << std::setw(9) << "accuracy" << std::setw(10) << "correct"
     << std::setw(8) << "total" << std::setw(7) << "ties" << std::setw(8) << "errors" << '\n';
  for (const auto& r : rows) {
    ss << std::left << std::setw(static_cast<int>(wg)) << r.given_scorer << "  "
       << std::setw(static_cast<int>(wc)) << r.claim_scorer << "  "
       << std::setw(static_cast<int>(ws)) << r.split << "  " << std::right << std::setw(8)
       << fixed(100.0 * r.accuracy, 2) << '%' << std::setw(10) << r.n_correct << std::setw(8)
       << r.n_total << std::setw(7) << r.n_ties << std::setw(8) << r.n_errors << '\n';
  }
  return ss.str();
}

std::span<const ReferenceCell> reference_grid() { return kReferenceGrid; }
std::span<const ReferenceSystem> reference_systems() { return kReferenceSystems; }

}  // namespace quale
