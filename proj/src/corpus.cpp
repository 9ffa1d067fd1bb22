#include "quale/corpus.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "quale/error.hpp"

namespace quale {

using json = nlohmann::json;

namespace {

const std::set<std::string, std::less<>> kRequired{
    "id",          "text",           "question",      "option_a",      "option_b",
    "gold_answer", "logical_form",   "world1_literal", "world2_literal"};

std::string string_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_string())
    throw Error(Errc::MalformedStructure, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::MalformedStructure, "problem record must be a JSON object");
  for (const auto& key : kRequired)
    if (!j.contains(key)) throw Error(Errc::MalformedStructure, "missing field '" + key + "'");
  for (const auto& [key, _] : j.items())
    if (!kRequired.contains(key) && key != "noun_phrases")
      throw Error(Errc::MalformedStructure, "unexpected field '" + key + "'");

  Problem p;
  p.id = string_field(j, "id");
  p.text = string_field(j, "text");
  p.question = string_field(j, "question");
  p.option_a = string_field(j, "option_a");
  p.option_b = string_field(j, "option_b");
  auto gold = string_field(j, "gold_answer");
  p.gold_answer = parse_answer(gold);
  if (!p.gold_answer)
    throw Error(Errc::MalformedStructure, "gold_answer must be \"A\" or \"B\", got '" + gold + "'");
  try {
    p.form = parse_logical_form(string_field(j, "logical_form"));
  } catch (const Error& e) {
    throw Error(e.code(), "problem '" + p.id + "' logical_form: " + e.message());
  }
  p.world1_literal = string_field(j, "world1_literal");
  p.world2_literal = string_field(j, "world2_literal");
  if (j.contains("noun_phrases")) {
    const auto& np = j["noun_phrases"];
    if (!np.is_array()) throw Error(Errc::MalformedStructure, "noun_phrases must be an array");
    std::vector<std::string> phrases;
    for (const auto& e : np) {
      if (!e.is_string()) throw Error(Errc::MalformedStructure, "noun_phrases entries must be strings");
      phrases.push_back(e.get<std::string>());
    }
    p.noun_phrases = std::move(phrases);
  }
  p.validate();
  return p;
}

json problem_to_json(const Problem& p) {
  json j = {{"id", p.id},
            {"text", p.text},
            {"question", p.question},
            {"option_a", p.option_a},
            {"option_b", p.option_b},
            {"gold_answer", p.gold_answer ? std::string(to_string(*p.gold_answer)) : ""},
            {"logical_form", render_logical_form(p.form)},
            {"world1_literal", p.world1_literal},
            {"world2_literal", p.world2_literal}};
  if (p.noun_phrases) j["noun_phrases"] = *p.noun_phrases;
  return j;
}

std::vector<Problem> read_corpus(std::istream& in, std::string_view source) {
  std::vector<Problem> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(problem_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(Errc::MalformedStructure,
                  std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), std::string(source) + ":" + std::to_string(line_no) + ": " + e.message());
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Problem> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open corpus '" + path.string() + "'");
  return read_corpus(in, path.string());
}

json hypothesis_to_json(const Hypothesis& h) {
  return {{"surface", h.surface},
          {"property", std::string(h.property.display_name())},
          {"direction", std::string(to_string(h.direction))},
          {"noun_phrase", h.noun_phrase},
          {"template_ordinal", h.template_ordinal}};
}

json scored_to_json(const ScoredHypothesis& s) {
  auto j = hypothesis_to_json(s.hypothesis);
  j["given_score"] = s.given_score;
  j["claim_a_score"] = s.claim_a_score;
  j["claim_b_score"] = s.claim_b_score;
  return j;
}

json verdict_to_json(const Verdict& v) {
  return {{"answer", std::string(to_string(v.answer))},
          {"tie", v.tie},
          {"claim_a_star", scored_to_json(v.claim_a_star)},
          {"claim_b_star", scored_to_json(v.claim_b_star)},
          {"claim_a_index", v.claim_a_index},
          {"claim_b_index", v.claim_b_index},
          {"given_of_a_star", v.given_of_a_star},
          {"given_of_b_star", v.given_of_b_star}};
}

}  // namespace quale
