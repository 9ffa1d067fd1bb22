#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "quale/inference.hpp"
#include "quale/logical_form.hpp"

namespace quale {

// Problem corpus: JSON Lines, one object per problem with exactly the fields
// id, text, question, option_a, option_b, gold_answer, logical_form,
// world1_literal, world2_literal and optionally noun_phrases.
Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const Problem& p);

// Errors name the source and 1-based line.
std::vector<Problem> read_corpus(std::istream& in, std::string_view source = "<stream>");
std::vector<Problem> load_corpus(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

nlohmann::json hypothesis_to_json(const Hypothesis& h);
nlohmann::json scored_to_json(const ScoredHypothesis& s);
nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace quale
