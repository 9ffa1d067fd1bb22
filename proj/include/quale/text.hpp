#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the templates, scorers and chunker.
namespace quale::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

// Lowercases, collapses runs of whitespace to one space, trims, and strips
// terminal punctuation (. ! ? ; , :). Used for every oracle string match.
std::string normalize(std::string_view s);

// Lowercased maximal alphanumeric runs. Bytes >= 0x80 count as word
// characters so UTF-8 words are not split.
std::vector<std::string> word_tokens(std::string_view s);

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string_view> split_ws(std::string_view s);

// Splits a config file into lines, stripping `#` comments and surrounding
// whitespace. Each entry keeps its 1-based line number and the byte offset
// of the first retained character.
struct ConfigLine {
  std::size_t line_no;
  std::size_t offset;
  std::string_view content;
};
std::vector<ConfigLine> config_lines(std::string_view text);

bool ends_with(std::string_view s, std::string_view suffix);

}  // namespace quale::text
