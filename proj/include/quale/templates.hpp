#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quale/logical_form.hpp"

namespace quale {

struct Template {
  Property property;
  Direction direction = Direction::Low;
  int ordinal = 0;      // position within its (property, direction) group
  std::string pattern;  // exactly one 'X'
};

// Substitutes the literal for X. Output is lowercased with whitespace
// collapsed and no terminal punctuation.
std::string instantiate(const Template& t, std::string_view literal);

class TemplateTable {
 public:
  enum class Coverage {
    Complete,  // every (property, direction) group must be non-empty
    Partial,   // groups may be missing (oracle paraphrase tables)
  };

  TemplateTable() = default;

  // Line format: <property> <low|high> <ordinal> <pattern...>
  // Throws ParseError(MalformedLine / UnknownProperty / UnknownDirection).
  static TemplateTable parse(std::string_view text, Coverage coverage = Coverage::Complete);

  // All templates in file order.
  std::span<const Template> all() const { return templates_; }
  std::size_t size() const { return templates_.size(); }
  std::span<const Template> templates_for(Property p, Direction d) const;

  // Surface from the ordinal-0 template of (p, d).
  std::string generate(Property p, Direction d, std::string_view literal) const;
  // One surface per template of (p, d), in ordinal order.
  std::vector<std::string> instantiate_all(Property p, Direction d, std::string_view literal) const;

 private:
  static std::size_t slot(Property p, Direction d) {
    return p.index() * 2 + (d == Direction::High ? 1 : 0);
  }

  std::vector<Template> templates_;
  // Per-group copies, ordered by ordinal.
  std::array<std::vector<Template>, Property::kCount * 2> groups_;
};

}  // namespace quale
