#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quale {

enum class Direction : std::uint8_t { Low, High };
enum class World : std::uint8_t { World1, World2 };
enum class PredKind : std::uint8_t { Qrel, Qval };
enum class Answer : std::uint8_t { A, B };

constexpr Direction opposite(Direction d) noexcept {
  return d == Direction::Low ? Direction::High : Direction::Low;
}
constexpr World other(World w) noexcept {
  return w == World::World1 ? World::World2 : World::World1;
}

inline constexpr std::array<Direction, 2> kDirections{Direction::Low, Direction::High};
inline constexpr std::array<World, 2> kWorlds{World::World1, World::World2};

std::string_view to_string(Direction d);  // "low" / "high"
std::string_view to_string(World w);      // "world1" / "world2"
std::string_view to_string(Answer a);     // "A" / "B"

// Accepts low/lower/high/higher in any case.
std::optional<Direction> parse_direction(std::string_view s);
std::optional<World> parse_world(std::string_view s);
std::optional<Answer> parse_answer(std::string_view s);

// One of the 19 qualitative properties known to the knowledge base.
class Property {
 public:
  static constexpr std::size_t kCount = 19;

  constexpr Property() = default;

  // Case-insensitive lookup; throws Error(UnknownProperty).
  static Property from_name(std::string_view name);
  static std::optional<Property> find(std::string_view name);
  static Property from_index(std::size_t index);
  static std::span<const Property> all();

  // Lowercase canonical spelling, e.g. "apparentsize".
  std::string_view name() const;
  // Mixed-case spelling as used in the data files, e.g. "apparentSize".
  std::string_view display_name() const;
  std::size_t index() const noexcept { return id_; }

  friend constexpr auto operator<=>(Property, Property) = default;

 private:
  constexpr explicit Property(std::uint8_t id) : id_(id) {}
  std::uint8_t id_ = 0;
};

struct QPred {
  PredKind kind = PredKind::Qrel;
  Property property;
  Direction direction = Direction::Low;
  World world = World::World1;

  // qrel and qval describe the same fact; kind only matters for rendering.
  friend bool operator==(const QPred& a, const QPred& b) {
    return a.property == b.property && a.direction == b.direction && a.world == b.world;
  }
  bool identical(const QPred& o) const { return *this == o && kind == o.kind; }
};

struct LogicalForm {
  std::vector<QPred> setup;
  QPred claim_a;
  QPred claim_b;

  bool identical(const LogicalForm& o) const;
};

// Grammar: setup -> claimA ; claimB, where setup is a comma separated list
// of qrel(p, d, w) / qval(p, d, w). The arrow may be "->" or U+2192.
LogicalForm parse_logical_form(std::string_view text);
std::string render_logical_form(const LogicalForm& form);
std::string render_pred(const QPred& pred);

struct Problem {
  std::string id;
  std::string text;
  std::string question;
  std::string option_a;
  std::string option_b;
  std::optional<Answer> gold_answer;
  LogicalForm form;
  std::string world1_literal;
  std::string world2_literal;
  std::optional<std::vector<std::string>> noun_phrases;

  // Throws Error(MalformedStructure) if the question is not a suffix of the
  // text or a literal is empty.
  void validate() const;
};

const std::string& literal_of(const Problem& problem, World w);

}  // namespace quale
