#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quale/logical_form.hpp"

namespace quale {

enum class Sign : std::uint8_t { Plus, Minus };

constexpr Sign compose(Sign a, Sign b) noexcept { return a == b ? Sign::Plus : Sign::Minus; }
std::string_view to_string(Sign s);  // "q+" / "q-"

struct Relation {
  Property a;
  Property b;
  Sign sign = Sign::Plus;

  friend bool operator==(const Relation&, const Relation&) = default;
};

// Signed proportionality relations between properties. Relations are
// symmetric; the closure composes signs along paths and contains the
// reflexive (p, p, +) pairs. A knowledge base whose closure would hold both
// signs for some pair cannot be constructed.
class Qrkb {
 public:
  Qrkb();

  // Throws Error(ContradictoryClosure) naming the conflicting chain.
  static Qrkb from_relations(std::vector<Relation> relations);

  std::optional<Sign> influence(Property p1, Property p2) const;
  bool related(Property p1, Property p2) const { return influence(p1, p2).has_value(); }

  const std::vector<Relation>& relations() const { return relations_; }
  // Every closure entry in (a, b) index order, both orientations included.
  std::vector<Relation> closure() const;

 private:
  std::vector<Relation> relations_;
  // 0 = unrelated, +1 / -1 = sign.
  std::array<std::array<std::int8_t, Property::kCount>, Property::kCount> table_{};
};

// Format: one `q+ <prop> <prop>` or `q- <prop> <prop>` per line, `#` comments.
Qrkb load_qrkb(std::string_view text);

// What `fact` implies about `target` in the same world, if anything.
std::optional<QPred> entail_fact(const Qrkb& kb, const QPred& fact, Property target);

}  // namespace quale
