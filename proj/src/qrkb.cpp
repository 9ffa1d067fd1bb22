#include "quale/qrkb.hpp"

#include <algorithm>
#include <deque>

#include "quale/error.hpp"
#include "quale/text.hpp"

namespace quale {

namespace {

constexpr std::int8_t value_of(Sign s) { return s == Sign::Plus ? 1 : -1; }

struct Edge {
  std::size_t to;
  std::int8_t sign;
  std::size_t relation;
};

// Path from `node` up the BFS tree to the component root, as display names.
std::string chain_to_root(std::size_t node, const std::vector<std::size_t>& parent,
                          const std::vector<Relation>& relations,
                          const std::vector<std::size_t>& via) {
  std::string out(Property::from_index(node).display_name());
  while (parent[node] != node) {
    const auto& r = relations[via[node]];
    out += " -[";
    out += to_string(r.sign);
    out += "]- ";
    node = parent[node];
    out += Property::from_index(node).display_name();
  }
  return out;
}

}  // namespace

std::string_view to_string(Sign s) { return s == Sign::Plus ? "q+" : "q-"; }

Qrkb::Qrkb() {
  for (std::size_t i = 0; i < Property::kCount; ++i) table_[i][i] = 1;
}

Qrkb Qrkb::from_relations(std::vector<Relation> relations) {
  constexpr auto n = Property::kCount;
  std::vector<std::vector<Edge>> adj(n);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    const auto& r = relations[i];
    auto a = r.a.index(), b = r.b.index();
    if (a == b && r.sign == Sign::Minus) {
      throw Error(Errc::ContradictoryClosure, "relation q-(" + std::string(r.a.display_name()) +
                                                  ", " + std::string(r.a.display_name()) +
                                                  ") makes a property inversely related to itself");
    }
    adj[a].push_back({b, value_of(r.sign), i});
    adj[b].push_back({a, value_of(r.sign), i});
  }

  // Each connected component gets a sign per node relative to its root; the
  // closure is consistent iff every edge agrees with those node signs.
  std::vector<std::int8_t> potential(n, 0);
  std::vector<std::size_t> component(n, n), parent(n), via(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != n) continue;
    component[root] = root;
    potential[root] = 1;
    parent[root] = root;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      for (const auto& e : adj[u]) {
        auto expected = static_cast<std::int8_t>(potential[u] * e.sign);
        if (component[e.to] == n) {
          component[e.to] = root;
          potential[e.to] = expected;
          parent[e.to] = u;
          via[e.to] = e.relation;
          queue.push_back(e.to);
        } else if (potential[e.to] != expected) {
          const auto& r = relations[e.relation];
          throw Error(Errc::ContradictoryClosure,
                      "relation " + std::string(to_string(r.sign)) + "(" +
                          std::string(r.a.display_name()) + ", " + std::string(r.b.display_name()) +
                          ") conflicts with the chain " +
                          chain_to_root(u, parent, relations, via) + " and " +
                          chain_to_root(e.to, parent, relations, via));
        }
      }
    }
  }

  Qrkb kb;
  kb.relations_ = std::move(relations);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      kb.table_[a][b] =
          component[a] == component[b] ? static_cast<std::int8_t>(potential[a] * potential[b]) : 0;
  return kb;
}

std::optional<Sign> Qrkb::influence(Property p1, Property p2) const {
  auto v = table_[p1.index()][p2.index()];
  if (v == 0) return std::nullopt;
  return v > 0 ? Sign::Plus : Sign::Minus;
}

std::vector<Relation> Qrkb::closure() const {
  std::vector<Relation> out;
  for (auto a : Property::all())
    for (auto b : Property::all())
      if (auto s = influence(a, b)) out.push_back({a, b, *s});
  return out;
}

Qrkb load_qrkb(std::string_view text) {
  std::vector<Relation> relations;
  for (const auto& line : text::config_lines(text)) {
    auto fields = text::split_ws(line.content);
    auto offset_of = [&](std::string_view f) {
      return line.offset + static_cast<std::size_t>(f.data() - line.content.data());
    };
    if (fields.size() != 3) {
      throw ParseError(Errc::MalformedLine, std::string(line.content), line.offset,
                       "line " + std::to_string(line.line_no) +
                           ": expected 'q+|q- <property> <property>'");
    }
    Sign sign;
    if (fields[0] == "q+")
      sign = Sign::Plus;
    else if (fields[0] == "q-")
      sign = Sign::Minus;
    else
      throw ParseError(Errc::MalformedLine, std::string(fields[0]), offset_of(fields[0]),
                       "line " + std::to_string(line.line_no) + ": expected q+ or q-");
    Relation r;
    r.sign = sign;
    for (int k = 1; k <= 2; ++k) {
      auto p = Property::find(fields[k]);
      if (!p)
        throw ParseError(Errc::UnknownProperty, std::string(fields[k]), offset_of(fields[k]),
                         "line " + std::to_string(line.line_no) + ": unknown property");
      (k == 1 ? r.a : r.b) = *p;
    }
    relations.push_back(r);
  }
  return Qrkb::from_relations(std::move(relations));
}

std::optional<QPred> entail_fact(const Qrkb& kb, const QPred& fact, Property target) {
  auto s = kb.influence(target, fact.property);
  if (!s) return std::nullopt;
  QPred out = fact;
  out.property = target;
  out.direction = *s == Sign::Plus ? fact.direction : opposite(fact.direction);
  return out;
}

}  // namespace quale
