#include "quale/logical_form.hpp"

#include <cctype>

#include "quale/error.hpp"
#include "quale/text.hpp"

namespace quale {

namespace {

constexpr std::array<std::string_view, Property::kCount> kDisplayNames{
    "friction",   "speed",        "distance",          "smoothness",   "heat",
    "loudness",   "brightness",   "apparentSize",      "time",         "weight",
    "strength",   "mass",         "flexibility",       "exerciseIntensity",
    "acceleration", "thickness",  "gravity",           "breakability", "amountSweat"};

constexpr std::array<std::string_view, Property::kCount> kNames{
    "friction",   "speed",        "distance",          "smoothness",   "heat",
    "loudness",   "brightness",   "apparentsize",      "time",         "weight",
    "strength",   "mass",         "flexibility",       "exerciseintensity",
    "acceleration", "thickness",  "gravity",           "breakability", "amountsweat"};

// Recursive-descent reader over the annotation string.
class FormParser {
 public:
  explicit FormParser(std::string_view src) : src_(src) {}

  LogicalForm parse() {
    LogicalForm form;
    skip_ws();
    if (at_arrow()) fail(Errc::MalformedStructure, "setup part is empty");
    form.setup.push_back(pred());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      form.setup.push_back(pred());
      skip_ws();
    }
    if (!consume_arrow()) fail(Errc::MalformedStructure, "expected '->' after setup");
    form.claim_a = pred();
    skip_ws();
    if (peek() != ';') fail(Errc::MalformedStructure, "expected ';' between claims");
    ++pos_;
    form.claim_b = pred();
    skip_ws();
    if (pos_ != src_.size()) fail(Errc::MalformedStructure, "trailing input after claimB");
    if (form.claim_a == form.claim_b) {
      throw ParseError(Errc::MalformedStructure, render_pred(form.claim_b), claim_b_offset_,
                       "claimA and claimB are identical");
    }
    return form;
  }

 private:
  QPred pred() {
    skip_ws();
    claim_b_offset_ = pos_;
    QPred out;
    auto name_start = pos_;
    auto name = ident();
    auto lowered = text::to_lower(name);
    if (lowered == "qrel") {
      out.kind = PredKind::Qrel;
    } else if (lowered == "qval") {
      out.kind = PredKind::Qval;
    } else {
      throw ParseError(Errc::MalformedStructure, std::string(name), name_start,
                       "expected qrel or qval");
    }
    skip_ws();
    if (peek() != '(') fail(Errc::MalformedStructure, "expected '('");
    ++pos_;

    std::vector<std::pair<std::string_view, std::size_t>> args;
    while (true) {
      skip_ws();
      auto start = pos_;
      while (pos_ < src_.size() && src_[pos_] != ',' && src_[pos_] != ')' &&
             src_[pos_] != ';' && !at_arrow())
        ++pos_;
      auto arg = text::trim(src_.substr(start, pos_ - start));
      args.emplace_back(arg, start);
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        break;
      }
      fail(Errc::MalformedStructure, "unterminated predicate");
    }
    if (args.size() != 3) {
      throw ParseError(Errc::MalformedStructure, std::string(name), name_start,
                       "predicate takes 3 arguments, got " + std::to_string(args.size()));
    }
    auto prop = Property::find(args[0].first);
    if (!prop)
      throw ParseError(Errc::UnknownProperty, std::string(args[0].first), args[0].second,
                       "unknown property");
    auto dir = parse_direction(args[1].first);
    if (!dir)
      throw ParseError(Errc::UnknownDirection, std::string(args[1].first), args[1].second,
                       "unknown direction");
    auto world = parse_world(args[2].first);
    if (!world)
      throw ParseError(Errc::UnknownWorld, std::string(args[2].first), args[2].second,
                       "unknown world");
    out.property = *prop;
    out.direction = *dir;
    out.world = *world;
    return out;
  }

  std::string_view ident() {
    auto start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail(Errc::MalformedStructure, "expected predicate name");
    return src_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  bool at_arrow() const {
    auto rest = src_.substr(pos_);
    return rest.starts_with("->") || rest.starts_with("\xE2\x86\x92");
  }

  bool consume_arrow() {
    skip_ws();
    auto rest = src_.substr(pos_);
    if (rest.starts_with("->")) {
      pos_ += 2;
      return true;
    }
    if (rest.starts_with("\xE2\x86\x92")) {
      pos_ += 3;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(Errc code, const std::string& what) const {
    auto end = std::min(src_.size(), pos_ + 12);
    std::string token = pos_ < src_.size() ? std::string(src_.substr(pos_, end - pos_)) : "<end>";
    throw ParseError(code, token, pos_, what);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t claim_b_offset_ = 0;
};

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::Low ? "low" : "high"; }
std::string_view to_string(World w) { return w == World::World1 ? "world1" : "world2"; }
std::string_view to_string(Answer a) { return a == Answer::A ? "A" : "B"; }

std::optional<Direction> parse_direction(std::string_view s) {
  auto l = text::to_lower(text::trim(s));
  if (l == "low" || l == "lower") return Direction::Low;
  if (l == "high" || l == "higher") return Direction::High;
  return std::nullopt;
}

std::optional<World> parse_world(std::string_view s) {
  auto l = text::to_lower(text::trim(s));
  if (l == "world1") return World::World1;
  if (l == "world2") return World::World2;
  return std::nullopt;
}

std::optional<Answer> parse_answer(std::string_view s) {
  auto t = text::trim(s);
  if (t == "A" || t == "a") return Answer::A;
  if (t == "B" || t == "b") return Answer::B;
  return std::nullopt;
}

std::optional<Property> Property::find(std::string_view name) {
  auto l = text::to_lower(text::trim(name));
  for (std::size_t i = 0; i < kCount; ++i)
    if (kNames[i] == l) return Property(static_cast<std::uint8_t>(i));
  return std::nullopt;
}

Property Property::from_name(std::string_view name) {
  if (auto p = find(name)) return *p;
  throw Error(Errc::UnknownProperty, "unknown property '" + std::string(name) + "'");
}

Property Property::from_index(std::size_t index) {
  if (index >= kCount)
    throw Error(Errc::UnknownProperty, "property index " + std::to_string(index) + " out of range");
  return Property(static_cast<std::uint8_t>(index));
}

std::span<const Property> Property::all() {
  static const auto table = [] {
    std::array<Property, kCount> a{};
    for (std::size_t i = 0; i < kCount; ++i) a[i] = Property(static_cast<std::uint8_t>(i));
    return a;
  }();
  return table;
}

std::string_view Property::name() const { return kNames[id_]; }
std::string_view Property::display_name() const { return kDisplayNames[id_]; }

bool LogicalForm::identical(const LogicalForm& o) const {
  if (setup.size() != o.setup.size()) return false;
  for (std::size_t i = 0; i < setup.size(); ++i)
    if (!setup[i].identical(o.setup[i])) return false;
  return claim_a.identical(o.claim_a) && claim_b.identical(o.claim_b);
}

LogicalForm parse_logical_form(std::string_view text) { return FormParser(text).parse(); }

std::string render_pred(const QPred& pred) {
  std::string out = pred.kind == PredKind::Qrel ? "qrel(" : "qval(";
  out += pred.property.name();
  out += ", ";
  if (pred.kind == PredKind::Qrel)
    out += pred.direction == Direction::High ? "higher" : "lower";
  else
    out += to_string(pred.direction);
  out += ", ";
  out += to_string(pred.world);
  out += ')';
  return out;
}

std::string render_logical_form(const LogicalForm& form) {
  std::string out;
  for (std::size_t i = 0; i < form.setup.size(); ++i) {
    if (i) out += ", ";
    out += render_pred(form.setup[i]);
  }
  out += " -> ";
  out += render_pred(form.claim_a);
  out += " ; ";
  out += render_pred(form.claim_b);
  return out;
}

void Problem::validate() const {
  auto where = [this] { return "problem '" + id + "': "; };
  if (form.setup.empty()) throw Error(Errc::MalformedStructure, where() + "empty setup");
  if (text::trim(world1_literal).empty() || text::trim(world2_literal).empty())
    throw Error(Errc::MalformedStructure, where() + "world literals must be non-empty");
  if (text::trim(question).empty())
    throw Error(Errc::MalformedStructure, where() + "question is empty");
  if (!text::ends_with(text::trim(text), text::trim(question)))
    throw Error(Errc::MalformedStructure, where() + "question is not a suffix of text");
}

const std::string& literal_of(const Problem& problem, World w) {
  return w == World::World1 ? problem.world1_literal : problem.world2_literal;
}

}  // namespace quale
