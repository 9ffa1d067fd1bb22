#include "quale/templates.hpp"

#include <algorithm>
#include <charconv>

#include "quale/error.hpp"
#include "quale/text.hpp"

namespace quale {

std::string instantiate(const Template& t, std::string_view literal) {
  if (text::trim(literal).empty())
    throw Error(Errc::InvalidArgument, "cannot instantiate '" + t.pattern + "' with an empty literal");
  std::string filled = t.pattern;
  auto x = filled.find('X');
  filled.replace(x, 1, text::trim(literal));
  return text::normalize(filled);
}

TemplateTable TemplateTable::parse(std::string_view text, Coverage coverage) {
  TemplateTable table;
  for (const auto& line : text::config_lines(text)) {
    auto fields = text::split_ws(line.content);
    auto where = "line " + std::to_string(line.line_no);
    auto offset_of = [&](std::string_view f) {
      return line.offset + static_cast<std::size_t>(f.data() - line.content.data());
    };
    if (fields.size() < 4) {
      throw ParseError(Errc::MalformedLine, std::string(line.content), line.offset,
                       where + ": expected '<property> <low|high> <ordinal> <pattern>'");
    }
    auto prop = Property::find(fields[0]);
    if (!prop)
      throw ParseError(Errc::UnknownProperty, std::string(fields[0]), offset_of(fields[0]),
                       where + ": unknown property");
    auto dir = parse_direction(fields[1]);
    if (!dir)
      throw ParseError(Errc::UnknownDirection, std::string(fields[1]), offset_of(fields[1]),
                       where + ": unknown direction");
    int ordinal = -1;
    auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), ordinal);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() || ordinal < 0)
      throw ParseError(Errc::MalformedLine, std::string(fields[2]), offset_of(fields[2]),
                       where + ": ordinal must be a non-negative integer");
    auto pattern_start = static_cast<std::size_t>(fields[3].data() - line.content.data());
    std::string pattern(text::trim(line.content.substr(pattern_start)));
    if (std::count(pattern.begin(), pattern.end(), 'X') != 1)
      throw ParseError(Errc::MalformedLine, pattern, offset_of(fields[3]),
                       where + ": pattern must contain exactly one X");

    auto& group = table.groups_[slot(*prop, *dir)];
    if (static_cast<std::size_t>(ordinal) != group.size())
      throw ParseError(Errc::MalformedLine, std::string(fields[2]), offset_of(fields[2]),
                       where + ": ordinals within a group must run 0, 1, 2, ...");
    Template t{*prop, *dir, ordinal, std::move(pattern)};
    group.push_back(t);
    table.templates_.push_back(std::move(t));
  }
  if (coverage == Coverage::Complete) {
    for (auto p : Property::all())
      for (auto d : kDirections)
        if (table.groups_[slot(p, d)].empty())
          throw Error(Errc::MalformedStructure, "no template for (" +
                                                    std::string(p.display_name()) + ", " +
                                                    std::string(to_string(d)) + ")");
  }
  return table;
}

std::span<const Template> TemplateTable::templates_for(Property p, Direction d) const {
  return groups_[slot(p, d)];
}

std::string TemplateTable::generate(Property p, Direction d, std::string_view literal) const {
  const auto& group = groups_[slot(p, d)];
  if (group.empty())
    throw Error(Errc::InvalidArgument, "no template for (" + std::string(p.display_name()) +
                                           ", " + std::string(to_string(d)) + ")");
  return instantiate(group.front(), literal);
}

std::vector<std::string> TemplateTable::instantiate_all(Property p, Direction d,
                                                        std::string_view literal) const {
  std::vector<std::string> out;
  for (const auto& t : groups_[slot(p, d)]) out.push_back(instantiate(t, literal));
  return out;
}

}  // namespace quale
