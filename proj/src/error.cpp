#include "quale/error.hpp"

namespace quale {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnknownProperty: return "UnknownProperty";
    case Errc::UnknownDirection: return "UnknownDirection";
    case Errc::UnknownWorld: return "UnknownWorld";
    case Errc::MalformedStructure: return "MalformedStructure";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::ContradictoryClosure: return "ContradictoryClosure";
    case Errc::EmptyNounPhraseSet: return "EmptyNounPhraseSet";
    case Errc::InvalidScore: return "InvalidScore";
    case Errc::RemoteUnavailable: return "RemoteUnavailable";
    case Errc::ProtocolError: return "ProtocolError";
    case Errc::Timeout: return "Timeout";
    case Errc::DegenerateLabelDistribution: return "DegenerateLabelDistribution";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::LabelConflict: return "LabelConflict";
    case Errc::MissingGold: return "MissingGold";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

ParseError::ParseError(Errc code, std::string token, std::size_t offset,
                       const std::string& detail)
    : Error(code, detail + " (token '" + token + "' at byte " + std::to_string(offset) + ")"),
      token_(std::move(token)),
      offset_(offset) {}

ScorerError::ScorerError(Errc code, std::size_t index, const std::string& detail)
    : Error(code, detail + " (pair " + std::to_string(index) + ")"), index_(index) {}

}  // namespace quale
