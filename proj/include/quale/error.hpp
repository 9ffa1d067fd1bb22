#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quale {

enum class Errc {
  UnknownProperty,
  UnknownDirection,
  UnknownWorld,
  MalformedStructure,
  MalformedLine,
  ContradictoryClosure,
  EmptyNounPhraseSet,
  InvalidScore,
  RemoteUnavailable,
  ProtocolError,
  Timeout,
  DegenerateLabelDistribution,
  UnknownLabel,
  LabelConflict,
  MissingGold,
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code);

// Base exception for everything the library reports. what() carries the
// error name followed by a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

// Raised by the annotation and config parsers. offset is a byte offset into
// the parsed text.
class ParseError : public Error {
 public:
  ParseError(Errc code, std::string token, std::size_t offset, const std::string& detail);

  const std::string& token() const noexcept { return token_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string token_;
  std::size_t offset_;
};

// A scorer failed on one pair of a batch; index is the position of the
// first failing pair within the batch handed to score_all.
class ScorerError : public Error {
 public:
  ScorerError(Errc code, std::size_t index, const std::string& detail);

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace quale
