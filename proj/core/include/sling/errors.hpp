#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sling {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (edge lists, CLI values that parse but are invalid).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}

  // 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Out-of-range arguments and violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Refusal to allocate beyond a configured cap (dense oracle, MC walk store).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Index file problems: bad magic, unsupported version, checksum mismatch,
// truncation, or an index that was built for a different graph.
class FormatError : public Error {
 public:
  enum class Kind { kBadMagic, kBadVersion, kChecksum, kTruncated, kGraphMismatch, kIo, kUnsupported };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace sling
