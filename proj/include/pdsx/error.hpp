#pragma once

#include <stdexcept>
#include <string>

namespace pdsx {

// Broad failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Parse,               // malformed text or JSON
  InvalidInput,        // well-formed but violates a documented precondition
  DimensionMismatch,   // matrices or families of inconsistent size
  TruncationOverflow,  // a check needs group elements beyond the materialized ball
  Guard,               // a size guard refused an enumeration
  NoWitness,           // a constructive routine could not find what it promised
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Size guards can be lifted for benchmarking via PDSX_GUARD_OVERRIDE.
bool guards_overridden();

}  // namespace pdsx
