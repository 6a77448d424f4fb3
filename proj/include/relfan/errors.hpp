#pragma once

#include <stdexcept>
#include <string>

namespace relfan {

/// Input could not be read (malformed JSON, bad number syntax, schema).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition or invariant failed. `kind` names the
/// failure so callers and reports can match on it.
class MathError : public std::runtime_error {
 public:
  MathError(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

inline MathError precondition_violated(const std::string& what) {
  return MathError("PreconditionViolated", what);
}

}  // namespace relfan
