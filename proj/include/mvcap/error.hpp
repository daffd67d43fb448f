#pragma once

#include <stdexcept>
#include <string>

namespace mvcap {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  RepresentationBlowup,
  DegenerateBody,
  Precondition,
  IllConditioned,
  ClassViolation,
  Parse,
};

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace mvcap
