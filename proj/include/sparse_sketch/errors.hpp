#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparse_sketch {

// Malformed input file or record. Carries the 1-based line number when known.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A documented precondition of an algorithm does not hold for the given input.
class PreconditionError : public std::runtime_error {
 public:
  enum class Kind { kColumns, kShape, kOther };

  PreconditionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A guarantee that must hold deterministically was observed to fail.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sparse_sketch
