#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nbl {

// Base of every exception thrown by the library. The CLI maps
// BudgetExceeded to exit status 2 and everything else to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Group order (or subgroup-enumeration order) above the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Generators that are not permutations of the declared degree, and similar
// malformed-but-parseable input.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// An element handed to an operation does not belong to the group it is
// supposed to live in.
class ForeignElement : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string phase, std::string what, std::uint64_t progress)
      : Error("budget exceeded during " + phase + ": " + what),
        phase_(std::move(phase)),
        progress_(progress) {}

  const std::string& phase() const noexcept { return phase_; }
  // Work units completed before the budget tripped (tuples or states).
  std::uint64_t progress() const noexcept { return progress_; }

 private:
  std::string phase_;
  std::uint64_t progress_;
};

// A central extension failed validation. `invariant` is one of
// "not-homomorphism", "not-surjective", "kernel-not-central",
// "not-c-admissible", "bad-lift", "bad-class".
class ExtensionRejected : public Error {
 public:
  ExtensionRejected(std::string invariant, std::string witness)
      : Error("extension rejected (" + invariant + "): " + witness),
        invariant_(std::move(invariant)),
        witness_(std::move(witness)) {}

  const std::string& invariant() const noexcept { return invariant_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string invariant_;
  std::string witness_;
};

}  // namespace nbl
