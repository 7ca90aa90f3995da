#ifndef PERMEXT_ERRORS_HPP
#define PERMEXT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace permext {

/// Precondition failure on caller-supplied data (bad dimensions, out-of-range
/// indices, malformed permutations, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive operation refused to run because the instance is larger than
/// the configured enumeration cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A lemma of the lower-bound argument does not apply to the supplied section.
/// The audit turns this into an "inconclusive" verdict.
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(std::string lemma, const std::string& what)
      : std::runtime_error(lemma + ": " + what), lemma_(std::move(lemma)) {}

  const std::string& lemma() const { return lemma_; }

 private:
  std::string lemma_;
};

}  // namespace permext

#endif  // PERMEXT_ERRORS_HPP
