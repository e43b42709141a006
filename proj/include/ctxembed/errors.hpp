#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctxembed {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The quantity is undefined for this kind of graph (e.g. reciprocity of an
/// undirected graph).
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, long iterations)
      : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxembed
