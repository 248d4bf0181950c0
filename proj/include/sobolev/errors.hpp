#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sobolev {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Mismatched vector/matrix dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite input where a finite value is required.
class DomainError : public Error {
 public:
  using Error::Error;
};

// (D + lambda I) is numerically singular. Carries the smallest eigenvalue of D.
class SingularGramian : public Error {
 public:
  SingularGramian(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// Witness normalization requested for a zero discrepancy.
class DegenerateWitness : public Error {
 public:
  using Error::Error;
};

// Principal direction requested for an eigenvalue below the rank tolerance.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

// Input file could not be parsed. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sobolev
