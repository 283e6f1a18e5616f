#pragma once

#include <stdexcept>
#include <string>

namespace pfa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates a precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input file is structurally malformed (ragged rows, empty file).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A cell could not be parsed as a finite real number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what), row_(row), column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Contingency table with a zero expected cell.
class DegenerateTableError : public Error {
 public:
  using Error::Error;
};

/// Requested a vertex cut of a complete graph.
class NoCutExistsError : public Error {
 public:
  using Error::Error;
};

}  // namespace pfa
