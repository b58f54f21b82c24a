#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pegtwin {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A move that does not satisfy the jump rules on the given board.
class IllegalMoveError : public Error {
 public:
  enum class Reason { kFromEmpty, kOverEmpty, kToOccupied, kGeometry };

  IllegalMoveError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

const char* to_string(IllegalMoveError::Reason reason);

// Malformed transmission file; `line` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A move sequence that fails to replay; `row` is the 1-based data row.
class SequenceError : public Error {
 public:
  SequenceError(int row, const std::string& what,
                std::optional<IllegalMoveError::Reason> reason = std::nullopt)
      : Error(row > 0 ? "row " + std::to_string(row) + ": " + what : what),
        row_(row),
        reason_(reason) {}

  int row() const { return row_; }
  // Set when the row was an illegal move rather than a bookkeeping mismatch.
  std::optional<IllegalMoveError::Reason> reason() const { return reason_; }

 private:
  int row_;
  std::optional<IllegalMoveError::Reason> reason_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Filesystem or format failure in the tree store.
class StoreError : public Error {
 public:
  using Error::Error;
};

// Stored data that violates the tree invariants.
class CorruptionError : public StoreError {
 public:
  using StoreError::StoreError;
};

}  // namespace pegtwin
