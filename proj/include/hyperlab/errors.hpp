#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperlab {

enum class ErrorKind {
  DivisionByZero,
  NotFinite,
  PoleAtPoint,
  EmptyWindow,
  DomainError,
  ModeError,
  SyntaxError,
  UnknownFunction,
  NonIntegerExponent,
  UnboundVariable,
  NotAvailable,
  NonDifferentiableNode,
  NotDifferentiableHere,
  WindowTooSmall,
  UndefinedTerm,
  NotRepresentable,
  IndexOutOfRange,
  EmptyScene,
  InvalidArgument,
};

constexpr std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ModeError: return "ModeError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::NotAvailable: return "NotAvailable";
    case ErrorKind::NonDifferentiableNode: return "NonDifferentiableNode";
    case ErrorKind::NotDifferentiableHere: return "NotDifferentiableHere";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::UndefinedTerm: return "UndefinedTerm";
    case ErrorKind::NotRepresentable: return "NotRepresentable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyScene: return "EmptyScene";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `kind()` is the stable,
/// machine-readable name; `what()` is a human explanation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the byte offset into the source and the set of
/// tokens that would have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
      : Error(ErrorKind::SyntaxError, format(offset, expected, found)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += (i + 1 == expected.size()) ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace hyperlab
