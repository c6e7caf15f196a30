#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsearch {

enum class ErrorKind {
  invalid_node,   // node ID outside [0, N)
  invalid_config, // generator / search / plan parameters violate their invariants
  parse,          // malformed topology or record file
  io,             // file could not be opened, read or written
  precondition,   // input violates an operation's precondition (e.g. non-simple route)
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind is machine-readable; the
/// message names the offending value (edge, line number, field).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dsearch
