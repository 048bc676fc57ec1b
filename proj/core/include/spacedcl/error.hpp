#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spacedcl {

enum class ErrorKind {
  parse,        // malformed input text
  schema,       // well-formed input that violates a file contract
  domain,       // argument outside an operation's domain
  config,       // invalid or inconsistent configuration
  transfer,     // curriculum cannot be mapped onto a target dataset
  protocol,     // calls issued out of order, misaligned arrays
  convergence,  // iterative solver failed to converge
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorKind::parse, what) {}
};
struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error(ErrorKind::schema, what) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};
struct TransferError : Error {
  explicit TransferError(const std::string& what) : Error(ErrorKind::transfer, what) {}
};
struct ProtocolError : Error {
  explicit ProtocolError(const std::string& what) : Error(ErrorKind::protocol, what) {}
};
struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& what) : Error(ErrorKind::convergence, what) {}
};

}  // namespace spacedcl
