#include "spacedcl/error.hpp"

namespace spacedcl {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse error";
    case ErrorKind::schema: return "schema error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::config: return "configuration error";
    case ErrorKind::transfer: return "transfer error";
    case ErrorKind::protocol: return "protocol error";
    case ErrorKind::convergence: return "convergence error";
  }
  return "error";
}

}  // namespace spacedcl
