#pragma once

#include <functional>
#include <string_view>

namespace spacedcl {

using LogSink = std::function<void(std::string_view)>;

/// Replaces the warning sink (default: stderr, rate-limited). Pass an empty
/// function to silence warnings.
void set_warning_sink(LogSink sink);
void log_warning(std::string_view message);

}  // namespace spacedcl
