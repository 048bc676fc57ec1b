#include "spacedcl/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>
#include <string>

namespace spacedcl {

namespace {

constexpr int kDefaultSinkLimit = 8;

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

LogSink& sink() {
  static LogSink s = [](std::string_view msg) {
    static std::atomic<int> emitted{0};
    const int n = emitted.fetch_add(1);
    if (n < kDefaultSinkLimit) {
      std::cerr << "warning: " << msg << '\n';
    } else if (n == kDefaultSinkLimit) {
      std::cerr << "warning: further warnings suppressed\n";
    }
  };
  return s;
}

}  // namespace

void set_warning_sink(LogSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void log_warning(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

}  // namespace spacedcl
