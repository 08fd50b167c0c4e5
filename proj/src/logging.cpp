#include "affectlex/logging.hpp"

#include <iostream>

namespace affectlex::logging {

namespace {

void default_warn(const std::string& message) {
  std::cerr << "[warn] " << message << "\n";
}

Sink& warning_sink() {
  static Sink sink = default_warn;
  return sink;
}

}  // namespace

Sink set_warning_sink(Sink sink) {
  Sink previous = warning_sink();
  warning_sink() = sink ? std::move(sink) : default_warn;
  return previous;
}

void warn(const std::string& message) { warning_sink()(message); }

void info(const std::string& message) {
  std::cerr << "[info] " << message << "\n";
}

}  // namespace affectlex::logging
