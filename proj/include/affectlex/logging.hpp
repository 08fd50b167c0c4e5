#pragma once

#include <functional>
#include <string>

namespace affectlex::logging {

using Sink = std::function<void(const std::string&)>;

// Replaces the warning sink (default: stderr). Returns the previous sink.
// Tests use this to capture warnings; pass nullptr to restore the default.
Sink set_warning_sink(Sink sink);

void warn(const std::string& message);
void info(const std::string& message);

}  // namespace affectlex::logging
