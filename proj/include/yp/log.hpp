#pragma once

#include <functional>
#include <string>

namespace yp {

/// The library never prints. Advisory messages (hypothesis checks that fail
/// but do not block a computation) go to a sink the application installs.
void set_warning_sink(std::function<void(const std::string&)> sink);
void warn(const std::string& message);

}  // namespace yp
