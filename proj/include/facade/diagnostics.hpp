#pragma once

#include <functional>
#include <string_view>

namespace facade {

using WarningHandler = std::function<void(std::string_view)>;

// Replaces the warning sink (stderr by default) and returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace facade
