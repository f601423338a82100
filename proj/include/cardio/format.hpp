#pragma once

#include <string>

namespace cardio {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace cardio
