#include "cardio/format.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace cardio {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

}  // namespace cardio
