#include "declab/io.hpp"

#include <charconv>
#include <system_error>

namespace declab {

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace declab
