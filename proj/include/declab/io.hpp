#pragma once

#include <string>

namespace declab {

/// Shortest round-trip decimal form of v; byte-stable across runs.
std::string format_double(double v);

}  // namespace declab
