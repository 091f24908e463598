#pragma once

#include <string>

namespace condlab {

/// Shortest round-trip decimal representation (locale independent).
std::string format_number(double value);

}  // namespace condlab
