#pragma once

#include <string>

namespace sparse_sketch {

// Shortest decimal string that parses back to exactly v ("inf", "-inf", "nan"
// for non-finite values). Identical across platforms with a conforming
// std::to_chars.
std::string format_double(double v);

// Parses a complete decimal double; throws std::invalid_argument otherwise.
double parse_double(const std::string& text);

}  // namespace sparse_sketch
