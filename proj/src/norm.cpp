#include "sparse_sketch/norm.hpp"

#include <charconv>
#include <stdexcept>

#include "sparse_sketch/format.hpp"

namespace sparse_sketch {

Norm Norm::lp(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw std::invalid_argument("norm exponent must be a finite p >= 1, got " + format_double(p));
  }
  return Norm(p, false);
}

std::string Norm::to_string() const { return infinite_ ? "inf" : format_double(p_); }

Norm Norm::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return linf();
  double p = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, p);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("cannot parse norm '" + text + "'");
  return lp(p);
}

}  // namespace sparse_sketch
