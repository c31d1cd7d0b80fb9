#pragma once

#include <cmath>
#include <string>

namespace sparse_sketch {

// An l_p norm selector: a finite p >= 1 or the distinguished l_inf marker.
class Norm {
 public:
  // Throws std::invalid_argument for p < 1 or non-finite p.
  static Norm lp(double p);
  static constexpr Norm linf() { return Norm(0.0, true); }

  constexpr bool is_infinite() const { return infinite_; }
  // Meaningless for l_inf.
  constexpr double p() const { return p_; }

  // "inf" or the decimal value of p.
  std::string to_string() const;
  // Accepts "inf", "infinity" or a decimal p >= 1.
  static Norm parse(const std::string& text);

  friend constexpr bool operator==(const Norm&, const Norm&) = default;

 private:
  constexpr Norm(double p, bool infinite) : p_(p), infinite_(infinite) {}

  double p_;
  bool infinite_;
};

// |v|^p with exact repeated multiplication for small integral p.
inline double pow_abs(double v, double p) {
  const double a = std::fabs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 4.0) {
    const double sq = a * a;
    return sq * sq;
  }
  if (p == 3.0) return a * a * a;
  return std::pow(a, p);
}

}  // namespace sparse_sketch
