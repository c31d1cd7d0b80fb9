#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace sparse_sketch {

enum class EmbedMode {
  kAllP,       // every finite p simultaneously, ratio of p-th powers in 1 +- eps
  kLinfExact,  // l_inf distances preserved exactly
  kSumLinf,    // l_inf norm of sums within [1, 2], one coordinate
  kSumLp,      // l_p norm of sums within 1 +- eps
  kDiscrete,   // signed entries from {-Delta..Delta}
};

std::string to_string(EmbedMode mode);
// Accepts the names produced by to_string; throws std::invalid_argument.
EmbedMode parse_embed_mode(const std::string& name);

// Scale factors for the constants hidden in the asymptotic parameter bounds.
// The defaults are this library's choices:
//   all-p       m = ceil(allp_m * s / eps),               T = ceil(allp_t * ln(n s) / eps)
//   linf-exact  m = linf_m * s,                           T = ceil(linf_t * ln n) + 1
//   sum-linf    m = 1,                                    T = 1
//   sum-lp      m = ceil(sum_m * s^2 * base^p / eps),     T = ceil(sum_t * ln n * base^p / eps)
//   discrete    m = ceil(discrete_m * s^2 (2 Delta)^p / eps), T = ceil(discrete_t * ln n (2 Delta)^p / eps)
// With allp_m = 200 the chance that a fixed support coordinate shares its
// bucket with one of the other <= 2s - 1 coordinates is at most eps / 100.
struct PlanConstants {
  double allp_m = 200.0;
  double allp_t = 50.0;
  double linf_m = 20.0;
  double linf_t = 3.0;
  double sum_m = 100.0;
  double sum_t = 50.0;
  double sum_exponent_base = 2.0;
  double discrete_m = 100.0;
  double discrete_t = 50.0;
};

struct PlanRequest {
  EmbedMode mode = EmbedMode::kAllP;
  std::size_t s = 1;
  std::size_t n = 2;
  double eps = 0.1;
  std::optional<int> delta;  // discrete only
  std::optional<double> p;   // discrete and sum-lp
};

// Parameters of a stacked embedding: the request that produced them plus
// the resulting bucket count m per copy, the copy count T and the hash seed.
struct EmbedParams {
  EmbedMode mode = EmbedMode::kAllP;
  std::size_t s = 1;
  std::size_t n = 2;
  double eps = 0.1;
  std::optional<int> delta;
  std::optional<double> p;
  std::uint64_t m = 1;
  std::uint64_t T = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const EmbedParams&, const EmbedParams&) = default;
};

// Validates the request (0 < eps < 1, s >= 1, n >= 2, Delta >= 1 and p >= 1
// where required) and applies the formulas of PlanConstants. seed is 0.
EmbedParams plan_params(const PlanRequest& request, const PlanConstants& constants = {});

nlohmann::json to_json(const EmbedParams& params);
EmbedParams embed_params_from_json(const nlohmann::json& j);

}  // namespace sparse_sketch
