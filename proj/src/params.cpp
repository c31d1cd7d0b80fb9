#include "sparse_sketch/params.hpp"

#include <cmath>
#include <stdexcept>

namespace sparse_sketch {
namespace {

std::uint64_t ceil_count(double v) {
  if (!std::isfinite(v) || v > 9.0e15) throw std::invalid_argument("planned dimension overflows");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
}

}  // namespace

std::string to_string(EmbedMode mode) {
  switch (mode) {
    case EmbedMode::kAllP: return "all-p";
    case EmbedMode::kLinfExact: return "linf-exact";
    case EmbedMode::kSumLinf: return "sum-linf";
    case EmbedMode::kSumLp: return "sum-lp";
    case EmbedMode::kDiscrete: return "discrete";
  }
  return "unknown";
}

EmbedMode parse_embed_mode(const std::string& name) {
  for (auto mode : {EmbedMode::kAllP, EmbedMode::kLinfExact, EmbedMode::kSumLinf, EmbedMode::kSumLp,
                    EmbedMode::kDiscrete}) {
    if (to_string(mode) == name) return mode;
  }
  throw std::invalid_argument("unknown embedding mode '" + name + "'");
}

EmbedParams plan_params(const PlanRequest& request, const PlanConstants& c) {
  if (!(request.eps > 0.0 && request.eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (request.s < 1) throw std::invalid_argument("sparsity s must be >= 1");
  if (request.n < 2) throw std::invalid_argument("dataset size n must be >= 2");

  EmbedParams out;
  out.mode = request.mode;
  out.s = request.s;
  out.n = request.n;
  out.eps = request.eps;
  const double s = static_cast<double>(request.s);
  const double n = static_cast<double>(request.n);
  const double eps = request.eps;

  switch (request.mode) {
    case EmbedMode::kAllP:
      out.m = ceil_count(c.allp_m * s / eps);
      out.T = ceil_count(c.allp_t * std::log(n * s) / eps);
      break;
    case EmbedMode::kLinfExact:
      out.m = ceil_count(c.linf_m * s);
      out.T = ceil_count(c.linf_t * std::log(n)) + 1;
      break;
    case EmbedMode::kSumLinf:
      out.m = 1;
      out.T = 1;
      break;
    case EmbedMode::kSumLp: {
      if (!request.p || *request.p < 1.0) throw std::invalid_argument("sum-lp mode requires p >= 1");
      const double growth = std::pow(c.sum_exponent_base, *request.p);
      out.p = request.p;
      out.m = ceil_count(c.sum_m * s * s * growth / eps);
      out.T = ceil_count(c.sum_t * std::log(n) * growth / eps);
      break;
    }
    case EmbedMode::kDiscrete: {
      if (!request.delta || *request.delta < 1) throw std::invalid_argument("discrete mode requires integer Delta >= 1");
      if (!request.p || *request.p < 1.0) throw std::invalid_argument("discrete mode requires p >= 1");
      const double growth = std::pow(2.0 * *request.delta, *request.p);
      out.delta = request.delta;
      out.p = request.p;
      out.m = ceil_count(c.discrete_m * s * s * growth / eps);
      out.T = ceil_count(c.discrete_t * std::log(n) * growth / eps);
      break;
    }
  }
  return out;
}

nlohmann::json to_json(const EmbedParams& params) {
  nlohmann::json j;
  j["mode"] = to_string(params.mode);
  j["s"] = params.s;
  j["n"] = params.n;
  j["eps"] = params.eps;
  j["delta"] = params.delta ? nlohmann::json(*params.delta) : nlohmann::json(nullptr);
  j["p"] = params.p ? nlohmann::json(*params.p) : nlohmann::json(nullptr);
  j["m"] = params.m;
  j["T"] = params.T;
  j["seed"] = params.seed;
  return j;
}

EmbedParams embed_params_from_json(const nlohmann::json& j) {
  try {
    EmbedParams out;
    out.mode = parse_embed_mode(j.at("mode").get<std::string>());
    out.s = j.at("s").get<std::size_t>();
    out.n = j.at("n").get<std::size_t>();
    out.eps = j.at("eps").get<double>();
    if (j.contains("delta") && !j["delta"].is_null()) out.delta = j["delta"].get<int>();
    if (j.contains("p") && !j["p"].is_null()) out.p = j["p"].get<double>();
    out.m = j.at("m").get<std::uint64_t>();
    out.T = j.at("T").get<std::uint64_t>();
    out.seed = j.at("seed").get<std::uint64_t>();
    if (out.m < 1 || out.T < 1) throw std::invalid_argument("m and T must be >= 1");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed embedding parameters: ") + e.what());
  }
}

}  // namespace sparse_sketch
