#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <unordered_set>

#include "commands.hpp"
#include "sparse_sketch/embeddings.hpp"
#include "sparse_sketch/errors.hpp"
#include "sparse_sketch/format.hpp"
#include "sparse_sketch/hashing.hpp"
#include "sparse_sketch/pairwise.hpp"
#include "sparse_sketch/parallel.hpp"
#include "sparse_sketch/params.hpp"
#include "sparse_sketch/rng.hpp"

namespace sparse_sketch::cli {
namespace {

bool is_sum_mode(EmbedMode mode) { return mode == EmbedMode::kSumLinf || mode == EmbedMode::kSumLp; }

void check_entries(const Dataset& data, const EmbedParams& params) {
  for (const auto& item : data.items()) {
    for (const auto& e : item.vector.entries()) {
      if (params.mode == EmbedMode::kDiscrete) {
        const int delta = params.delta.value_or(0);
        if (e.value != std::round(e.value) || std::fabs(e.value) > delta) {
          throw PreconditionError(PreconditionError::Kind::kOther,
                                  "vector '" + item.id + "' has entry " + format_double(e.value) +
                                      " outside the integers in [-" + std::to_string(delta) + ", " +
                                      std::to_string(delta) + "]");
        }
      } else if (e.value < 0.0) {
        throw PreconditionError(PreconditionError::Kind::kOther,
                                "mode " + to_string(params.mode) + " needs non-negative entries; vector '" +
                                    item.id + "' has " + format_double(e.value));
      }
    }
  }
}

EmbedParams plan_from_flags(const RunConfig& config, const Dataset& data) {
  PlanRequest request;
  request.mode = parse_embed_mode(config.mode);
  request.s = config.has("s") ? config.s : std::max<std::size_t>(1, data.max_sparsity());
  request.n = config.has("n") ? config.n : std::max<std::size_t>(2, data.size());
  request.eps = config.eps;
  if (config.has("delta")) request.delta = config.delta;
  const bool needs_p = request.mode == EmbedMode::kSumLp || request.mode == EmbedMode::kDiscrete;
  if (needs_p && !config.p.empty()) {
    // The first listed exponent drives the plan.
    const Norm norm = parse_norm_list(config.p).front();
    if (norm.is_infinite()) throw std::invalid_argument("--p must be finite for mode " + config.mode);
    request.p = norm.p();
  }
  return plan_params(request);
}

EmbedParams read_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return embed_params_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

EmbedParams resolve_params(const RunConfig& config, const Dataset& data, bool params_is_input) {
  EmbedParams params = params_is_input && !config.params.empty() ? read_params_file(config.params)
                                                                 : plan_from_flags(config, data);
  if (config.has("m")) params.m = config.m;
  if (config.has("T")) params.T = config.T;
  if (params.m < 1 || params.T < 1) throw std::invalid_argument("--m and --T must be >= 1");
  if (!(params_is_input && !config.params.empty()) || config.has("seed")) params.seed = config.seed;
  return params;
}

// Linear baseline: each coordinate is added with a pseudo-random sign into
// one of m buckets.
class SignedSumHash {
 public:
  SignedSumHash(std::uint64_t seed, std::uint64_t m)
      : hasher_(HashSpec{derive_seed(seed, "sum-hash-baseline"), 0, m}),
        sign_key_(derive_seed(seed, "sum-hash-sign")) {}

  // Sparse image over hasher_.buckets() coordinates.
  SparseVector apply(const SparseVector& x) const {
    std::map<Index, double> buckets;
    for (const auto& e : x.entries()) {
      const double sign = (mix64(e.index ^ sign_key_) >> 63) != 0 ? -1.0 : 1.0;
      buckets[hasher_(e.index)] += sign * e.value;
    }
    std::vector<Entry> entries;
    for (const auto& [index, value] : buckets) entries.push_back({index, value});
    return SparseVector(hasher_.buckets(), std::move(entries));
  }

 private:
  BucketHasher hasher_;
  std::uint64_t sign_key_;
};

std::vector<Norm> default_norms(const EmbedParams& params) {
  switch (params.mode) {
    case EmbedMode::kAllP: return {Norm::lp(1.0), Norm::lp(2.0), Norm::lp(4.0)};
    case EmbedMode::kLinfExact:
    case EmbedMode::kSumLinf: return {Norm::linf()};
    case EmbedMode::kSumLp:
    case EmbedMode::kDiscrete: return {Norm::lp(params.p.value_or(2.0))};
  }
  return {Norm::linf()};
}

struct Row {
  std::string pair;
  std::size_t map;
  std::size_t norm;
  double truth;
  double sketch;
};

}  // namespace

int cmd_embed(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const EmbedParams params = resolve_params(config, data, false);
  check_entries(data, params);
  const StackedEmbedding F(params);

  std::string params_path = config.params;
  if (params_path.empty() && !config.output.empty()) params_path = config.output + ".params.json";

  nlohmann::json echo = base_echo(config);
  echo["params"] = to_json(params);
  Report report(config, out, echo);
  std::ostream& csv = report.stream();
  csv << "id";
  for (std::uint64_t c = 0; c < F.output_dim(); ++c) csv << ",v" << c;
  csv << '\n';

  std::vector<std::string> lines(data.size());
  parallel_for(data.size(), config.threads, [&](std::size_t i) {
    std::string line = csv_field(data[i].id);
    for (double v : F.embed(data.vector(i))) {
      line += ',';
      line += format_double(v);
    }
    lines[i] = std::move(line);
  });
  for (const auto& line : lines) csv << line << '\n';
  report.finish();

  if (!params_path.empty()) {
    std::ofstream file(params_path, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write " + params_path);
    file << to_json(params).dump(2) << '\n';
    if (!file) throw InputError("failed writing " + params_path);
  }
  return 0;
}

int cmd_distort(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const EmbedParams params = resolve_params(config, data, true);
  check_entries(data, params);
  const StackedEmbedding F(params);
  const std::vector<Norm> norms = config.p.empty() ? default_norms(params) : parse_norm_list(config.p);
  const bool sums = is_sum_mode(params.mode);
  const bool baseline = config.baseline == "sum-hash";
  if (!baseline && config.baseline != "none") throw std::invalid_argument("--baseline must be none or sum-hash");
  const std::vector<std::string> map_names = baseline ? std::vector<std::string>{"max-hash", "sum-hash"}
                                                      : std::vector<std::string>{"max-hash"};

  // Pair list: (i, j) with j == n meaning the zero vector.
  const std::size_t n = data.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (config.vs_zero) {
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(i, n);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
  }
  const SparseVector zero(data.dim(), {});
  auto vec = [&](std::size_t i) -> const SparseVector& { return i == n ? zero : data.vector(i); };
  auto pair_id = [&](std::size_t i, std::size_t j) {
    if (j == n) return data[i].id;
    return data[i].id + (sums ? "+" : "|") + data[j].id;
  };

  std::unique_ptr<PairwiseSketchDistances> pairwise;
  if (!sums && !config.vs_zero) pairwise = std::make_unique<PairwiseSketchDistances>(F, data, norms);

  const SignedSumHash sum_hash(params.seed, params.m * params.T);
  std::vector<SparseVector> baseline_images;
  if (baseline) {
    baseline_images.resize(n + 1);
    parallel_for(n + 1, config.threads, [&](std::size_t i) { baseline_images[i] = sum_hash.apply(vec(i)); });
  }

  const std::size_t per_pair = map_names.size() * norms.size();
  std::vector<Row> rows(pairs.size() * per_pair);
  parallel_for(pairs.size(), config.threads, [&](std::size_t pi) {
    const auto [i, j] = pairs[pi];
    const SparseVector& x = vec(i);
    const SparseVector& y = vec(j);
    const SparseVector combined = sums ? sum_vectors(x, y) : SparseVector();
    for (std::size_t q = 0; q < norms.size(); ++q) {
      const Norm norm = norms[q];
      const double truth = sums ? lp_norm(combined, norm) : lp_dist(x, y, norm);
      double sketch;
      if (sums) {
        sketch = (params.m == 1 && params.T == 1 && norm.is_infinite()) ? estimate_sum_norm(F, x, y)
                                                                        : estimate_sum_lp(F, x, y, norm);
      } else if (pairwise) {
        sketch = pairwise->estimate(q, i, j);
      } else {
        sketch = estimate_distance(F, x, y, norm);
      }
      rows[pi * per_pair + q] = {pair_id(i, j), 0, q, truth, sketch};
      if (baseline) {
        const auto& a = baseline_images[i];
        const auto& b = baseline_images[j];
        const double linear = sums ? lp_norm(sum_vectors(a, b), norm) : lp_dist(a, b, norm);
        rows[pi * per_pair + norms.size() + q] = {pair_id(i, j), 1, q, truth, linear};
      }
    }
  });

  nlohmann::json echo = base_echo(config);
  echo["params"] = to_json(params);
  echo["norms"] = nlohmann::json::array();
  for (const Norm& norm : norms) echo["norms"].push_back(norm.to_string());
  echo["compare"] = config.vs_zero ? "vs-zero" : (sums ? "pair-sums" : "pair-differences");
  if (baseline) echo["baseline"] = "sum-hash: linear signed hash-and-add map to m*T buckets";
  Report report(config, out, echo);
  std::ostream& csv = report.stream();
  csv << "pair,map,p,true,embedded,ratio\n";
  std::vector<double> max_ratio(per_pair, 0.0);
  std::vector<double> sum_ratio(per_pair, 0.0);
  for (const Row& row : rows) {
    const double r = ratio(row.sketch, row.truth);
    const std::size_t slot = row.map * norms.size() + row.norm;
    max_ratio[slot] = std::max(max_ratio[slot], r);
    sum_ratio[slot] += r;
    csv << csv_field(row.pair) << ',' << map_names[row.map] << ',' << norms[row.norm].to_string() << ','
        << format_double(row.truth) << ',' << format_double(row.sketch) << ',' << format_double(r) << '\n';
  }
  if (!pairs.empty()) {
    for (std::size_t map = 0; map < map_names.size(); ++map) {
      for (std::size_t q = 0; q < norms.size(); ++q) {
        const std::size_t slot = map * norms.size() + q;
        const std::string prefix = map_names[map] + ',' + norms[q].to_string() + ",,,";
        csv << "summary:max," << prefix << format_double(max_ratio[slot]) << '\n';
        csv << "summary:mean," << prefix << format_double(sum_ratio[slot] / static_cast<double>(pairs.size()))
            << '\n';
      }
    }
  }
  report.finish();
  return 0;
}

int cmd_generate(const RunConfig& config, std::ostream& out) {
  const Index dim = config.has("dim") ? config.dim : 1000;
  const std::size_t s = config.s;
  if (s < 1 || s > dim) throw std::invalid_argument("--s must lie in [1, dim]");
  if (config.has("delta") && config.delta < 1) throw std::invalid_argument("--delta must be >= 1");
  Dataset data(dim);
  for (std::size_t v = 0; v < config.n; ++v) {
    Rng rng(derive_seed(config.seed, "generate", v));
    // Floyd's sampler: s distinct indices of [0, dim).
    std::unordered_set<Index> chosen;
    std::vector<Index> support;
    for (Index j = dim - s; j < dim; ++j) {
      const Index candidate = rng.below(j + 1);
      const Index pick = chosen.count(candidate) != 0 ? j : candidate;
      chosen.insert(pick);
      support.push_back(pick);
    }
    std::vector<Entry> entries;
    for (Index index : support) {
      double value;
      if (config.has("delta")) {
        const auto magnitude = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(config.delta)));
        value = rng.coin() ? magnitude : -magnitude;
      } else {
        value = 1.0 - rng.uniform01();
      }
      entries.push_back({index, value});
    }
    data.add("v" + std::to_string(v), SparseVector(dim, std::move(entries)));
  }
  nlohmann::json echo = base_echo(config);
  echo["n"] = config.n;
  echo["s"] = s;
  echo["dim"] = dim;
  echo["values"] = config.has("delta") ? "integers in [-delta, delta] without 0" : "uniform in (0, 1]";
  if (config.has("delta")) echo["delta"] = config.delta;
  Report report(config, out, echo);
  write_text_dataset(report.stream(), data);
  report.finish();
  return 0;
}

}  // namespace sparse_sketch::cli
