#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "sparse_sketch/apps/clustering.hpp"
#include "sparse_sketch/apps/diameter.hpp"
#include "sparse_sketch/apps/distance_estimator.hpp"
#include "sparse_sketch/apps/maxcut.hpp"
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

// Absolute slack for comparisons of a sketch against its never-exceeded
// reference value.
constexpr double kNonExpansionSlack = 1e-9;

struct ReportRow {
  std::string id;
  std::uint64_t seed;
  double truth;
  double sketch;
};

void write_rows(const RunConfig& config, std::ostream& out, const nlohmann::json& echo,
                const std::vector<ReportRow>& rows) {
  Report report(config, out, echo);
  std::ostream& csv = report.stream();
  csv << "id,seed,true_value,sketch_value,ratio\n";
  for (const auto& row : rows) {
    csv << csv_field(row.id) << ',' << row.seed << ',' << format_double(row.truth) << ','
        << format_double(row.sketch) << ',' << format_double(ratio(row.sketch, row.truth)) << '\n';
  }
  report.finish();
}

void check_not_above(const ReportRow& row, const std::string& what) {
  if (row.sketch > row.truth * (1.0 + 1e-12) + kNonExpansionSlack) {
    throw InvariantBreach(what + " " + format_double(row.sketch) + " exceeds the exact value " +
                          format_double(row.truth) + " for seed " + std::to_string(row.seed));
  }
}

std::uint64_t trial_seed(const RunConfig& config, std::size_t trial) {
  return derive_seed(config.seed, "apps-" + config.subcommand, trial);
}

Norm norm_or(const RunConfig& config, const char* fallback) {
  return Norm::parse(config.p.empty() ? fallback : config.p);
}

int run_diameter(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const Norm norm = norm_or(config, "inf");
  const bool l1 = !norm.is_infinite() && norm.p() == 1.0;
  if (!norm.is_infinite() && !l1) {
    throw std::invalid_argument("apps diameter supports p = inf (streaming) and p = 1 (sign patterns)");
  }
  const std::size_t s = config.has("s") ? config.s : std::max<std::size_t>(1, data.max_sparsity());
  const std::size_t k = config.has("k") ? config.k : 0;
  const double truth = diameter_exact(data, norm);
  std::vector<ReportRow> rows(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    const std::uint64_t seed = trial_seed(config, trial);
    const double sketch = l1 ? diameter_l1(data, s, seed, k) : diameter_linf_stream(data, s, seed);
    rows[trial] = {std::to_string(trial), seed, truth, sketch};
  });
  for (const auto& row : rows) check_not_above(row, "sketched diameter");
  nlohmann::json echo = base_echo(config);
  echo["p"] = norm.to_string();
  echo["s"] = s;
  echo["trials"] = config.trials;
  echo["seed_derivation"] = "derive_seed(seed, \"apps-diameter\", trial)";
  if (l1) echo["k"] = k == 0 ? default_l1_projected_dim(s) : k;
  write_rows(config, out, echo, rows);
  return 0;
}

int run_maxcut(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const Norm norm = norm_or(config, "2");
  const std::uint64_t m_override = config.has("m") ? config.m : 0;
  const double truth = maxcut_brute(data, norm).value;
  std::vector<ReportRow> rows(config.trials);
  std::uint64_t buckets = 0;
  parallel_for(config.trials, config.threads, [&](std::size_t trial) {
    const std::uint64_t seed = trial_seed(config, trial);
    const SketchedCut sketched = maxcut_sketched(data, norm, config.eps, seed, m_override);
    rows[trial] = {std::to_string(trial), seed, truth, sketched.cut.value};
    if (trial == 0) buckets = sketched.buckets;
  });
  for (const auto& row : rows) check_not_above(row, "sketched max-cut");
  nlohmann::json echo = base_echo(config);
  echo["p"] = norm.to_string();
  echo["eps"] = config.eps;
  echo["m"] = buckets;
  echo["trials"] = config.trials;
  echo["seed_derivation"] = "derive_seed(seed, \"apps-maxcut\", trial)";
  write_rows(config, out, echo, rows);
  return 0;
}

std::vector<std::vector<std::size_t>> cluster_partitions(const RunConfig& config, std::size_t n, std::size_t k) {
  constexpr std::size_t kEnumerationLimit = 10;
  if (k < 1 || k > n) throw std::invalid_argument("--k must lie in [1, n]");
  if (n <= kEnumerationLimit) return enumerate_partitions(n, k);
  std::vector<std::vector<std::size_t>> partitions;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    Rng rng(derive_seed(config.seed, "cluster-partition", trial));
    std::vector<std::size_t> labels(n);
    // The first k shuffled positions receive the k labels, so no cluster is empty.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    for (std::size_t i = 0; i < n; ++i) labels[order[i]] = i < k ? i : rng.below(k);
    partitions.push_back(std::move(labels));
  }
  return partitions;
}

int run_cluster_cost(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const Norm norm = norm_or(config, "1");
  const Objective objective = parse_objective(config.objective);
  const std::size_t n = data.size();
  const std::size_t k = config.k;
  if (!data.non_negative()) {
    throw PreconditionError(PreconditionError::Kind::kOther, "cluster-cost needs non-negative vectors");
  }

  PlanRequest request;
  request.mode = norm.is_infinite() ? EmbedMode::kLinfExact : EmbedMode::kAllP;
  request.s = std::max<std::size_t>(1, data.max_sparsity());
  request.n = std::max<std::size_t>(2, n);
  request.eps = config.eps;
  EmbedParams params = plan_params(request);
  params.seed = config.seed;
  const StackedEmbedding F(params);
  const PairwiseSketchDistances sketch_distances(F, data, {norm});

  std::vector<double> original(n * n, 0.0);
  std::vector<double> embedded(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      original[i * n + j] = original[j * n + i] = lp_dist(data.vector(i), data.vector(j), norm);
      embedded[i * n + j] = embedded[j * n + i] = sketch_distances.estimate(0, i, j);
    }
  }

  const auto partitions = cluster_partitions(config, n, k);
  std::vector<ReportRow> rows(partitions.size());
  parallel_for(partitions.size(), config.threads, [&](std::size_t index) {
    const Clustering c{partitions[index], k, objective, norm};
    std::string id;
    for (std::size_t i = 0; i < n; ++i) id += (i == 0 ? "" : "-") + std::to_string(c.assignment[i]);
    rows[index] = {id, config.seed, basic_cost_from_distances(original, n, c),
                   basic_cost_from_distances(embedded, n, c)};
  });

  nlohmann::json echo = base_echo(config);
  echo["p"] = norm.to_string();
  echo["objective"] = to_string(objective);
  echo["k"] = k;
  echo["centers"] = "basic";
  echo["params"] = to_json(params);
  echo["partitions"] = n <= 10 ? "all" : "random";
  write_rows(config, out, echo, rows);
  return 0;
}

int run_dist_est(const RunConfig& config, std::ostream& out) {
  const Dataset data = load_input(config);
  const Dataset queries = load_path(require(config, "queries"), config);
  const Norm norm = norm_or(config, "2");
  if (norm.is_infinite() || norm.p() != std::floor(norm.p())) {
    throw std::invalid_argument("distance estimation needs an even integer p");
  }
  const int p = static_cast<int>(norm.p());
  const DistanceEstimator estimator = DistanceEstimator::build(data, p, config.eps, config.seed);

  std::vector<ReportRow> rows;
  for (const auto& query : queries.items()) {
    double direct = 0.0;
    for (const auto& item : data.items()) direct += lp_dist_pow(item.vector, query.vector, norm);
    rows.push_back({query.id, config.seed, direct, estimator.query(query.vector)});
  }

  if (!config.params.empty()) {
    std::ofstream file(config.params, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write " + config.params);
    file << estimator.to_json().dump() << '\n';
  }
  nlohmann::json echo = base_echo(config);
  echo["queries"] = config.queries;
  echo["p"] = p;
  echo["eps"] = config.eps;
  echo["R"] = estimator.repetitions();
  echo["m"] = estimator.buckets();
  write_rows(config, out, echo, rows);
  return 0;
}

}  // namespace

int cmd_apps(const RunConfig& config, std::ostream& out) {
  if (config.subcommand == "diameter") return run_diameter(config, out);
  if (config.subcommand == "maxcut") return run_maxcut(config, out);
  if (config.subcommand == "cluster-cost") return run_cluster_cost(config, out);
  return run_dist_est(config, out);
}

}  // namespace sparse_sketch::cli
