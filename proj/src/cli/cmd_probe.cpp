#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <unordered_set>

#include "commands.hpp"
#include "sparse_sketch/errors.hpp"
#include "sparse_sketch/format.hpp"
#include "sparse_sketch/hashing.hpp"
#include "sparse_sketch/probes.hpp"

namespace sparse_sketch::cli {
namespace {

bool is_birthday(const RunConfig& config) { return config.map == "birthday"; }

HashSpec birthday_spec(const RunConfig& config) {
  return {derive_seed(config.seed, "probe-birthday"), 0, config.has("m") ? config.m : 1};
}

// Resolves --map to a dense matrix: a built-in generator with --m rows and
// --dim columns, or a CSV file.
DenseLinearMap dense_map(const RunConfig& config) {
  const std::string& name = require(config, "map");
  const bool builtin = name == "identity" || name == "zeros" || name == "ones-row" || name == "gaussian" ||
                       name == "gaussian-unit" || name == "signs" || name == "birthday";
  if (!builtin) {
    std::ifstream in(name);
    if (!in) throw InputError("cannot open " + name);
    return read_dense_map(in);
  }
  if (!config.has("dim")) throw InputError("--dim is required with a built-in --map");
  const auto d = static_cast<std::size_t>(config.dim);
  const std::size_t rows = config.has("m") ? static_cast<std::size_t>(config.m) : d;
  const std::uint64_t seed = derive_seed(config.seed, "probe-map");
  if (name == "identity") return DenseLinearMap::identity(d);
  if (name == "zeros") return DenseLinearMap::zeros(rows, d);
  if (name == "gaussian") return DenseLinearMap::gaussian(rows, d, seed, false);
  if (name == "gaussian-unit") return DenseLinearMap::gaussian(rows, d, seed, true);
  if (name == "signs") return DenseLinearMap::random_signs(rows, d, seed);
  if (name == "birthday") return DenseLinearMap::from_birthday(BirthdayMap(birthday_spec(config)), d);
  DenseLinearMap ones = DenseLinearMap::zeros(rows, d);
  for (std::size_t c = 0; c < d; ++c) ones.at(0, c) = 1.0;
  return ones;
}

nlohmann::json probe_echo(const RunConfig& config) {
  nlohmann::json echo = base_echo(config);
  if (!config.map.empty()) echo["map"] = config.map;
  if (config.has("m")) echo["m"] = config.m;
  return echo;
}

int run_rate(const RunConfig& config, std::ostream& out) {
  const Norm norm = Norm::parse(config.p.empty() ? "2" : config.p);
  std::vector<PreservationTrial> trace;
  UnifSpec spec{config.t, config.r, config.dim, config.seed};
  double rate;
  if (is_birthday(config)) {
    rate = preservation_rate(BirthdayMap(birthday_spec(config)), spec, norm, config.gamma, config.trials,
                             config.threads, &trace);
  } else {
    const DenseLinearMap A = dense_map(config);
    spec.d = A.cols();
    rate = preservation_rate(A, spec, norm, config.gamma, config.trials, config.threads, &trace);
  }
  nlohmann::json echo = probe_echo(config);
  echo["dim"] = spec.d;
  echo["t"] = spec.t;
  echo["r"] = spec.r;
  echo["p"] = norm.to_string();
  echo["gamma"] = config.gamma;
  echo["trials"] = config.trials;
  Report report(config, out, echo);
  std::ostream& csv = report.stream();
  csv << "trial,stat,pass\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    csv << i << ',' << format_double(trace[i].deviation) << ',' << (trace[i].pass ? 1 : 0) << '\n';
  }
  csv << "rate," << format_double(rate) << ",\n";
  report.finish();
  return 0;
}

int run_violation(const RunConfig& config, std::ostream& out) {
  const DenseLinearMap A = dense_map(config);
  const LinfWitness witness = find_linf_violation(A);
  nlohmann::json echo = probe_echo(config);
  echo["rows"] = A.rows();
  echo["cols"] = A.cols();
  Report report(config, out, echo);
  std::ostream& csv = report.stream();
  csv << "row,support,image_linf\n" << witness.row << ',';
  bool first = true;
  for (const auto& e : witness.x.entries()) {
    csv << (first ? "" : " ") << e.index;
    first = false;
  }
  csv << ',' << format_double(witness.image_linf) << '\n';
  report.finish();
  return 0;
}

int run_unif_stats(const RunConfig& config, std::ostream& out) {
  if (config.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  std::optional<DenseLinearMap> A;
  if (!config.map.empty()) A = dense_map(config);
  const UnifSpec spec{config.t, config.r, A ? A->cols() : config.dim, config.seed};
  UnifSampler sampler(spec);
  std::unordered_set<Index> covered;
  double sq_norm_sum = 0.0;
  double sq_norm_sq_sum = 0.0;
  double value_sum = 0.0;
  double z_sum = 0.0;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const SparseVector u = sampler.next();
    double sq = 0.0;
    for (const auto& e : u.entries()) {
      covered.insert(e.index);
      sq += e.value * e.value;
      value_sum += e.value;
    }
    sq_norm_sum += sq;
    sq_norm_sq_sum += sq * sq;
    if (A) z_sum += gram_overlap_z(*A, u);
  }
  const auto trials = static_cast<double>(config.trials);
  const double mean_sq = sq_norm_sum / trials;
  nlohmann::json echo = probe_echo(config);
  echo["dim"] = spec.d;
  echo["t"] = spec.t;
  echo["r"] = spec.r;
  echo["trials"] = config.trials;
  Report report(config, out, echo);
  std::ostream& csv = report.stream();
  csv << "statistic,value\n";
  csv << "draws," << config.trials << '\n';
  csv << "support_coverage," << format_double(static_cast<double>(covered.size()) / static_cast<double>(spec.d))
      << '\n';
  csv << "mean_entry_value," << format_double(value_sum / (trials * static_cast<double>(spec.t))) << '\n';
  csv << "mean_sq_norm," << format_double(mean_sq) << '\n';
  csv << "sq_norm_std_error," << format_double(std::sqrt(std::max(0.0, sq_norm_sq_sum / trials - mean_sq * mean_sq) / trials))
      << '\n';
  csv << "expected_sq_norm," << format_double(static_cast<double>(spec.t) * spec.r) << '\n';
  if (A) csv << "mean_gram_overlap_z," << format_double(z_sum / trials) << '\n';
  report.finish();
  return 0;
}

}  // namespace

int cmd_probe(const RunConfig& config, std::ostream& out) {
  if (config.subcommand == "rate") return run_rate(config, out);
  if (config.subcommand == "violation") return run_violation(config, out);
  return run_unif_stats(config, out);
}

}  // namespace sparse_sketch::cli
