#include "sparse_sketch/cli.hpp"

#include <functional>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "sparse_sketch/errors.hpp"

namespace sparse_sketch {
namespace {

using cli::RunConfig;
using Adder = std::function<void(CLI::App&, RunConfig&)>;

const std::map<std::string, Adder>& option_table() {
  static const std::map<std::string, Adder> table = {
      {"input", [](CLI::App& a, RunConfig& c) { a.add_option("--input,-i", c.input, "Dataset file (text or .jsonl)"); }},
      {"output", [](CLI::App& a, RunConfig& c) { a.add_option("--output,-o", c.output, "Output file (default stdout)"); }},
      {"params", [](CLI::App& a, RunConfig& c) { a.add_option("--params", c.params, "Parameter JSON file"); }},
      {"queries", [](CLI::App& a, RunConfig& c) { a.add_option("--queries", c.queries, "Query dataset file"); }},
      {"map", [](CLI::App& a, RunConfig& c) {
         a.add_option("--map", c.map,
                      "Dense map CSV, or a built-in: identity, zeros, ones-row, gaussian, gaussian-unit, signs, "
                      "birthday");
       }},
      {"seed", [](CLI::App& a, RunConfig& c) { a.add_option("--seed", c.seed, "Root seed of all randomness"); }},
      {"mode", [](CLI::App& a, RunConfig& c) {
         a.add_option("--mode", c.mode, "Embedding mode: all-p, linf-exact, sum-linf, sum-lp, discrete")
             ->capture_default_str();
       }},
      {"eps", [](CLI::App& a, RunConfig& c) {
         a.add_option("--eps", c.eps, "Accuracy parameter in (0, 1)")->capture_default_str();
       }},
      {"p", [](CLI::App& a, RunConfig& c) { a.add_option("--p", c.p, "Norm exponent (a number >= 1 or inf)"); }},
      {"p-list", [](CLI::App& a, RunConfig& c) {
         a.add_option("--p", c.p, "Comma-separated norm exponents, e.g. 1,2,inf (default depends on the mode)");
       }},
      {"trials", [](CLI::App& a, RunConfig& c) {
         a.add_option("--trials", c.trials, "Number of seeds or draws")->capture_default_str();
       }},
      {"s", [](CLI::App& a, RunConfig& c) { a.add_option("--s", c.s, "Sparsity (default: dataset maximum)"); }},
      {"n", [](CLI::App& a, RunConfig& c) { a.add_option("--n", c.n, "Number of vectors (default: dataset size)"); }},
      {"delta", [](CLI::App& a, RunConfig& c) { a.add_option("--delta", c.delta, "Entry bound of the discrete mode"); }},
      {"dim", [](CLI::App& a, RunConfig& c) { a.add_option("--dim", c.dim, "Ambient dimension d"); }},
      {"threads", [](CLI::App& a, RunConfig& c) {
         a.add_option("--threads", c.threads, "Worker threads (output does not depend on it)")->capture_default_str();
       }},
      {"m", [](CLI::App& a, RunConfig& c) { a.add_option("--m", c.m, "Bucket count override (rows for built-in maps)"); }},
      {"T", [](CLI::App& a, RunConfig& c) { a.add_option("--T", c.T, "Copy count override"); }},
      {"k", [](CLI::App& a, RunConfig& c) { a.add_option("--k", c.k, "Cluster count or projected dimension"); }},
      {"t", [](CLI::App& a, RunConfig& c) { a.add_option("--t", c.t, "Support size of sampled vectors")->capture_default_str(); }},
      {"r", [](CLI::App& a, RunConfig& c) { a.add_option("--r", c.r, "Variance of sampled entries")->capture_default_str(); }},
      {"gamma", [](CLI::App& a, RunConfig& c) {
         a.add_option("--gamma", c.gamma, "Relative tolerance (0 means exact up to 1e-9)")->capture_default_str();
       }},
      {"objective", [](CLI::App& a, RunConfig& c) {
         a.add_option("--objective", c.objective, "Clustering objective: median, means, center")->capture_default_str();
       }},
      {"baseline", [](CLI::App& a, RunConfig& c) {
         a.add_option("--baseline", c.baseline, "Extra linear baseline: none or sum-hash")->capture_default_str();
       }},
      {"vs-zero", [](CLI::App& a, RunConfig& c) {
         a.add_flag("--vs-zero", c.vs_zero, "Compare each vector against 0 instead of all pairs");
       }},
  };
  return table;
}

CLI::App* add_command(CLI::App& parent, RunConfig& config, const std::string& name, const std::string& help,
                      std::initializer_list<const char*> options) {
  CLI::App* cmd = parent.add_subcommand(name, help);
  for (const char* option : options) option_table().at(option)(*cmd, config);
  return cmd;
}

void record_given(const CLI::App& leaf, RunConfig& config) {
  for (const CLI::Option* option : leaf.get_options()) {
    if (option->count() == 0) continue;
    std::string name = option->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    config.given.insert(name);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Sparse non-negative vector sketching: embeddings, distortion reports, applications and probes",
               "sparse-sketch"};
  app.require_subcommand(1);

  CLI::App* embed = add_command(app, config, "embed", "Embed every dataset vector; writes CSV and params JSON",
                                {"input", "output", "params", "seed", "mode", "eps", "p", "s", "n", "delta", "dim",
                                 "m", "T", "threads"});
  CLI::App* distort =
      add_command(app, config, "distort", "True versus embedded norms for all pairs or against 0",
                  {"input", "output", "params", "seed", "mode", "eps", "p-list", "s", "n", "delta", "dim", "m", "T",
                   "baseline", "vs-zero", "threads"});
  CLI::App* generate =
      add_command(app, config, "generate", "Random s-sparse vectors with entries uniform in (0, 1]",
                  {"output", "seed", "n", "s", "dim", "delta"});

  CLI::App* apps = app.add_subcommand("apps", "Applications with brute-force reference values");
  apps->require_subcommand(1);
  CLI::App* diameter = add_command(*apps, config, "diameter", "Streaming l_inf or sign-pattern l1 diameter",
                                   {"input", "output", "seed", "p", "s", "k", "dim", "trials", "threads"});
  CLI::App* maxcut = add_command(*apps, config, "maxcut", "Max-cut in the projected space versus brute force",
                                 {"input", "output", "seed", "p", "eps", "m", "dim", "trials", "threads"});
  CLI::App* cluster = add_command(*apps, config, "cluster-cost",
                                  "Basic clustering costs before and after the stacked embedding",
                                  {"input", "output", "seed", "p", "eps", "k", "objective", "dim", "trials",
                                   "threads"});
  CLI::App* dist_est = add_command(*apps, config, "dist-est", "Sum-of-distances estimates for a query file",
                                   {"input", "queries", "output", "params", "seed", "p", "eps", "dim"});

  CLI::App* probe = app.add_subcommand("probe", "Empirical probes for linear maps");
  probe->require_subcommand(1);
  CLI::App* rate = add_command(*probe, config, "rate", "Norm-preservation rate of a linear map",
                               {"map", "output", "seed", "p", "gamma", "trials", "dim", "t", "r", "m", "threads"});
  CLI::App* violation = add_command(*probe, config, "violation", "10-sparse l_inf witness for a dense map",
                                    {"map", "output", "seed", "dim", "m"});
  CLI::App* unif = add_command(*probe, config, "unif-stats", "Moments of the uniform-support Gaussian distribution",
                               {"map", "output", "seed", "trials", "dim", "t", "r", "m"});

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::map<const CLI::App*, std::function<int()>> handlers = {
      {embed, [&] { return cli::cmd_embed(config, out); }},
      {distort, [&] { return cli::cmd_distort(config, out); }},
      {generate, [&] { return cli::cmd_generate(config, out); }},
      {diameter, [&] { return cli::cmd_apps(config, out); }},
      {maxcut, [&] { return cli::cmd_apps(config, out); }},
      {cluster, [&] { return cli::cmd_apps(config, out); }},
      {dist_est, [&] { return cli::cmd_apps(config, out); }},
      {rate, [&] { return cli::cmd_probe(config, out); }},
      {violation, [&] { return cli::cmd_probe(config, out); }},
      {unif, [&] { return cli::cmd_probe(config, out); }},
  };
  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) {
    const CLI::App* next = leaf->get_subcommands().front();
    if (leaf == &app) {
      config.command = next->get_name();
    } else {
      config.subcommand = next->get_name();
    }
    leaf = next;
  }
  record_given(*leaf, config);

  try {
    return handlers.at(leaf)();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const InvariantBreach& e) {
    err << "invariant breach: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sparse_sketch
