#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparse_sketch/dataset.hpp"
#include "sparse_sketch/norm.hpp"

namespace sparse_sketch::cli {

// Every flag of every command. Which ones a command reads is fixed by the
// option table in cli.cpp; `given` records those present on the command line.
struct RunConfig {
  std::string command;
  std::string subcommand;
  std::string input;
  std::string output;
  std::string params;
  std::string queries;
  std::string map = "";
  std::uint64_t seed = 0;
  std::string mode = "all-p";
  double eps = 0.25;
  std::string p;
  std::size_t trials = 1;
  std::size_t s = 1;
  std::size_t n = 2;
  int delta = 1;
  Index dim = kMaxDimension;
  unsigned threads = 1;
  std::uint64_t m = 1;
  std::uint64_t T = 1;
  std::size_t k = 2;
  std::size_t t = 1;
  double r = 1.0;
  double gamma = 0.0;
  std::string objective = "median";
  std::string baseline = "none";
  bool vs_zero = false;
  std::set<std::string> given;

  bool has(const std::string& flag) const { return given.count(flag) != 0; }
};

// Destination of a command's primary output. The first line written is
// always `# config: {...}`.
class Report {
 public:
  Report(const RunConfig& config, std::ostream& fallback, const nlohmann::json& echo);
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  // Throws InputError if the stream failed.
  void finish();

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream& fallback_;
};

// Fields shared by every config echo. threads and output paths are left out
// so that echoes do not vary between equivalent runs.
nlohmann::json base_echo(const RunConfig& config);

Dataset load_input(const RunConfig& config);
Dataset load_path(const std::string& path, const RunConfig& config);
// Comma-separated list of norms ("1,2,inf").
std::vector<Norm> parse_norm_list(const std::string& text);
// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& text);
// sketch / truth with 0 / 0 defined as 1.
double ratio(double sketch, double truth);
std::string require(const RunConfig& config, const std::string& flag);

int cmd_embed(const RunConfig& config, std::ostream& out);
int cmd_distort(const RunConfig& config, std::ostream& out);
int cmd_generate(const RunConfig& config, std::ostream& out);
int cmd_apps(const RunConfig& config, std::ostream& out);
int cmd_probe(const RunConfig& config, std::ostream& out);

}  // namespace sparse_sketch::cli
