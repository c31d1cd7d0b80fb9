#include <limits>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "sparse_sketch/errors.hpp"

namespace sparse_sketch::cli {

Report::Report(const RunConfig& config, std::ostream& fallback, const nlohmann::json& echo)
    : path_(config.output), fallback_(fallback) {
  if (!path_.empty()) {
    file_.open(path_, std::ios::binary | std::ios::trunc);
    if (!file_) throw InputError("cannot write " + path_);
  }
  stream() << "# config: " << echo.dump() << '\n';
}

void Report::finish() {
  stream().flush();
  if (!stream()) throw InputError("failed writing " + (path_.empty() ? std::string("output") : path_));
}

nlohmann::json base_echo(const RunConfig& config) {
  nlohmann::json echo = {{"command", config.command}, {"seed", config.seed}};
  if (!config.subcommand.empty()) echo["subcommand"] = config.subcommand;
  if (!config.input.empty()) echo["input"] = config.input;
  if (config.dim != kMaxDimension) echo["dim"] = config.dim;
  return echo;
}

Dataset load_path(const std::string& path, const RunConfig& config) { return load_dataset(path, config.dim); }

Dataset load_input(const RunConfig& config) { return load_path(require(config, "input"), config); }

std::string require(const RunConfig& config, const std::string& flag) {
  const std::string& value = flag == "input"     ? config.input
                             : flag == "queries" ? config.queries
                             : flag == "map"     ? config.map
                                                 : config.params;
  if (value.empty()) throw InputError("--" + flag + " is required");
  return value;
}

std::vector<Norm> parse_norm_list(const std::string& text) {
  std::vector<Norm> norms;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) norms.push_back(Norm::parse(item));
  if (norms.empty()) throw std::invalid_argument("empty norm list");
  return norms;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

double ratio(double sketch, double truth) {
  if (truth == 0.0) return sketch == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return sketch / truth;
}

}  // namespace sparse_sketch::cli
