#include "sparse_sketch/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sparse_sketch/errors.hpp"
#include "sparse_sketch/format.hpp"

namespace sparse_sketch {
namespace {

Index parse_index(const std::string& text, std::size_t line) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("bad index '" + text + "'", line);
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw InputError("index out of range '" + text + "'", line);
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Dataset::Dataset(Index dim, std::vector<LabeledVector> vectors) : dim_(dim) {
  for (auto& v : vectors) add(std::move(v.id), std::move(v.vector));
}

void Dataset::add(std::string id, SparseVector v) {
  if (v.dim() != dim_) throw std::invalid_argument("vector '" + id + "' has a different ambient dimension");
  max_sparsity_ = std::max(max_sparsity_, v.nnz());
  nonneg_ = nonneg_ && v.non_negative();
  vectors_.push_back({std::move(id), std::move(v)});
}

Dataset read_text_dataset(std::istream& in, Index dim) {
  Dataset data(dim);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw InputError("expected `id<TAB>idx:value ...`", line_no);
    std::string id = line.substr(0, tab);
    if (id.empty()) throw InputError("empty id", line_no);
    std::istringstream fields(line.substr(tab + 1));
    std::vector<Entry> entries;
    std::string token;
    while (fields >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) throw InputError("expected idx:value, got '" + token + "'", line_no);
      const Index idx = parse_index(token.substr(0, colon), line_no);
      double value;
      try {
        value = parse_double(token.substr(colon + 1));
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what(), line_no);
      }
      entries.push_back({idx, value});
    }
    try {
      data.add(std::move(id), SparseVector(dim, std::move(entries)));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what(), line_no);
    }
  }
  return data;
}

void write_text_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& item : data.items()) {
    out << item.id << '\t';
    bool first = true;
    for (const auto& e : item.vector.entries()) {
      if (!first) out << ' ';
      out << e.index << ':' << format_double(e.value);
      first = false;
    }
    out << '\n';
  }
}

Dataset read_jsonl_dataset(std::istream& in, Index dim) {
  Dataset data(dim);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("coords") ||
        !record["coords"].is_object()) {
      throw InputError("expected {\"id\": ..., \"coords\": {...}}", line_no);
    }
    std::string id = record["id"].is_string() ? record["id"].get<std::string>() : record["id"].dump();
    std::vector<Entry> entries;
    for (const auto& [key, value] : record["coords"].items()) {
      if (!value.is_number()) throw InputError("value for index " + key + " is not a number", line_no);
      entries.push_back({parse_index(key, line_no), value.get<double>()});
    }
    try {
      data.add(std::move(id), SparseVector(dim, std::move(entries)));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what(), line_no);
    }
  }
  return data;
}

Dataset load_dataset(const std::string& path, Index dim) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  if (ends_with(path, ".jsonl") || ends_with(path, ".json")) return read_jsonl_dataset(in, dim);
  return read_text_dataset(in, dim);
}

}  // namespace sparse_sketch
