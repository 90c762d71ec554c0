#include "ckn/io.hpp"

#include <fstream>
#include <set>

#include "ckn/error.hpp"

namespace ckn {

nlohmann::json function_to_json(const LatticeFunction& u) {
  nlohmann::json doc;
  doc["dim"] = u.dim();
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (const auto& [x, v] : u.entries()) {
    entries.push_back({{"x", x.coords}, {"v", v}});
  }
  return doc;
}

LatticeFunction function_from_json(const nlohmann::json& doc) {
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw Error("ParseError", "function document: missing integer field 'dim'");
  }
  const int dim = doc["dim"].get<int>();
  if (dim < 1) throw Error("ParseError", "function document: 'dim' must be >= 1");
  LatticeFunction u(dim);
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error("ParseError", "function document: missing array field 'entries'");
  }
  std::set<LatticePoint> seen;
  std::size_t index = 0;
  for (const auto& e : doc["entries"]) {
    if (!e.contains("x") || !e.contains("v") || !e["x"].is_array()) {
      throw Error("ParseError",
                  "function document: entry " + std::to_string(index) + " needs fields 'x', 'v'");
    }
    LatticePoint x(e["x"].get<std::vector<int>>());
    if (x.dim() != dim) {
      throw Error("DimensionMismatch", "function document: entry " + std::to_string(index) +
                                           " has dimension " + std::to_string(x.dim()));
    }
    const double v = e["v"].get<double>();
    if (v == 0.0 || !seen.insert(x).second) {
      throw Error("DuplicateOrZero", "function document: entry " + std::to_string(index) +
                                         " is zero-valued or duplicates an earlier point");
    }
    u.set(x, v);
    ++index;
  }
  return u;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("ParseError", path.string() + ": " + e.what());
  }
  return doc;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot open " + path.string() + " for writing");
  out << doc.dump(2) << '\n';
}

LatticeFunction read_function(const std::filesystem::path& path) {
  return function_from_json(read_json_file(path));
}

void write_function(const std::filesystem::path& path, const LatticeFunction& u) {
  write_json_file(path, function_to_json(u));
}

CknParams read_ckn_params(const std::filesystem::path& path) {
  const auto doc = read_json_file(path);
  for (const char* key : {"N", "p", "q", "r", "a", "b", "c", "theta"}) {
    if (!doc.contains(key)) {
      throw Error("ParseError", "parameter document: missing field '" + std::string(key) + "'");
    }
  }
  return CknParams::validated(doc["N"].get<int>(), doc["p"].get<double>(), doc["q"].get<double>(),
                              doc["r"].get<double>(), doc["a"].get<double>(),
                              doc["b"].get<double>(), doc["c"].get<double>(),
                              doc["theta"].get<double>());
}

}  // namespace ckn
