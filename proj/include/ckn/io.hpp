#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ckn/function.hpp"
#include "ckn/params.hpp"

namespace ckn {

inline constexpr const char* kToolVersion = "0.1.0";

/// Function document: {"dim": N, "entries": [{"x": [...], "v": value}, ...]}.
/// No duplicate points, no zero values, consistent dimensions. Round trips
/// are exact (shortest round-trip double formatting).
nlohmann::json function_to_json(const LatticeFunction& u);
LatticeFunction function_from_json(const nlohmann::json& doc);

LatticeFunction read_function(const std::filesystem::path& path);
void write_function(const std::filesystem::path& path, const LatticeFunction& u);

/// Flat key-value parameter document {"N","p","q","r","a","b","c","theta"}.
CknParams read_ckn_params(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace ckn
