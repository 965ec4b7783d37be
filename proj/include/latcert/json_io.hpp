#pragma once

#include <string>

#include "json.hpp"

#include "latcert/engine.hpp"

namespace latcert {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Instance schema (version 1): {schema_version, n, g, p, precision,
// blocks: [{r, f: [c0, c1, ...], h}], S: [primes],
// locals: {prime: row-major n*n residues}}. All integers are decimal strings
// so that values beyond 64 bits survive any JSON reader.
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

// Certificate schema (version 1): {schema_version, engine_version,
// verification_status, precision, A: row-major integers,
// conjugators: {prime: {precision, matrix}},
// basis: row-major [numerator, denominator] pairs}.
nlohmann::json certificate_to_json(const Certificate& cert, const std::string& status);
Certificate certificate_from_json(const nlohmann::json& j, std::string* status = nullptr);

// file plumbing; throws std::invalid_argument on unreadable or invalid input
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace latcert
