#pragma once

// Codebook file format (UTF-8 JSON, fields in this order):
//
//   { "T": 4, "M": 2,
//     "codewords": [ [ [re, im], ... T*M entries, row-major ... ], ... ],
//     "meta": { "method": "...", "seed": 0, "params": { ... } } }
//
// Doubles are written in shortest round-trip form, so save/load is lossless.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "sgrass/grassmann.hpp"

namespace sgrass {

nlohmann::ordered_json codebook_to_json(const Codebook& book);

/// Throws ParseError on malformed structure, DimensionMismatch when an entry
/// count disagrees with T*M, NotStiefel when a codeword fails at `tol`.
Codebook codebook_from_json(const nlohmann::ordered_json& j, double tol = kStiefelTol);

void save_codebook(const Codebook& book, const std::filesystem::path& path);

/// Throws IoError when the file cannot be read, then as codebook_from_json.
Codebook load_codebook(const std::filesystem::path& path, double tol = kStiefelTol);

}  // namespace sgrass
