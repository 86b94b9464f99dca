#pragma once

#include <string>

#include "contactgeo/models.hpp"

namespace contactgeo {

/// Model files are JSON objects:
///
///   {"name": "...", "kind": "chart", "dim": 5, "box": [[-1, 1], ...],
///    "eta": [...], "xi": [...], "phi": [[...]], "g": [[...]],
///    "phi1": [[...]], "phi2": [[...]],
///    "facts": {"kappa": 1, "mu": 0, "normal": true}}
///
///   {"name": "...", "kind": "frame", "dim": 3, "labels": [...],
///    "c": [[i, j, k, value], ...], ...same fields...}
///
/// Vectors and one-forms are arrays of components. Matrices are arrays of
/// rows: entry [k][j] is the k-th component of T(E_j), or g(E_k, E_j) for a
/// metric. A component is a number or, on charts, a polynomial given as a list
/// of [coefficient, [exponent per coordinate]] terms. "c" lists
/// [E_i, E_j] = value E_k once per unordered pair. Only "eta" is required.
///
/// Throws ModelFileError for malformed input.
ModelPack parse_model(const std::string& json_text);

/// Reads a model file; ModelFileError when it cannot be read.
ModelPack read_model_file(const std::string& path);

/// Serializes a pack whose fields carry component data (all built-ins do).
/// Throws UnsupportedError for fields defined by closures only.
std::string export_model(const ModelPack& pack);

/// "builtin:<name>" or a file path.
ModelPack resolve_model(const std::string& source);

}  // namespace contactgeo
