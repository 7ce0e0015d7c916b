#pragma once

// Matrix documents: {"shape": [d1, ...], "blocks": [[[[re, im], ...], ...], ...]}.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qim/algebra.hpp"

namespace qim {

/// Parses and validates a matrix document. FormatError names the offending
/// field (e.g. "blocks[1][0][2]"); Hermiticity violations surface as
/// ValidationError.
Hermitian parse_matrix(const nlohmann::json& doc);
Hermitian read_matrix(const std::string& path);

/// The same document as JSON, for embedding in larger outputs.
nlohmann::json matrix_json(const Hermitian& h);

/// Serializes with 17 significant digits so values round-trip exactly.
std::string format_document(const nlohmann::json& doc);
void write_document(const std::string& path, const nlohmann::json& doc);
void write_matrix(const std::string& path, const Hermitian& h);

}  // namespace qim
