#pragma once

#include <optional>
#include <string>

#include "sextic/classify.hpp"
#include "sextic/specialize.hpp"

namespace sextic {

/// One classified lattice type as a JSON object (rationals as "p/q" strings).
std::string lattice_type_to_json(const LatticeType& t, int indent = 2);

/// Full classification document: {"ade", "mu", "types": [...]}.
std::string classification_to_json(const ADEType& r, const std::vector<LatticeType>& types,
                                   int indent = 2);

/// Parse a single lattice-datum document {"ade", "mu"?, "glue": [[...]],
/// "marked"?: [[...],[...]]}: glue generators are rational coordinate vectors
/// over the dual basis (E..., h). Throws parse_error on schema violations.
struct ParsedLatticeData {
    LatticeType type;
    std::optional<MarkedPair> marked;
};
ParsedLatticeData lattice_data_from_json(const std::string& text);

/// Round-trip support for the cache: parse a classification document back.
std::optional<std::vector<LatticeType>> classification_from_json(const std::string& text,
                                                                 const ADEType& expect);

/// Content key for cache validation.
std::string cache_key(const ADEType& r);

/// Atomic write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

std::optional<std::string> read_file(const std::string& path);

}  // namespace sextic
