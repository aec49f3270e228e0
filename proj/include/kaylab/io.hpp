#pragma once

// Structure file format and deterministic serialization.
//
// A structure file is a JSON document:
//
//   {
//     "signature": [{"name": "R", "arity": 3, "kind": "hyperedge"},
//                   {"name": "<=", "arity": 2, "kind": "order"}],
//     "size": 5,
//     "relations": {"R": [[0, 1, 2], [1, 2, 4]]}
//   }
//
// Hyperedge tuples may appear in any entry order and are canonicalized on
// load; an order symbol's relation is the natural order 0<1<...<n-1, omitted
// on save (if supplied on load it must list exactly the strict pairs).
// save(load(x)) round-trips byte-exactly once canonical.

#include <cstdint>
#include <filesystem>
#include <string>

#include "vendor_json.hpp"

#include "kaylab/structure.hpp"

namespace kaylab {

nlohmann::ordered_json structure_to_json(const Structure& s);
Structure structure_from_json(const nlohmann::json& j);

std::string to_text(const Structure& s);          // pretty, trailing newline
std::string to_compact_text(const Structure& s);  // single line, used as canonical ids

Structure load_structure(const std::filesystem::path& file);
void save_structure(const Structure& s, const std::filesystem::path& file);

void write_text_file(const std::filesystem::path& file, const std::string& content);
std::string read_text_file(const std::filesystem::path& file);

// FNV-1a, for input fingerprints in experiment manifests.
std::uint64_t fnv1a(const std::string& bytes);
std::string fnv1a_hex(const std::string& bytes);

}  // namespace kaylab
