#pragma once

// Embedding / copy / automorphism enumeration and exact canonical forms.
//
// An embedding is an injective map that preserves AND reflects every
// relation; when an order symbol is present it must be strictly increasing.
// Canonical forms are exact (minimum relation encoding over all admissible
// permutations, with invariant-class pruning) and intended for n <= ~10.

#include <cstdint>
#include <optional>
#include <vector>

#include "kaylab/structure.hpp"

namespace kaylab {

// map[v] = image of v in the target. Maps are emitted in lexicographic order.
using VertexMap = std::vector<int>;

bool is_embedding(const Structure& a, const Structure& b, const VertexMap& map);

std::vector<VertexMap> enumerate_embeddings(const Structure& a, const Structure& b);

struct CopySet {
    std::vector<std::vector<int>> members;  // sorted vertex subsets, lexicographic
};

CopySet enumerate_copies(const Structure& a, const Structure& b);

// Full automorphism group as explicit permutations, identity first.
std::vector<VertexMap> automorphisms(const Structure& a);

struct CanonicalForm {
    Structure canon;
    VertexMap relabelling;  // relabelling[v] = position of v in the canonical form
};

// Isomorphism-invariant representative: two structures are isomorphic iff
// their canonical forms are equal. Ordered structures are their own form.
CanonicalForm canonical_form(const Structure& a);

// Iso-invariant fingerprint usable as a dedup key.
std::vector<std::uint64_t> canonical_code(const Structure& a);

std::optional<VertexMap> find_isomorphism(const Structure& a, const Structure& b);

VertexMap compose(const VertexMap& first, const VertexMap& then);
VertexMap inverse_permutation(const VertexMap& perm);

}  // namespace kaylab
