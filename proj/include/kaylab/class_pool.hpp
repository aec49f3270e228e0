#pragma once

// Isomorph-free enumeration of small class members, free/ordered
// amalgamation, and bounded HP/JEP/AP verification.
//
// Pools hold canonical representatives by size. Ordered families enumerate
// labelled structures (the order rigidifies); large ordered Kay slices are
// kept as sorted S-masks and materialized on demand.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kaylab/kay.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/structure.hpp"

namespace kaylab {

enum class Family {
    hypergraphs,
    ordered_hypergraphs,
    kay_graphs,
    ordered_kay_graphs,
    linear_orders,
    tournaments,
    cameron,
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct PoolSlice {
    int size = 0;
    std::vector<Structure> members;  // explicit listing, deterministic order

    // lazy listing (ordered Kay slices): ascending S-masks of arity mask_k+1
    std::vector<std::uint64_t> masks;
    int mask_k = -1;
    bool mask_ordered = true;

    bool lazy() const { return mask_k > 0; }
    std::uint64_t count() const { return lazy() ? masks.size() : members.size(); }
    Structure materialize(std::uint64_t index) const;
    void for_each(const std::function<void(const Structure&)>& f) const;
};

struct ClassPool {
    Family family = Family::hypergraphs;
    int k = 0;  // hyperedge arity parameter; 0 when inapplicable
    int max_n = 0;
    Signature signature;
    std::vector<PoolSlice> slices;  // index = size, 0..max_n

    std::uint64_t total_count() const;
    void for_each_member(const std::function<void(const Structure&)>& f) const;
    bool contains_isomorphic(const Structure& s) const;
};

struct EnumerateOptions {
    std::uint64_t labelled_budget = 1ull << 22;  // max labelled candidates per size
    std::uint64_t explicit_cap = 1ull << 14;     // larger slices stay mask-backed
};

// Throws BudgetExceeded (with a count estimate) rather than truncating.
ClassPool enumerate_class(Family family, int k, int max_n, const EnumerateOptions& opts = {});

// Seeded hereditary pool for property sweeps: a random downward-closed
// sub-pool of a randomly chosen small family.
ClassPool random_hereditary_pool(std::uint64_t seed);

// --- amalgamation ------------------------------------------------------------

struct Amalgam {
    Structure d;
    VertexMap g;  // B -> D
    VertexMap h;  // C -> D
};

// Free amalgam of unordered hypergraphs over e: A->B, f: A->C; the result has
// no tuples beyond the two images and g∘e = h∘f.
Amalgam free_amalgam(const Structure& a, const Structure& b, const Structure& c,
                     const VertexMap& e, const VertexMap& f);

// Ordered variant: free amalgam of the hyperedge parts, vertices merged
// segment-wise between the common anchors with B's elements before C's.
Amalgam order_amalgam(const Structure& a, const Structure& b, const Structure& c,
                      const VertexMap& e, const VertexMap& f);

// --- bounded class properties -------------------------------------------------

enum class ClassProperty { hp, jep, ap };

std::string to_string(ClassProperty p);

struct PropertyReport {
    ClassProperty property = ClassProperty::hp;
    bool holds = true;  // no counterexample among the checked instances
    int verified_up_to = 0;
    int slack = 0;
    std::uint64_t instances_checked = 0;
    std::uint64_t instances_skipped = 0;  // witness would exceed the bound
    std::string counterexample;           // human-readable description when !holds
    std::optional<Structure> witness;     // offending member, when meaningful
};

// HP checks one-point deletions of every member. JEP/AP search for witnesses
// among the family re-enumerated to max_n + slack; instances whose canonical
// witness size exceeds that bound are counted as skipped, never as failures.
PropertyReport check_property(const ClassPool& pool, ClassProperty which, int slack = 0,
                              const EnumerateOptions& opts = {});

}  // namespace kaylab
