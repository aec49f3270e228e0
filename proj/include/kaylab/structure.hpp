#pragma once

// Finite relational structures over explicit signatures.
//
// Domains are always {0..n-1}. A signature symbol is one of:
//   hyperedge - arity-k relation whose realizations are k-element SETS
//               (tuples stored sorted, membership is permutation-invariant)
//   order     - the natural order 0 < 1 < ... < n-1, kept implicit
//   plain     - an arbitrary set of tuples (tournament arcs, C-relations, ...)
//
// Structures are immutable after construction and cheap to copy/share.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kaylab {

enum class SymbolKind { hyperedge, order, plain };

std::string to_string(SymbolKind k);
SymbolKind symbol_kind_from_string(const std::string& s);

struct Symbol {
    std::string name;
    int arity = 0;
    SymbolKind kind = SymbolKind::plain;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    const std::vector<Symbol>& symbols() const { return symbols_; }
    int arity(int sym) const { return symbols_[sym].arity; }
    SymbolKind kind(int sym) const { return symbols_[sym].kind; }
    int index_of(const std::string& name) const;  // -1 when absent
    std::optional<int> order_symbol() const;
    int symbol_count() const { return static_cast<int>(symbols_.size()); }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
};

using Tuple = std::vector<int>;

class Structure {
public:
    Structure() = default;

    // Tuples are validated and canonicalized: hyperedge tuples must have
    // pairwise-distinct entries (construction error otherwise) and are
    // sorted; each relation list is sorted and deduplicated. Tuples for an
    // order symbol may not be supplied here (the order is implicit).
    Structure(Signature sig, int size, std::vector<std::vector<Tuple>> relations);

    int size() const { return size_; }
    const Signature& signature() const { return sig_; }
    bool ordered() const { return sig_.order_symbol().has_value(); }

    // Sorted, deduplicated tuple list of a symbol. For an order symbol this
    // materializes the natural strict order pairs.
    const std::vector<Tuple>& tuples(int sym) const;
    std::vector<Tuple> materialized_tuples(int sym) const;

    // Membership; permutation-invariant for hyperedge symbols.
    bool has(int sym, const Tuple& t) const;

    std::uint64_t tuple_count(int sym) const { return rels_[sym].size(); }

    // Induced substructure on a subset of the domain, relabelled
    // order-preservingly onto {0..|D|-1}.
    Structure induced(const std::vector<int>& domain_subset) const;

    // Image under a permutation of {0..n-1} (perm[v] = new label of v).
    // Rejects permutations that are not order-preserving when ordered.
    Structure relabelled(const std::vector<int>& perm) const;

    friend bool operator==(const Structure&, const Structure&) = default;

    // Stable total order; used for deterministic pool listings.
    static int compare(const Structure& a, const Structure& b);

private:
    Signature sig_;
    int size_ = 0;
    std::vector<std::vector<Tuple>> rels_;  // parallel to sig_.symbols()
};

// --- common signatures & small factories -----------------------------------

// (V; R) with R a k-ary hyperedge symbol, plus "<=" when ordered.
Signature hypergraph_signature(int k, bool ordered, const std::string& name = "R");
// (V; S[, <=]) with S of arity k+1; the language of Kay-graphs.
Signature kay_signature(int k, bool ordered);
// (V; R, S[, <=]) with R of arity k and S of arity k+1.
Signature expanded_signature(int k, bool ordered);

// Pure linear order on n points.
Structure chain(int n);
// k-uniform hypergraph from an edge list.
Structure hypergraph(int n, int k, const std::vector<Tuple>& edges, bool ordered,
                     const std::string& name = "R");

}  // namespace kaylab
