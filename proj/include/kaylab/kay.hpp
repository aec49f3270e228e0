#pragma once

// The Kay-graph construction and its inverse.
//
// kay maps a k-uniform hypergraph (V;R) to the (k+1)-uniform hypergraph on
// the same vertices whose hyperedges are the (k+1)-sets containing a number
// of R-edges congruent to k+1 mod 2 (two-graphs are the k=2 case). Images
// are exactly the (k+1)-hypergraphs in which every (k+2)-set induces a
// number of hyperedges congruent to k mod 2; reconstruct_base inverts kay
// from any chosen star vertex whenever that parity condition holds.

#include <cstdint>
#include <optional>
#include <vector>

#include "kaylab/errors.hpp"
#include "kaylab/structure.hpp"

namespace kaylab {

// Bitmask kernel over colex-ranked subsets; the inner loop of every
// exhaustive suite. Requires binom(n,k+1) <= 64 and binom(n,k) <= 64.
class KayKernel {
public:
    KayKernel(int n, int k);

    static bool fits(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    int edge_bits() const { return edge_bits_; }   // #k-subsets
    int kay_bits() const { return kay_bits_; }     // #(k+1)-subsets

    std::uint64_t full_edges() const { return edge_bits_ == 64 ? ~0ull : (1ull << edge_bits_) - 1; }
    std::uint64_t full_kay() const { return kay_bits_ == 64 ? ~0ull : (1ull << kay_bits_) - 1; }

    std::uint64_t kay(std::uint64_t r_mask) const;
    bool parity_ok(std::uint64_t s_mask) const;
    std::uint64_t reconstruct(std::uint64_t s_mask, int star) const;

    // Local mask of the arity-subsets lying inside the sorted subset `w`.
    std::uint64_t restrict_mask(std::uint64_t mask, const std::vector<int>& w, int arity) const;

private:
    int n_, k_;
    int edge_bits_, kay_bits_;
    std::vector<std::uint64_t> sub_masks_;     // per (k+1)-set rank: its k-subsets
    std::vector<std::uint64_t> dagger_masks_;  // per (k+2)-set rank: its (k+1)-subsets
    // per star: -1 when the k-set contains the star, else the rank of set+star
    std::vector<std::vector<std::int32_t>> recon_;
};

std::uint64_t edges_to_mask(const Structure& h, int sym);
std::vector<Tuple> mask_to_edges(std::uint64_t mask, int k);

// --- structure-level operations ---------------------------------------------

// (V; R[, <=]) -> (V; S[, <=]); requires a single hyperedge symbol, k >= 2.
Structure kay_graph(const Structure& h);

struct ParityCheck {
    bool ok = false;
    std::optional<std::vector<int>> violation;  // lexicographically least (k+2)-subset
};

// The membership test for kay images: every (k+2)-subset must induce a
// number of (k+1)-hyperedges congruent to k mod 2. Requires arity >= 3.
ParityCheck check_parity(const Structure& s);

// Inverts kay from the given star vertex. Star-avoiding k-sets become edges
// iff S holds on the set plus the star; star-containing k-sets are all edges
// when k is odd and none when k is even (both choices invert kay; the even
// case keeps edgeless inputs edgeless). Throws ParityViolation eagerly.
Structure reconstruct_base(const Structure& s, int star);

struct MembershipReport {
    bool member = false;
    ParityCheck parity;                  // route 1
    std::optional<Structure> preimage;   // route 2 witness when found
    std::uint64_t candidates_tried = 0;
};

// Two independent routes (parity condition / exhaustive preimage search over
// all 2^binom(n,k) edge sets); throws BudgetExceeded when the search space
// exceeds `budget`, and logic_error if the routes ever disagree.
MembershipReport kay_class_membership(const Structure& s, std::uint64_t budget = 1ull << 22);

// The full preimage set of a Kay image is a coset of the kernel of the
// edge-set parity map: one reconstructed base point plus any combination of
// the kernel basis. Throws ParityViolation when s has no preimage.
struct PreimageFiber {
    int n = 0;
    int k = 0;
    std::uint64_t base_point = 0;
    std::vector<std::uint64_t> kernel_basis;

    std::uint64_t count() const { return 1ull << kernel_basis.size(); }
    std::uint64_t member(std::uint64_t index) const {
        std::uint64_t r = base_point;
        for (std::size_t j = 0; j < kernel_basis.size(); ++j)
            if ((index >> j) & 1) r ^= kernel_basis[j];
        return r;
    }
};

PreimageFiber preimage_fiber(const Structure& s);

// --- expansions (V; R, S[, <=]) with S = kay(R) ------------------------------

class ExpandedStructure {
public:
    static ExpandedStructure from_edges(int n, int k, const std::vector<Tuple>& edges, bool ordered);
    // Validates S == kay(R); throws invalid_argument otherwise.
    static ExpandedStructure wrap(Structure s);

    const Structure& structure() const { return s_; }
    int size() const { return s_.size(); }
    int k() const;
    bool ordered() const { return s_.ordered(); }
    int edge_symbol() const;
    int kay_symbol() const;

    Structure base() const;       // reduct to (V; S[, <=])
    Structure edge_part() const;  // reduct to (V; R[, <=])

    friend bool operator==(const ExpandedStructure&, const ExpandedStructure&) = default;

private:
    explicit ExpandedStructure(Structure s) : s_(std::move(s)) {}
    Structure s_;
};

// Replaces R by its complement within binom(V,k) and recomputes S. The new S
// equals the old S iff k is odd, and its setwise complement iff k is even.
ExpandedStructure complement_expansion(const ExpandedStructure& a);

// Adds one new maximal vertex joined to every (k-1)-subset of the old
// vertices and recomputes S; afterwards S(x..,star) <=> R(x..) for every
// k-subset of the old vertices (checked).
ExpandedStructure star_extension(const ExpandedStructure& d);

ExpandedStructure expanded_disjoint_union(const ExpandedStructure& a, const ExpandedStructure& b);

}  // namespace kaylab
