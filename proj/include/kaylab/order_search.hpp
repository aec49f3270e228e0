#pragma once

// Quantifier-free 2-type atlas, definable-linear-order search over finite
// pools, rigidity checks, and the tournament/C-relation example family.
//
// A 2-type is the pointed isomorphism class of a 2-element induced
// substructure with a designated ordered pair; candidate order definitions
// pick one type from each converse pair. All verdicts are pool-relative.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kaylab/class_pool.hpp"
#include "kaylab/ramsey.hpp"
#include "kaylab/structure.hpp"

namespace kaylab {

// Canonical id of the pointed 2-element structure induced by (a, b), a != b.
// Ids are pool-independent (derived from the canonical text encoding).
std::string pair_type_id(const Structure& s, int a, int b);

struct PairType {
    std::string id;
    Structure rep;             // 2-element representative
    std::array<int, 2> pair;   // designated pair inside rep
    Structure witness;         // a pool member realizing the type
    std::array<int, 2> witness_pair;
};

struct TypeAtlas {
    std::vector<PairType> types;  // sorted by id
    std::vector<int> converse;    // involution on type indices
    std::vector<char> self_converse;

    int index_of(const std::string& id) const;
};

TypeAtlas build_atlas(const ClassPool& pool);
TypeAtlas build_atlas(const std::vector<Structure>& members);

struct OrderDefinition {
    std::vector<std::string> chosen;  // type ids, sorted
    bool contains(const std::string& id) const;
};

// Checks that the relation {(a,b) : type(a,b) chosen} is a strict linear
// order on s; on failure explains why in *why.
bool order_defines_linear(const OrderDefinition& phi, const Structure& s,
                          std::string* why = nullptr);

enum class OrderabilityStatus { ordered, self_converse_obstruction, exhausted };

std::string to_string(OrderabilityStatus s);

struct CandidateFailure {
    std::vector<std::string> chosen;
    Structure failing;  // minimal failing structure for this candidate
    std::string why;
};

struct OrderabilityResult {
    OrderabilityStatus status = OrderabilityStatus::exhausted;
    std::optional<OrderDefinition> phi;  // first valid candidate in selection order
    std::optional<PairType> obstruction_type;
    std::vector<CandidateFailure> failures;
    std::uint64_t candidates_tried = 0;
    int pool_max_n = 0;  // verdicts are relative to this bound
};

OrderabilityResult orderability_search(const ClassPool& pool, const TypeAtlas& atlas);
OrderabilityResult orderability_search(const ClassPool& pool);

bool is_rigid(const Structure& a);

// --- the tournament + C-relation family ---------------------------------------

// `tree_spec` is a nested-parentheses leaf list, e.g. "((0,1),(2,3))"; its
// leaves must be exactly 0..n-1. C(a;b,c) holds iff the meet of b,c lies
// strictly deeper than the meet of a with them.
Structure cameron_structure(const Structure& tournament, const std::string& tree_spec);

// All tournament/C-relation structures up to isomorphism, sizes 0..max_n.
ClassPool enumerate_cameron(int max_n, const EnumerateOptions& opts = {});

// --- constructive order extraction ---------------------------------------------

enum class ExtractionStatus { ordered, nonrigid_type, no_witness, inconsistent, budget_exhausted };

std::string to_string(ExtractionStatus s);

struct ExtractionStep {
    Structure b;
    bool witnessed = false;
    int c_size = -1;
    std::vector<int> expansion;  // the linear order on C as a permutation rank list
};

struct ExtractionResult {
    ExtractionStatus status = ExtractionStatus::no_witness;
    std::optional<OrderDefinition> phi;
    std::string detail;
    std::vector<ExtractionStep> steps;
    bool jep_checked = false;
    bool jep_holds = false;
    int pool_max_n = 0;
};

struct ExtractionOptions {
    std::uint64_t expansions_budget = 200000;  // (C, order) pairs per target B
    std::uint64_t jep_check_member_cap = 200;  // skip the JEP flag above this
};

// For each pool member B: order-expand candidate C's, colour every realized
// 2-type by direction, find one copy of B on which all direction colourings
// are constant, and read off a direction per type; directions must agree
// across all B and the resulting definition must order the whole pool.
ExtractionResult two_erp_order_extraction(const ClassPool& pool,
                                          const ExtractionOptions& opts = {});

}  // namespace kaylab
