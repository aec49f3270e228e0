#pragma once

// Arrow predicates, joint colourings, expansion counting, and the
// constructive non-Ramsey machinery.
//
// The central search is a refutation search: to decide whether every
// r-colouring of the A-objects of C admits a B-copy seeing at most d
// colours, we look for a colouring under which every B-copy sees more than
// d colours. Verdicts are three-valued; "holds" is only ever emitted on an
// exhausted search, never on a truncated one.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kaylab/class_pool.hpp"
#include "kaylab/kay.hpp"
#include "kaylab/structure.hpp"

namespace kaylab {

enum class ArrowVerdict { holds, fails, budget_exhausted };
enum class ColourMode { copies, embeddings };

std::string to_string(ArrowVerdict v);
std::string to_string(ColourMode m);
ColourMode colour_mode_from_string(const std::string& s);

struct ColourFamily {
    Structure pattern;  // what gets coloured
    int colours = 2;    // palette size r
    int degree = 1;     // allowed oscillation d
};

struct ArrowOptions {
    std::uint64_t node_budget = 0;  // 0 = KAYLAB_BUDGET_DEFAULT env or 50M
    int workers = 1;
    bool deterministic = false;  // single-worker replay, canonical certificate
};

std::uint64_t default_node_budget();

struct ArrowCertificate {
    ArrowVerdict verdict = ArrowVerdict::budget_exhausted;
    ColourMode mode = ColourMode::copies;
    bool vacuous = false;
    std::string note;

    // per family: the coloured objects (copies as sorted vertex subsets, or
    // embedding maps), and on a fails verdict the bad colouring
    std::vector<std::vector<std::vector<int>>> objects;
    std::vector<std::vector<int>> colouring;

    std::vector<std::vector<int>> blocks;        // all B-copies/embeddings
    std::optional<std::vector<int>> good_copy;   // witness from the last refuted branch
    std::uint64_t nodes = 0;
};

// Simultaneous colourings: holds iff every family of colourings admits one
// B-copy good for all families at once.
ArrowCertificate joint_oscillation(const Structure& c, const Structure& b,
                                   const std::vector<ColourFamily>& families, ColourMode mode,
                                   const ArrowOptions& opts = {});

ArrowCertificate oscillation_holds(const Structure& c, const Structure& b, const Structure& a,
                                   int colours, int degree, ColourMode mode = ColourMode::copies,
                                   const ArrowOptions& opts = {});

// Builds a candidate C by chaining single-family witnesses from the pool
// (the inductive composition), then reports the stages; the caller verifies
// with joint_oscillation.
std::optional<Structure> sequential_arrow_builder(const ClassPool& pool, const Structure& b,
                                                  const std::vector<ColourFamily>& families,
                                                  ColourMode mode, const ArrowOptions& opts = {},
                                                  std::vector<Structure>* stages = nullptr);

// --- expansions ---------------------------------------------------------------

struct ExpansionCount {
    std::uint64_t count = 0;
    std::vector<Structure> witnesses;  // edge parts, capped
    bool witnesses_complete = true;
};

// Number of k-edge-sets R on base's vertices with kay(R) = S(base), by
// exhaustive edge-set enumeration.
ExpansionCount count_expansions(const Structure& base, int k, std::uint64_t witness_cap = 4096,
                                std::uint64_t budget = 1ull << 22);

struct ExpansionColouring {
    int k = 0;
    int star = 0;
    std::vector<std::vector<int>> objects;  // all k-subsets, lexicographic
    std::vector<int> colours;               // 1 iff an edge of the reconstructed expansion
};

// Colours the k-subsets of a Kay-graph by R-membership in the expansion
// reconstructed from `star`. `pattern` must be the size-k member (empty S).
ExpansionColouring expansion_colouring(const Structure& base, int k, const Structure& pattern,
                                       int star = 0);

// --- the non-Ramsey construction ----------------------------------------------

struct NonRamseyMemberResult {
    int size = 0;
    std::uint64_t index = 0;
    std::uint64_t copies = 0;
    bool mono_found = false;
};

struct NonRamseyReport {
    int k = 0;
    bool exploratory = false;  // k = 2 runs
    Structure b_star;
    bool empty_extension_differs = false;     // kay(no edges) != S(B*)
    bool complete_extension_differs = false;  // kay(all edges) != S(B*)
    std::uint64_t members_checked = 0;
    std::uint64_t copies_checked = 0;
    std::uint64_t mono_copies = 0;  // must stay 0
    std::uint64_t independently_validated = 0;
    std::vector<NonRamseyMemberResult> failures;
};

struct NonRamseyOptions {
    bool validate_independently = true;  // run the dumb validator per member
    int star = 0;
};

// For every pool member, the expansion colouring leaves no monochromatic
// copy of B* = kay(single k-edge on k+2 ordered vertices). Throws if the
// pool contains a structure outside the Kay image family.
NonRamseyReport non_ramsey_witness(int k, const ClassPool& pool,
                                   const NonRamseyOptions& opts = {});

// --- ERP probes -----------------------------------------------------------------

struct ErpProbeEntry {
    Structure b;
    bool vacuous = false;
    std::optional<int> witness_size;
    std::optional<std::uint64_t> witness_index;
    ArrowVerdict last_verdict = ArrowVerdict::budget_exhausted;
};

struct ErpProbeReport {
    int k = 0;
    int pattern_size = 0;
    std::vector<ErpProbeEntry> entries;
    bool all_found = true;
};

// For A = the size-s ordered Kay-graph and each pool member B up to
// b_max_size, searches the pool (increasing size) for C with
// C -> (B)^A_2 at degree 1.
ErpProbeReport positive_erp_probe(int k, const ClassPool& pool, int s, int b_max_size,
                                  const ArrowOptions& opts = {});

// True iff every expansion of b embeds a_star.
bool expansion_property_probe(const ExpandedStructure& a_star, const Structure& b,
                              std::uint64_t budget = 1ull << 22);

// Candidate witness shaped like the expansion-property recipe: the star
// extension over a_star joined with its complement, reduced to the Kay
// language.
Structure expansion_recipe_candidate(const ExpandedStructure& a_star);

}  // namespace kaylab
