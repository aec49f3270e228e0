#pragma once

// Dumb certificate validators. These rescan certificates with plain loops
// over the core structure machinery and share no code with the searchers.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kaylab/structure.hpp"

namespace kaylab::certcheck {

struct FamilyData {
    Structure pattern;
    int colours = 2;
    int degree = 1;
    std::vector<std::vector<int>> objects;  // copies (vertex subsets) or embedding maps
    std::vector<int> colouring;             // parallel to objects
};

struct Verification {
    bool valid = false;
    std::string detail;
    std::uint64_t blocks_checked = 0;
};

// A refutation claims: under the given colourings, EVERY copy/embedding of b
// in c sees more than `degree` colours for at least one family. Object lists
// are re-enumerated and compared, then every block is scanned.
Verification verify_refutation(const Structure& c, const Structure& b,
                               const std::vector<FamilyData>& families, bool copies_mode);

// Claims that no copy of `pattern` inside `c` is monochromatic under the
// given colouring of vertex subsets.
Verification verify_no_mono_copy(const Structure& c, const Structure& pattern,
                                 const std::vector<std::pair<std::vector<int>, int>>& colouring);

// Decides the arrow by unpruned enumeration of every colouring: true iff
// each admits a block within its degrees. The objects/colouring fields of
// FamilyData are ignored. Throws BudgetExceeded above max_colourings.
bool arrow_holds_by_enumeration(const Structure& c, const Structure& b,
                                const std::vector<FamilyData>& families, bool copies_mode,
                                std::uint64_t max_colourings = 1ull << 20);

}  // namespace kaylab::certcheck
