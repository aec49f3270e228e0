#include "kaylab/certcheck.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kaylab/errors.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/subsets.hpp"

namespace kaylab::certcheck {

namespace {

bool subset_of(const std::vector<int>& small, const std::vector<int>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

Verification verify_refutation(const Structure& c, const Structure& b,
                               const std::vector<FamilyData>& families, bool copies_mode) {
    Verification out;

    // the supplied object lists must be the complete enumeration
    for (const FamilyData& fam : families) {
        std::vector<std::vector<int>> expect =
            copies_mode ? enumerate_copies(fam.pattern, c).members
                        : enumerate_embeddings(fam.pattern, c);
        std::vector<std::vector<int>> got = fam.objects;
        std::sort(got.begin(), got.end());
        if (got != expect) {
            out.detail = "object list is not the full enumeration";
            return out;
        }
        if (fam.colouring.size() != fam.objects.size()) {
            out.detail = "colouring length mismatch";
            return out;
        }
        for (int col : fam.colouring)
            if (col < 0 || col >= fam.colours) {
                out.detail = "colour out of palette";
                return out;
            }
    }

    std::vector<std::map<std::vector<int>, int>> index(families.size());
    for (std::size_t f = 0; f < families.size(); ++f)
        for (std::size_t i = 0; i < families[f].objects.size(); ++i)
            index[f][families[f].objects[i]] = static_cast<int>(i);

    const std::vector<std::vector<int>> blocks =
        copies_mode ? enumerate_copies(b, c).members : enumerate_embeddings(b, c);
    for (const std::vector<int>& block : blocks) {
        ++out.blocks_checked;
        bool exceeded = false;
        for (std::size_t f = 0; f < families.size() && !exceeded; ++f) {
            std::set<int> seen;
            if (copies_mode) {
                for (std::size_t i = 0; i < families[f].objects.size(); ++i)
                    if (subset_of(families[f].objects[i], block))
                        seen.insert(families[f].colouring[i]);
            } else {
                for (const auto& e : enumerate_embeddings(families[f].pattern, b)) {
                    std::vector<int> composed(e.size());
                    for (std::size_t v = 0; v < e.size(); ++v) composed[v] = block[e[v]];
                    auto it = index[f].find(composed);
                    if (it == index[f].end()) {
                        out.detail = "an induced object is missing from the list";
                        return out;
                    }
                    seen.insert(families[f].colouring[it->second]);
                }
            }
            if (static_cast<int>(seen.size()) > families[f].degree) exceeded = true;
        }
        if (!exceeded) {
            out.detail = "a block sees at most the allowed number of colours";
            return out;
        }
    }
    out.valid = true;
    return out;
}

Verification verify_no_mono_copy(const Structure& c, const Structure& pattern,
                                 const std::vector<std::pair<std::vector<int>, int>>& colouring) {
    Verification out;
    std::map<std::vector<int>, int> colour_of;
    for (const auto& [subset, col] : colouring) colour_of[subset] = col;

    for (const std::vector<int>& copy : enumerate_copies(pattern, c).members) {
        ++out.blocks_checked;
        std::set<int> seen;
        const int k = static_cast<int>(colouring.empty() ? 0 : colouring.front().first.size());
        bool missing = false;
        for_each_subset_of(copy, k, [&](const std::vector<int>& t) {
            auto it = colour_of.find(t);
            if (it == colour_of.end()) missing = true;
            else seen.insert(it->second);
        });
        if (missing) {
            out.detail = "colouring does not cover all subsets of a copy";
            return out;
        }
        if (seen.size() < 2) {
            out.detail = "monochromatic copy found";
            return out;
        }
    }
    out.valid = true;
    return out;
}

bool arrow_holds_by_enumeration(const Structure& c, const Structure& b,
                                const std::vector<FamilyData>& families, bool copies_mode,
                                std::uint64_t max_colourings) {
    const std::vector<std::vector<int>> blocks =
        copies_mode ? enumerate_copies(b, c).members : enumerate_embeddings(b, c);
    if (blocks.empty()) return false;  // nothing can ever host a good copy

    // objects per family and, per block, the object indices it contains
    std::vector<std::vector<std::vector<int>>> objects(families.size());
    std::vector<std::vector<std::vector<int>>> block_objs(blocks.size());
    for (std::size_t f = 0; f < families.size(); ++f) {
        objects[f] = copies_mode ? enumerate_copies(families[f].pattern, c).members
                                 : enumerate_embeddings(families[f].pattern, c);
        std::map<std::vector<int>, int> index;
        for (std::size_t i = 0; i < objects[f].size(); ++i) index[objects[f][i]] = static_cast<int>(i);
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            block_objs[bi].resize(families.size());
            if (copies_mode) {
                for (std::size_t i = 0; i < objects[f].size(); ++i)
                    if (subset_of(objects[f][i], blocks[bi]))
                        block_objs[bi][f].push_back(static_cast<int>(i));
            } else {
                for (const auto& e : enumerate_embeddings(families[f].pattern, b)) {
                    std::vector<int> composed(e.size());
                    for (std::size_t v = 0; v < e.size(); ++v) composed[v] = blocks[bi][e[v]];
                    block_objs[bi][f].push_back(index.at(composed));
                }
            }
        }
    }

    std::vector<std::pair<int, int>> vars;
    for (std::size_t f = 0; f < families.size(); ++f)
        for (std::size_t o = 0; o < objects[f].size(); ++o)
            vars.push_back({static_cast<int>(f), static_cast<int>(o)});
    long double total = 1;
    for (auto [f, o] : vars) total *= families[f].colours;
    if (total > static_cast<long double>(max_colourings))
        throw kaylab::BudgetExceeded("arrow_holds_by_enumeration: too many colourings",
                                     std::to_string(static_cast<double>(total)) + " colourings");

    std::vector<int> colour(vars.size(), 0);
    std::vector<std::vector<int>> per_family(families.size());
    for (std::size_t f = 0; f < families.size(); ++f) per_family[f].assign(objects[f].size(), 0);
    while (true) {
        for (std::size_t v = 0; v < vars.size(); ++v)
            per_family[vars[v].first][vars[v].second] = colour[v];
        bool good_block = false;
        for (std::size_t bi = 0; bi < blocks.size() && !good_block; ++bi) {
            bool good = true;
            for (std::size_t f = 0; f < families.size() && good; ++f) {
                std::set<int> seen;
                for (int oi : block_objs[bi][f]) seen.insert(per_family[f][oi]);
                if (static_cast<int>(seen.size()) > families[f].degree) good = false;
            }
            good_block = good;
        }
        if (!good_block) return false;
        std::size_t v = 0;
        while (v < vars.size()) {
            if (++colour[v] < families[vars[v].first].colours) break;
            colour[v] = 0;
            ++v;
        }
        if (v == vars.size()) break;
    }
    return true;
}

}  // namespace kaylab::certcheck
