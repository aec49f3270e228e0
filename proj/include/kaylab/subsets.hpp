#pragma once

// Ranked k-subset utilities. Hyperedge sets are indexed by the colex rank of
// their sorted vertex tuple so that exhaustive suites can run on bitmasks.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kaylab {

inline std::uint64_t binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

// colex rank of a sorted subset: rank(t) = sum_i binom(t[i], i+1)
inline std::uint64_t colex_rank(const std::vector<int>& sorted_subset) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sorted_subset.size(); ++i)
        r += binom(sorted_subset[i], static_cast<int>(i) + 1);
    return r;
}

inline std::vector<int> colex_unrank(std::uint64_t rank, int k) {
    std::vector<int> out(k);
    for (int i = k; i >= 1; --i) {
        int v = i - 1;
        while (binom(v + 1, i) <= rank) ++v;
        out[i - 1] = v;
        rank -= binom(v, i);
    }
    return out;
}

// Visits all k-subsets of {0..n-1} in lexicographic order of the sorted tuple.
template <typename F>
inline void for_each_subset(int n, int k, F&& f) {
    if (k < 0 || k > n) return;
    std::vector<int> t(k);
    for (int i = 0; i < k; ++i) t[i] = i;
    while (true) {
        f(const_cast<const std::vector<int>&>(t));
        int i = k - 1;
        while (i >= 0 && t[i] == n - k + i) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
    }
}

// Visits all k-subsets of the given (sorted) ground set, lexicographically.
template <typename F>
inline void for_each_subset_of(const std::vector<int>& ground, int k, F&& f) {
    for_each_subset(static_cast<int>(ground.size()), k, [&](const std::vector<int>& idx) {
        std::vector<int> t(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) t[i] = ground[idx[i]];
        f(const_cast<const std::vector<int>&>(t));
    });
}

}  // namespace kaylab
