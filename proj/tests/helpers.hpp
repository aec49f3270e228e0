#pragma once

// Test-only helpers: seeded random structures and brute-force oracles kept
// independent of the library's search paths.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "kaylab/structure.hpp"
#include "kaylab/subsets.hpp"

namespace kaylab::testing {

inline Signature random_signature(std::mt19937_64& rng) {
    switch (rng() % 4) {
        case 0: return hypergraph_signature(2, false);
        case 1: return hypergraph_signature(3, false);
        case 2: return hypergraph_signature(2, true);
        default: return Signature({{"R", 2, SymbolKind::plain}});
    }
}

inline Structure random_structure(const Signature& sig, int n, std::mt19937_64& rng,
                                  double density = 0.4) {
    std::vector<std::vector<Tuple>> rels(sig.symbol_count());
    for (int s = 0; s < sig.symbol_count(); ++s) {
        const Symbol& sym = sig.symbols()[s];
        if (sym.kind == SymbolKind::order) continue;
        if (sym.kind == SymbolKind::hyperedge) {
            for_each_subset(n, sym.arity, [&](const std::vector<int>& t) {
                if (std::uniform_real_distribution<>(0, 1)(rng) < density) rels[s].push_back(t);
            });
        } else {
            std::vector<int> idx(sym.arity);
            auto all = [&](auto&& self, int i) -> void {
                if (i == sym.arity) {
                    bool distinct = true;
                    for (int a = 0; a < i && distinct; ++a)
                        for (int b = a + 1; b < i; ++b)
                            if (idx[a] == idx[b]) { distinct = false; break; }
                    if (distinct && std::uniform_real_distribution<>(0, 1)(rng) < density)
                        rels[s].push_back(Tuple(idx.begin(), idx.end()));
                    return;
                }
                for (idx[i] = 0; idx[i] < n; ++idx[i]) self(self, i + 1);
            };
            all(all, 0);
        }
    }
    return Structure(sig, n, std::move(rels));
}

// Brute-force embedding count: try every injection, check preserve+reflect
// tuple-by-tuple with no pruning.
inline long brute_force_embedding_count(const Structure& a, const Structure& b) {
    const int m = a.size(), n = b.size();
    if (m > n) return 0;
    std::vector<int> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    long count = 0;
    std::vector<int> map(m);
    auto rec = [&](auto&& self, int depth, std::vector<int> avail) -> void {
        if (depth == m) {
            if (a.ordered())
                for (int v = 0; v + 1 < m; ++v)
                    if (map[v] >= map[v + 1]) return;
            for (int s = 0; s < a.signature().symbol_count(); ++s) {
                if (a.signature().kind(s) == SymbolKind::order) continue;
                for (const Tuple& t : a.materialized_tuples(s)) {
                    Tuple img(t.size());
                    for (std::size_t i = 0; i < t.size(); ++i) img[i] = map[t[i]];
                    if (!b.has(s, img)) return;
                }
                for (const Tuple& t : b.tuples(s)) {
                    Tuple back(t.size());
                    bool inside = true;
                    for (std::size_t i = 0; i < t.size() && inside; ++i) {
                        auto it = std::find(map.begin(), map.end(), t[i]);
                        if (it == map.end()) inside = false;
                        else back[i] = static_cast<int>(it - map.begin());
                    }
                    if (inside && !a.has(s, back)) return;
                }
            }
            ++count;
            return;
        }
        for (std::size_t i = 0; i < avail.size(); ++i) {
            map[depth] = avail[i];
            std::vector<int> rest = avail;
            rest.erase(rest.begin() + static_cast<long>(i));
            self(self, depth + 1, rest);
        }
    };
    rec(rec, 0, pick);
    return count;
}

// Brute-force isomorphism test over all permutations.
inline bool brute_force_isomorphic(const Structure& a, const Structure& b) {
    if (a.size() != b.size() || !(a.signature() == b.signature())) return false;
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        if (a.ordered()) {
            for (std::size_t v = 0; v + 1 < perm.size() && ok; ++v)
                if (perm[v] >= perm[v + 1]) ok = false;
        }
        for (int s = 0; s < a.signature().symbol_count() && ok; ++s) {
            if (a.signature().kind(s) == SymbolKind::order) continue;
            if (a.tuples(s).size() != b.tuples(s).size()) { ok = false; break; }
            for (const Tuple& t : a.tuples(s)) {
                Tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm[t[i]];
                if (!b.has(s, img)) { ok = false; break; }
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace kaylab::testing
