#include "kaylab/morphisms.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "kaylab/subsets.hpp"

namespace kaylab {

namespace {

// Tuples packed 5 bits per entry; adequate for n <= 16, arity <= 12.
std::uint64_t pack_mapped(const Tuple& t, const VertexMap& perm, bool sort_entries) {
    int buf[12];
    for (std::size_t i = 0; i < t.size(); ++i) buf[i] = perm[t[i]];
    if (sort_entries) std::sort(buf, buf + t.size());
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        x |= static_cast<std::uint64_t>(buf[i] + 1) << (5 * i);
    return x;
}

std::vector<std::uint64_t> relation_encoding(const Structure& a, const VertexMap& perm) {
    std::vector<std::uint64_t> code;
    for (int s = 0; s < a.signature().symbol_count(); ++s) {
        if (a.signature().kind(s) == SymbolKind::order) continue;
        const bool sort_entries = a.signature().kind(s) == SymbolKind::hyperedge;
        std::vector<std::uint64_t> part;
        part.reserve(a.tuples(s).size());
        for (const Tuple& t : a.tuples(s)) part.push_back(pack_mapped(t, perm, sort_entries));
        std::sort(part.begin(), part.end());
        code.push_back(part.size());
        code.insert(code.end(), part.begin(), part.end());
    }
    return code;
}

VertexMap identity_map(int n) {
    VertexMap p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

// Iso-invariant vertex colouring by iterated degree refinement. The colour
// values themselves (not arrival order) are the keys, so equal colours mean
// equal invariants across different structures.
std::vector<std::vector<std::uint64_t>> vertex_invariants(const Structure& a) {
    const int n = a.size();
    std::vector<std::vector<std::uint64_t>> colour(n);
    for (int v = 0; v < n; ++v) {
        for (int s = 0; s < a.signature().symbol_count(); ++s) {
            if (a.signature().kind(s) == SymbolKind::order) continue;
            std::uint64_t total = 0;
            std::vector<std::uint64_t> per_pos(a.signature().arity(s), 0);
            for (const Tuple& t : a.tuples(s))
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (t[i] == v) { ++total; ++per_pos[i]; }
            colour[v].push_back(total);
            if (a.signature().kind(s) == SymbolKind::plain)
                colour[v].insert(colour[v].end(), per_pos.begin(), per_pos.end());
        }
    }
    for (int round = 0; round < 3; ++round) {
        // compress current colours to small ids (sorted by value: canonical)
        std::map<std::vector<std::uint64_t>, std::uint64_t> ids;
        for (int v = 0; v < n; ++v) ids.emplace(colour[v], 0);
        std::uint64_t next = 1;
        for (auto& kv : ids) kv.second = next++;
        std::vector<std::vector<std::uint64_t>> refined(n);
        for (int v = 0; v < n; ++v) refined[v].push_back(ids[colour[v]]);
        for (int s = 0; s < a.signature().symbol_count(); ++s) {
            if (a.signature().kind(s) == SymbolKind::order) continue;
            // positions within a tuple carry meaning for plain symbols only;
            // hyperedge tuples are stored sorted by label
            const bool positional = a.signature().kind(s) == SymbolKind::plain;
            for (int v = 0; v < n; ++v) {
                std::vector<std::uint64_t> items;
                for (const Tuple& t : a.tuples(s)) {
                    std::uint64_t pos_mask = 0;
                    bool through = false;
                    for (std::size_t i = 0; i < t.size(); ++i)
                        if (t[i] == v) { through = true; if (positional) pos_mask |= 1ull << i; }
                    if (!through) continue;
                    std::vector<std::uint64_t> others;
                    for (int w : t)
                        if (w != v) others.push_back(ids[colour[w]]);
                    if (a.signature().kind(s) == SymbolKind::hyperedge)
                        std::sort(others.begin(), others.end());
                    std::uint64_t item = pos_mask;
                    for (std::uint64_t o : others) item = item * 1315423911ull + o;
                    items.push_back(item);
                }
                std::sort(items.begin(), items.end());
                refined[v].insert(refined[v].end(), items.begin(), items.end());
            }
        }
        if (refined == colour) break;
        colour = std::move(refined);
    }
    return colour;
}

}  // namespace

VertexMap compose(const VertexMap& first, const VertexMap& then) {
    VertexMap out(first.size());
    for (std::size_t v = 0; v < first.size(); ++v) out[v] = then[first[v]];
    return out;
}

VertexMap inverse_permutation(const VertexMap& perm) {
    VertexMap inv(perm.size());
    for (std::size_t v = 0; v < perm.size(); ++v) inv[perm[v]] = static_cast<int>(v);
    return inv;
}

bool is_embedding(const Structure& a, const Structure& b, const VertexMap& map) {
    if (!(a.signature() == b.signature())) return false;
    if (static_cast<int>(map.size()) != a.size()) return false;
    std::vector<int> pre(b.size(), -1);
    for (int v = 0; v < a.size(); ++v) {
        int w = map[v];
        if (w < 0 || w >= b.size() || pre[w] >= 0) return false;
        pre[w] = v;
    }
    if (a.ordered())
        for (int v = 0; v + 1 < a.size(); ++v)
            if (map[v] >= map[v + 1]) return false;
    for (int s = 0; s < a.signature().symbol_count(); ++s) {
        if (a.signature().kind(s) == SymbolKind::order) continue;
        Tuple img;
        for (const Tuple& t : a.tuples(s)) {
            img.resize(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) img[i] = map[t[i]];
            if (!b.has(s, img)) return false;
        }
        Tuple back;
        for (const Tuple& t : b.tuples(s)) {
            bool inside = true;
            back.resize(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] >= b.size() || pre[t[i]] < 0) { inside = false; break; }
                back[i] = pre[t[i]];
            }
            if (inside && !a.has(s, back)) return false;
        }
    }
    return true;
}

std::vector<VertexMap> enumerate_embeddings(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("enumerate_embeddings: signature mismatch");
    const int m = a.size(), n = b.size();
    std::vector<VertexMap> out;
    if (m > n) return out;
    const bool ordered = a.ordered();

    // tuples of a grouped by their maximum vertex, for incremental checks
    struct Pending { int sym; const Tuple* t; };
    std::vector<std::vector<Pending>> by_max(m);
    for (int s = 0; s < a.signature().symbol_count(); ++s) {
        if (a.signature().kind(s) == SymbolKind::order) continue;
        for (const Tuple& t : a.tuples(s)) {
            int mx = *std::max_element(t.begin(), t.end());
            by_max[mx].push_back({s, &t});
        }
    }

    VertexMap map(m, -1);
    std::vector<char> used(n, 0);
    Tuple img;

    auto reflects = [&]() {
        for (int s = 0; s < a.signature().symbol_count(); ++s) {
            if (a.signature().kind(s) == SymbolKind::order) continue;
            std::size_t inside = 0;
            for (const Tuple& t : b.tuples(s)) {
                bool in = true;
                for (int w : t)
                    if (!used[w]) { in = false; break; }
                if (in) ++inside;
            }
            if (inside != a.tuples(s).size()) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int v) -> void {
        if (v == m) {
            if (reflects()) out.push_back(map);
            return;
        }
        int lo = ordered && v > 0 ? map[v - 1] + 1 : 0;
        for (int w = lo; w < n; ++w) {
            if (used[w]) continue;
            map[v] = w;
            used[w] = 1;
            bool ok = true;
            for (const Pending& p : by_max[v]) {
                img.resize(p.t->size());
                for (std::size_t i = 0; i < p.t->size(); ++i) img[i] = map[(*p.t)[i]];
                if (!b.has(p.sym, img)) { ok = false; break; }
            }
            if (ok) self(self, v + 1);
            used[w] = 0;
            map[v] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

CopySet enumerate_copies(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()))
        throw std::invalid_argument("enumerate_copies: signature mismatch");
    CopySet cs;
    if (a.size() > b.size()) return cs;
    const auto target = canonical_code(a);
    std::vector<int> subset;
    for_each_subset(b.size(), a.size(), [&](const std::vector<int>& d) {
        if (canonical_code(b.induced(d)) == target) cs.members.push_back(d);
    });
    return cs;
}

std::vector<VertexMap> automorphisms(const Structure& a) {
    if (a.ordered()) return {identity_map(a.size())};
    return enumerate_embeddings(a, a);
}

CanonicalForm canonical_form(const Structure& a) {
    const int n = a.size();
    if (a.ordered() || n <= 1) return {a, identity_map(n)};

    const auto inv = vertex_invariants(a);
    // positions are claimed class-by-class, classes ordered by invariant value
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return inv[x] < inv[y]; });
    // slot_class[i]: vertices eligible for canonical position i
    std::vector<std::vector<int>> slot_cands(n);
    for (int i = 0; i < n; ++i)
        for (int v = 0; v < n; ++v)
            if (inv[v] == inv[order[i]]) slot_cands[i].push_back(v);

    VertexMap pos_to_vertex(n, -1), best_perm;
    std::vector<char> used(n, 0);
    std::vector<std::uint64_t> best_code;

    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            VertexMap perm(n);  // perm[v] = canonical position of v
            for (int p = 0; p < n; ++p) perm[pos_to_vertex[p]] = p;
            auto code = relation_encoding(a, perm);
            if (best_code.empty() || code < best_code) {
                best_code = std::move(code);
                best_perm = perm;
            }
            return;
        }
        for (int v : slot_cands[i]) {
            if (used[v]) continue;
            used[v] = 1;
            pos_to_vertex[i] = v;
            self(self, i + 1);
            used[v] = 0;
        }
    };
    rec(rec, 0);
    return {a.relabelled(best_perm), best_perm};
}

std::vector<std::uint64_t> canonical_code(const Structure& a) {
    std::vector<std::uint64_t> code{static_cast<std::uint64_t>(a.size())};
    if (a.ordered() || a.size() <= 1) {
        auto enc = relation_encoding(a, identity_map(a.size()));
        code.insert(code.end(), enc.begin(), enc.end());
        return code;
    }
    auto cf = canonical_form(a);
    auto enc = relation_encoding(cf.canon, identity_map(a.size()));
    code.insert(code.end(), enc.begin(), enc.end());
    return code;
}

std::optional<VertexMap> find_isomorphism(const Structure& a, const Structure& b) {
    if (!(a.signature() == b.signature()) || a.size() != b.size()) return std::nullopt;
    auto ca = canonical_form(a);
    auto cb = canonical_form(b);
    if (!(ca.canon == cb.canon)) return std::nullopt;
    return compose(ca.relabelling, inverse_permutation(cb.relabelling));
}

}  // namespace kaylab
