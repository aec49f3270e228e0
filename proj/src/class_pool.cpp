#include "kaylab/class_pool.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "kaylab/subsets.hpp"

namespace kaylab {

namespace {

std::uint64_t pow2_or_throw(std::uint64_t bits, std::uint64_t budget, const std::string& what) {
    if (bits >= 63 || (1ull << bits) > budget)
        throw BudgetExceeded(what + ": labelled space too large", "2^" + std::to_string(bits) + " candidates");
    return 1ull << bits;
}

// canonical-representative dedup; keeps deterministic member order
std::vector<Structure> dedup_canonical(std::vector<Structure> raw) {
    std::map<std::vector<std::uint64_t>, Structure> by_code;
    for (Structure& s : raw) {
        auto cf = canonical_form(s);
        auto code = canonical_code(cf.canon);
        by_code.emplace(std::move(code), std::move(cf.canon));
    }
    std::vector<Structure> out;
    out.reserve(by_code.size());
    for (auto& kv : by_code) out.push_back(std::move(kv.second));
    return out;
}

std::vector<std::uint64_t> kay_image_masks(int n, int k, std::uint64_t budget) {
    if (n <= k) return {0};
    if (!KayKernel::fits(n, k))
        throw BudgetExceeded("ordered Kay enumeration: subset space exceeds 64 bits",
                             "binom(" + std::to_string(n) + "," + std::to_string(k) + ") ranks");
    KayKernel ctx(n, k);
    const std::uint64_t shift = ctx.kay(0);
    // echelon basis of the image's linear part: one pivot bit per vector
    std::vector<std::uint64_t> pivot(64, 0);
    std::vector<std::uint64_t> basis;
    for (int j = 0; j < ctx.edge_bits(); ++j) {
        std::uint64_t c = ctx.kay(1ull << j) ^ shift;
        while (c) {
            const int bit = 63 - std::countl_zero(c);
            if (!pivot[bit]) {
                pivot[bit] = c;
                basis.push_back(c);
                break;
            }
            c ^= pivot[bit];
        }
    }
    pow2_or_throw(basis.size(), budget, "ordered Kay enumeration");
    std::vector<std::uint64_t> out{shift};
    out.reserve(1ull << basis.size());
    for (std::uint64_t b : basis) {
        const std::size_t sz = out.size();
        for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] ^ b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::hypergraphs: return "hypergraphs";
        case Family::ordered_hypergraphs: return "ordered-hypergraphs";
        case Family::kay_graphs: return "kay-graphs";
        case Family::ordered_kay_graphs: return "ordered-kay-graphs";
        case Family::linear_orders: return "linear-orders";
        case Family::tournaments: return "tournaments";
        case Family::cameron: return "cameron";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    for (Family f : {Family::hypergraphs, Family::ordered_hypergraphs, Family::kay_graphs,
                     Family::ordered_kay_graphs, Family::linear_orders, Family::tournaments,
                     Family::cameron})
        if (to_string(f) == s) return f;
    throw std::invalid_argument("unknown family: " + s);
}

std::string to_string(ClassProperty p) {
    switch (p) {
        case ClassProperty::hp: return "HP";
        case ClassProperty::jep: return "JEP";
        case ClassProperty::ap: return "AP";
    }
    return "?";
}

Structure PoolSlice::materialize(std::uint64_t index) const {
    if (!lazy()) return members.at(index);
    return hypergraph(size, mask_k + 1, mask_to_edges(masks.at(index), mask_k + 1), mask_ordered, "S");
}

void PoolSlice::for_each(const std::function<void(const Structure&)>& f) const {
    if (!lazy()) {
        for (const Structure& s : members) f(s);
        return;
    }
    for (std::uint64_t i = 0; i < masks.size(); ++i) f(materialize(i));
}

std::uint64_t ClassPool::total_count() const {
    std::uint64_t t = 0;
    for (const PoolSlice& s : slices) t += s.count();
    return t;
}

void ClassPool::for_each_member(const std::function<void(const Structure&)>& f) const {
    for (const PoolSlice& s : slices) s.for_each(f);
}

bool ClassPool::contains_isomorphic(const Structure& s) const {
    if (s.size() >= static_cast<int>(slices.size())) return false;
    const PoolSlice& slice = slices[s.size()];
    if (slice.lazy()) {
        if (!(s.signature() == signature)) return false;
        std::uint64_t m = edges_to_mask(s, 0);
        return std::binary_search(slice.masks.begin(), slice.masks.end(), m);
    }
    auto code = canonical_code(s);
    for (const Structure& m : slice.members)
        if (canonical_code(m) == code) return true;
    return false;
}

ClassPool enumerate_class(Family family, int k, int max_n, const EnumerateOptions& opts) {
    ClassPool pool;
    pool.family = family;
    pool.k = k;
    pool.max_n = max_n;
    pool.slices.resize(max_n + 1);
    for (int m = 0; m <= max_n; ++m) pool.slices[m].size = m;

    switch (family) {
        case Family::linear_orders: {
            pool.signature = Signature({{"<=", 2, SymbolKind::order}});
            for (int m = 0; m <= max_n; ++m) pool.slices[m].members.push_back(chain(m));
            return pool;
        }
        case Family::hypergraphs:
        case Family::ordered_hypergraphs:
        case Family::kay_graphs: {
            if (k < 2) throw std::invalid_argument("enumerate_class: k must be >= 2");
            const bool ordered = family == Family::ordered_hypergraphs;
            const bool image = family == Family::kay_graphs;
            pool.signature = image ? kay_signature(k, false) : hypergraph_signature(k, ordered);
            for (int m = 0; m <= max_n; ++m) {
                const std::uint64_t bits = binom(m, k);
                const std::uint64_t total = pow2_or_throw(bits, opts.labelled_budget, to_string(family));
                if (ordered && total > opts.explicit_cap)
                    throw BudgetExceeded("ordered-hypergraphs: slice too large to materialize",
                                         std::to_string(total) + " labelled members");
                std::vector<Structure> raw;
                if (image) {
                    std::set<std::uint64_t> images;
                    if (m <= k) {
                        images.insert(0);
                    } else {
                        KayKernel ctx(m, k);
                        for (std::uint64_t r = 0; r < total; ++r) images.insert(ctx.kay(r));
                    }
                    for (std::uint64_t s : images)
                        raw.push_back(hypergraph(m, k + 1, mask_to_edges(s, k + 1), false, "S"));
                } else {
                    for (std::uint64_t r = 0; r < total; ++r)
                        raw.push_back(hypergraph(m, k, mask_to_edges(r, k), ordered));
                }
                pool.slices[m].members = ordered ? std::move(raw) : dedup_canonical(std::move(raw));
            }
            return pool;
        }
        case Family::ordered_kay_graphs: {
            if (k < 2) throw std::invalid_argument("enumerate_class: k must be >= 2");
            pool.signature = kay_signature(k, true);
            for (int m = 0; m <= max_n; ++m) {
                auto masks = kay_image_masks(m, k, opts.labelled_budget);
                PoolSlice& slice = pool.slices[m];
                if (masks.size() <= opts.explicit_cap) {
                    for (std::uint64_t s : masks)
                        slice.members.push_back(hypergraph(m, k + 1, mask_to_edges(s, k + 1), true, "S"));
                } else {
                    slice.masks = std::move(masks);
                    slice.mask_k = k;
                    slice.mask_ordered = true;
                }
            }
            return pool;
        }
        case Family::tournaments: {
            pool.signature = Signature({{"R", 2, SymbolKind::plain}});
            for (int m = 0; m <= max_n; ++m) {
                const std::uint64_t total =
                    pow2_or_throw(binom(m, 2), opts.labelled_budget, "tournaments");
                std::vector<Structure> raw;
                for (std::uint64_t bits = 0; bits < total; ++bits) {
                    std::vector<Tuple> arcs;
                    int i = 0;
                    for_each_subset(m, 2, [&](const std::vector<int>& p) {
                        arcs.push_back((bits >> i++) & 1 ? Tuple{p[0], p[1]} : Tuple{p[1], p[0]});
                    });
                    raw.push_back(Structure(pool.signature, m, {std::move(arcs)}));
                }
                pool.slices[m].members = dedup_canonical(std::move(raw));
            }
            return pool;
        }
        case Family::cameron:
            throw std::invalid_argument(
                "enumerate_class: cameron pools are built by the order-search module");
    }
    throw std::invalid_argument("enumerate_class: unknown family");
}

ClassPool random_hereditary_pool(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    struct Choice { Family family; int k; int max_n; };
    const Choice choices[] = {
        {Family::hypergraphs, 2, 4},        {Family::hypergraphs, 3, 4},
        {Family::ordered_hypergraphs, 2, 4}, {Family::ordered_hypergraphs, 3, 4},
        {Family::kay_graphs, 2, 4},         {Family::ordered_kay_graphs, 3, 4},
        {Family::linear_orders, 0, 5},      {Family::tournaments, 0, 4},
    };
    const Choice c = choices[rng() % (sizeof(choices) / sizeof(choices[0]))];
    EnumerateOptions opts;
    opts.explicit_cap = 1ull << 16;
    ClassPool full = enumerate_class(c.family, c.k, c.max_n, opts);

    const double keep = 0.3 + 0.6 * std::uniform_real_distribution<>(0, 1)(rng);
    ClassPool out = full;
    for (PoolSlice& slice : out.slices) {
        std::vector<Structure> kept;
        for (const Structure& s : slice.members)
            if (std::uniform_real_distribution<>(0, 1)(rng) < keep) kept.push_back(s);
        slice.members = std::move(kept);
    }
    // close downward under one-point deletions (canonical representatives)
    for (int m = out.max_n; m >= 1; --m) {
        std::set<std::vector<std::uint64_t>> have;
        for (const Structure& s : out.slices[m - 1].members) have.insert(canonical_code(s));
        std::vector<Structure> add;
        for (const Structure& s : out.slices[m].members) {
            for (int v = 0; v < m; ++v) {
                std::vector<int> d;
                for (int w = 0; w < m; ++w)
                    if (w != v) d.push_back(w);
                Structure child = canonical_form(s.induced(d)).canon;
                auto code = canonical_code(child);
                if (!have.count(code)) {
                    have.insert(code);
                    add.push_back(child);
                }
            }
        }
        auto& slice = out.slices[m - 1].members;
        slice.insert(slice.end(), add.begin(), add.end());
        std::sort(slice.begin(), slice.end(),
                  [](const Structure& a, const Structure& b) { return Structure::compare(a, b) < 0; });
    }
    return out;
}

// --- amalgamation ------------------------------------------------------------

namespace {

void require_embedding(const Structure& a, const Structure& b, const VertexMap& e,
                       const char* label) {
    if (!is_embedding(a, b, e))
        throw std::invalid_argument(std::string("amalgam: ") + label + " is not an embedding");
}

}  // namespace

Amalgam free_amalgam(const Structure& a, const Structure& b, const Structure& c,
                     const VertexMap& e, const VertexMap& f) {
    if (a.ordered() || b.ordered() || c.ordered())
        throw std::invalid_argument("free_amalgam: order symbols are not free-amalgamable");
    if (a.signature().symbol_count() != 1 || a.signature().kind(0) != SymbolKind::hyperedge)
        throw std::invalid_argument("free_amalgam: expected a single hyperedge symbol");
    require_embedding(a, b, e, "e");
    require_embedding(a, c, f, "f");

    const int nb = b.size(), nc = c.size(), na = a.size();
    VertexMap g(nb), h(nc, -1);
    for (int v = 0; v < nb; ++v) g[v] = v;
    for (int v = 0; v < na; ++v) h[f[v]] = e[v];
    int next = nb;
    for (int v = 0; v < nc; ++v)
        if (h[v] < 0) h[v] = next++;

    std::vector<Tuple> tuples;
    for (const Tuple& t : b.tuples(0)) tuples.push_back(t);
    for (const Tuple& t : c.tuples(0)) {
        Tuple img(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = h[t[i]];
        tuples.push_back(std::move(img));
    }
    Amalgam out{hypergraph(nb + nc - na, a.signature().arity(0), tuples, false,
                           a.signature().symbols()[0].name),
                std::move(g), std::move(h)};
    return out;
}

Amalgam order_amalgam(const Structure& a, const Structure& b, const Structure& c,
                      const VertexMap& e, const VertexMap& f) {
    if (!a.ordered() || !b.ordered() || !c.ordered())
        throw std::invalid_argument("order_amalgam: expected ordered structures");
    require_embedding(a, b, e, "e");
    require_embedding(a, c, f, "f");

    const int na = a.size(), nb = b.size(), nc = c.size();
    // walk the common chain; between anchors place B's segment then C's
    VertexMap g(nb, -1), h(nc, -1);
    std::vector<std::pair<int, int>> merged;  // (0,v in B) / (1,v in C)
    int bi = 0, ci = 0;
    for (int ai = 0; ai <= na; ++ai) {
        const int bstop = ai < na ? e[ai] : nb;
        const int cstop = ai < na ? f[ai] : nc;
        while (bi < bstop) merged.push_back({0, bi++});
        while (ci < cstop) merged.push_back({1, ci++});
        if (ai < na) {
            merged.push_back({0, bi});  // the anchor, shared by both sides
            ++bi;
            ++ci;
        }
    }
    for (std::size_t pos = 0; pos < merged.size(); ++pos) {
        auto [side, v] = merged[pos];
        if (side == 0) g[v] = static_cast<int>(pos);
        else h[v] = static_cast<int>(pos);
    }
    for (int ai = 0; ai < na; ++ai) h[f[ai]] = g[e[ai]];

    // every non-order symbol carries the union of the two images
    std::vector<std::vector<Tuple>> rels(a.signature().symbol_count());
    auto add = [&](const Structure& src, const VertexMap& map) {
        for (int s = 0; s < src.signature().symbol_count(); ++s) {
            if (src.signature().kind(s) == SymbolKind::order) continue;
            for (const Tuple& t : src.tuples(s)) {
                Tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = map[t[i]];
                rels[s].push_back(std::move(img));
            }
        }
    };
    add(b, g);
    add(c, h);
    return {Structure(a.signature(), nb + nc - na, std::move(rels)), std::move(g), std::move(h)};
}

// --- bounded properties -------------------------------------------------------

namespace {

struct MemberIndex {
    std::vector<const PoolSlice*> slices;
    std::vector<std::pair<int, int>> all;  // (size, idx)
};

PropertyReport check_hp(const ClassPool& pool) {
    PropertyReport rep;
    rep.property = ClassProperty::hp;
    rep.verified_up_to = pool.max_n;
    for (int m = 1; m <= pool.max_n && rep.holds; ++m) {
        const PoolSlice& slice = pool.slices[m];
        if (slice.lazy()) {
            // mask route: one-point deletions must appear among the smaller masks
            KayKernel ctx(m, slice.mask_k);
            const PoolSlice& below = pool.slices[m - 1];
            for (std::uint64_t i = 0; i < slice.masks.size() && rep.holds; ++i) {
                for (int v = 0; v < m; ++v) {
                    std::vector<int> w;
                    for (int u = 0; u < m; ++u)
                        if (u != v) w.push_back(u);
                    std::uint64_t local = ctx.restrict_mask(slice.masks[i], w, slice.mask_k + 1);
                    bool found = below.lazy()
                                     ? std::binary_search(below.masks.begin(), below.masks.end(), local)
                                     : [&] {
                                           Structure child = hypergraph(
                                               m - 1, slice.mask_k + 1,
                                               mask_to_edges(local, slice.mask_k + 1), true, "S");
                                           for (const Structure& s : below.members)
                                               if (s == child) return true;
                                           return false;
                                       }();
                    ++rep.instances_checked;
                    if (!found) {
                        rep.holds = false;
                        rep.witness = slice.materialize(i);
                        rep.counterexample = "deleting vertex " + std::to_string(v) +
                                             " leaves the listed family";
                        break;
                    }
                }
            }
            continue;
        }
        std::set<std::vector<std::uint64_t>> below_codes;
        for (const Structure& s : pool.slices[m - 1].members) below_codes.insert(canonical_code(s));
        for (const Structure& s : slice.members) {
            for (int v = 0; v < m; ++v) {
                std::vector<int> d;
                for (int u = 0; u < m; ++u)
                    if (u != v) d.push_back(u);
                ++rep.instances_checked;
                if (!below_codes.count(canonical_code(s.induced(d)))) {
                    rep.holds = false;
                    rep.witness = s;
                    rep.counterexample =
                        "one-point deletion at vertex " + std::to_string(v) + " is not in the pool";
                    break;
                }
            }
            if (!rep.holds) break;
        }
    }
    return rep;
}

}  // namespace

PropertyReport check_property(const ClassPool& pool, ClassProperty which, int slack,
                              const EnumerateOptions& opts) {
    if (which == ClassProperty::hp) {
        PropertyReport rep = check_hp(pool);
        rep.slack = 0;
        return rep;
    }

    PropertyReport rep;
    rep.property = which;
    rep.verified_up_to = pool.max_n;
    rep.slack = slack;
    for (const PoolSlice& s : pool.slices)
        if (s.lazy())
            throw BudgetExceeded("check_property: pool too large for witness search",
                                 std::to_string(pool.total_count()) + " members");

    const ClassPool* witness_pool = &pool;
    ClassPool extended;
    if (slack > 0) {
        extended = enumerate_class(pool.family, pool.k, pool.max_n + slack, opts);
        witness_pool = &extended;
    }
    std::vector<const Structure*> ds;
    for (const PoolSlice& s : witness_pool->slices)
        for (const Structure& m : s.members) ds.push_back(&m);

    std::vector<const Structure*> members;
    for (const PoolSlice& s : pool.slices)
        for (const Structure& m : s.members) members.push_back(&m);

    // memoized embedding lists between pool members and witness candidates
    std::map<std::pair<const Structure*, const Structure*>, std::vector<VertexMap>> emb_cache;
    auto embs = [&](const Structure* x, const Structure* d) -> const std::vector<VertexMap>& {
        auto key = std::make_pair(x, d);
        auto it = emb_cache.find(key);
        if (it == emb_cache.end())
            it = emb_cache.emplace(key, enumerate_embeddings(*x, *d)).first;
        return it->second;
    };

    const int bound = witness_pool->max_n;

    if (which == ClassProperty::jep) {
        for (const Structure* b : members) {
            for (const Structure* c : members) {
                if (b->size() + c->size() > bound) {
                    ++rep.instances_skipped;
                    continue;
                }
                ++rep.instances_checked;
                bool found = false;
                for (const Structure* d : ds) {
                    if (d->size() < std::max(b->size(), c->size())) continue;
                    if (!embs(b, d).empty() && !embs(c, d).empty()) { found = true; break; }
                }
                if (!found) {
                    rep.holds = false;
                    rep.counterexample = "no joint-embedding witness within size " +
                                         std::to_string(bound) + " for a pair of sizes " +
                                         std::to_string(b->size()) + "," + std::to_string(c->size());
                    return rep;
                }
            }
        }
        return rep;
    }

    // AP; witnesses located via an index of anchor images h∘f per (C, D, f)
    std::map<std::tuple<const Structure*, const Structure*, VertexMap>, std::set<VertexMap>>
        anchor_cache;
    auto anchored = [&](const Structure* c, const Structure* d,
                        const VertexMap& f) -> const std::set<VertexMap>& {
        auto key = std::make_tuple(c, d, f);
        auto it = anchor_cache.find(key);
        if (it == anchor_cache.end()) {
            std::set<VertexMap> vals;
            for (const VertexMap& h : embs(c, d)) {
                VertexMap q(f.size());
                for (std::size_t v = 0; v < f.size(); ++v) q[v] = h[f[v]];
                vals.insert(std::move(q));
            }
            it = anchor_cache.emplace(std::move(key), std::move(vals)).first;
        }
        return it->second;
    };

    for (const Structure* a : members) {
        for (const Structure* b : members) {
            if (b->size() < a->size()) continue;
            const auto& es = embs(a, b);
            if (es.empty()) continue;
            for (const Structure* c : members) {
                if (c->size() < a->size()) continue;
                const auto& fs = embs(a, c);
                if (fs.empty()) continue;
                if (b->size() + c->size() - a->size() > bound) {
                    rep.instances_skipped += es.size() * fs.size();
                    continue;
                }
                for (const VertexMap& e : es) {
                    for (const VertexMap& f : fs) {
                        ++rep.instances_checked;
                        bool found = false;
                        VertexMap q(e.size());
                        for (const Structure* d : ds) {
                            if (d->size() < b->size() || d->size() < c->size()) continue;
                            const auto& qset = anchored(c, d, f);
                            for (const VertexMap& g : embs(b, d)) {
                                for (std::size_t v = 0; v < e.size(); ++v) q[v] = g[e[v]];
                                if (qset.count(q)) { found = true; break; }
                            }
                            if (found) break;
                        }
                        if (!found) {
                            rep.holds = false;
                            rep.counterexample = "no amalgamation witness within size " +
                                                 std::to_string(bound) + " over a base of size " +
                                                 std::to_string(a->size());
                            return rep;
                        }
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace kaylab
