#include "kaylab/kay.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "kaylab/subsets.hpp"

namespace kaylab {

namespace {

int single_hyperedge_symbol(const Structure& h) {
    int found = -1;
    for (int s = 0; s < h.signature().symbol_count(); ++s) {
        if (h.signature().kind(s) != SymbolKind::hyperedge) continue;
        if (found >= 0) throw std::invalid_argument("expected a single hyperedge symbol");
        found = s;
    }
    if (found < 0) throw std::invalid_argument("expected a hyperedge symbol");
    return found;
}

std::string subset_string(const std::vector<int>& w) {
    std::string s = "{";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s + "}";
}

}  // namespace

KayKernel::KayKernel(int n, int k) : n_(n), k_(k) {
    if (k < 2) throw std::invalid_argument("KayKernel: k must be >= 2");
    if (!fits(n, k)) throw std::invalid_argument("KayKernel: subset space exceeds 64 bits");
    edge_bits_ = static_cast<int>(binom(n, k));
    kay_bits_ = static_cast<int>(binom(n, k + 1));
    sub_masks_.assign(kay_bits_, 0);
    for_each_subset(n, k + 1, [&](const std::vector<int>& x) {
        std::uint64_t m = 0;
        for_each_subset_of(x, k, [&](const std::vector<int>& t) { m |= 1ull << colex_rank(t); });
        sub_masks_[colex_rank(x)] = m;
    });
    const auto dagger_count = binom(n, k + 2);
    dagger_masks_.assign(dagger_count, 0);
    for_each_subset(n, k + 2, [&](const std::vector<int>& w) {
        std::uint64_t m = 0;
        for_each_subset_of(w, k + 1, [&](const std::vector<int>& x) { m |= 1ull << colex_rank(x); });
        dagger_masks_[colex_rank(w)] = m;
    });
    recon_.assign(n, std::vector<std::int32_t>(edge_bits_, -1));
    for (int star = 0; star < n; ++star) {
        for_each_subset(n, k, [&](const std::vector<int>& t) {
            if (std::find(t.begin(), t.end(), star) != t.end()) return;
            std::vector<int> x = t;
            x.insert(std::lower_bound(x.begin(), x.end(), star), star);
            recon_[star][colex_rank(t)] = static_cast<std::int32_t>(colex_rank(x));
        });
    }
}

bool KayKernel::fits(int n, int k) {
    return k >= 2 && binom(n, k) <= 64 && binom(n, k + 1) <= 64;
}

std::uint64_t KayKernel::kay(std::uint64_t r_mask) const {
    std::uint64_t s = 0;
    const int want = (k_ + 1) & 1;
    for (int x = 0; x < kay_bits_; ++x)
        if ((std::popcount(r_mask & sub_masks_[x]) & 1) == want) s |= 1ull << x;
    return s;
}

bool KayKernel::parity_ok(std::uint64_t s_mask) const {
    const int want = k_ & 1;
    for (std::uint64_t m : dagger_masks_)
        if ((std::popcount(s_mask & m) & 1) != want) return false;
    return true;
}

std::uint64_t KayKernel::reconstruct(std::uint64_t s_mask, int star) const {
    std::uint64_t r = 0;
    const bool cone = (k_ & 1) != 0;
    const auto& table = recon_.at(star);
    for (int t = 0; t < edge_bits_; ++t) {
        const std::int32_t entry = table[t];
        const bool bit = entry < 0 ? cone : ((s_mask >> entry) & 1) != 0;
        if (bit) r |= 1ull << t;
    }
    return r;
}

std::uint64_t KayKernel::restrict_mask(std::uint64_t mask, const std::vector<int>& w, int arity) const {
    std::uint64_t local = 0;
    // local ranks follow colex order, which the index subsets inherit
    for_each_subset(static_cast<int>(w.size()), arity, [&](const std::vector<int>& idx) {
        std::vector<int> t(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) t[i] = w[idx[i]];
        if ((mask >> colex_rank(t)) & 1) local |= 1ull << colex_rank(idx);
    });
    return local;
}

std::uint64_t edges_to_mask(const Structure& h, int sym) {
    std::uint64_t m = 0;
    for (const Tuple& t : h.tuples(sym)) m |= 1ull << colex_rank(t);
    return m;
}

std::vector<Tuple> mask_to_edges(std::uint64_t mask, int k) {
    std::vector<Tuple> out;
    while (mask) {
        int r = std::countr_zero(mask);
        mask &= mask - 1;
        out.push_back(colex_unrank(static_cast<std::uint64_t>(r), k));
    }
    return out;
}

Structure kay_graph(const Structure& h) {
    const int sym = single_hyperedge_symbol(h);
    const int k = h.signature().arity(sym);
    if (k < 2) throw std::invalid_argument("kay_graph: hyperedge arity must be >= 2");
    const int n = h.size();
    std::vector<Tuple> out;
    if (KayKernel::fits(n, k)) {
        KayKernel ctx(n, k);
        out = mask_to_edges(ctx.kay(edges_to_mask(h, sym)), k + 1);
    } else {
        const int want = (k + 1) & 1;
        for_each_subset(n, k + 1, [&](const std::vector<int>& x) {
            int cnt = 0;
            for_each_subset_of(x, k, [&](const std::vector<int>& t) {
                if (h.has(sym, t)) ++cnt;
            });
            if ((cnt & 1) == want) out.push_back(x);
        });
    }
    std::vector<std::vector<Tuple>> rels;
    rels.push_back(std::move(out));
    if (h.ordered()) rels.push_back({});
    return Structure(hypergraph_signature(k + 1, h.ordered(), "S"), n, std::move(rels));
}

ParityCheck check_parity(const Structure& s) {
    const int sym = single_hyperedge_symbol(s);
    const int arity = s.signature().arity(sym);
    if (arity < 3)
        throw std::invalid_argument("check_parity: hyperedge arity must be >= 3 (k = arity-1 >= 2)");
    const int k = arity - 1;
    const int want = k & 1;
    ParityCheck out;
    out.ok = true;
    for_each_subset(s.size(), k + 2, [&](const std::vector<int>& w) {
        if (!out.ok) return;
        int cnt = 0;
        for_each_subset_of(w, k + 1, [&](const std::vector<int>& x) {
            if (s.has(sym, x)) ++cnt;
        });
        if ((cnt & 1) != want) {
            out.ok = false;
            out.violation = w;
        }
    });
    return out;
}

Structure reconstruct_base(const Structure& s, int star) {
    const int sym = single_hyperedge_symbol(s);
    const int k = s.signature().arity(sym) - 1;
    if (star < 0 || star >= s.size()) throw std::invalid_argument("reconstruct_base: star out of range");
    auto parity = check_parity(s);
    if (!parity.ok)
        throw ParityViolation("reconstruct_base: extension parity fails on " + subset_string(*parity.violation),
                              *parity.violation);
    const bool cone = (k & 1) != 0;
    std::vector<Tuple> edges;
    for_each_subset(s.size(), k, [&](const std::vector<int>& t) {
        if (std::find(t.begin(), t.end(), star) != t.end()) {
            if (cone) edges.push_back(t);
        } else {
            std::vector<int> x = t;
            x.insert(std::lower_bound(x.begin(), x.end(), star), star);
            if (s.has(sym, x)) edges.push_back(t);
        }
    });
    return hypergraph(s.size(), k, edges, s.ordered());
}

MembershipReport kay_class_membership(const Structure& s, std::uint64_t budget) {
    const int sym = single_hyperedge_symbol(s);
    const int k = s.signature().arity(sym) - 1;
    const int n = s.size();
    MembershipReport rep;
    rep.parity = check_parity(s);

    if (!KayKernel::fits(n, k) || binom(n, k) >= 63)
        throw BudgetExceeded("kay_class_membership: preimage space too large",
                             "2^" + std::to_string(binom(n, k)) + " candidate edge sets");
    const std::uint64_t total = 1ull << binom(n, k);
    if (total > budget)
        throw BudgetExceeded("kay_class_membership: preimage space exceeds budget",
                             std::to_string(total) + " candidate edge sets");

    KayKernel ctx(n, k);
    const std::uint64_t target = edges_to_mask(s, sym);
    for (std::uint64_t r = 0; r < total; ++r) {
        ++rep.candidates_tried;
        if (ctx.kay(r) == target) {
            rep.preimage = hypergraph(n, k, mask_to_edges(r, k), s.ordered());
            break;
        }
    }
    rep.member = rep.preimage.has_value();
    if (rep.member != rep.parity.ok)
        throw std::logic_error("kay_class_membership: parity route and preimage route disagree");
    return rep;
}

PreimageFiber preimage_fiber(const Structure& s) {
    const int sym = single_hyperedge_symbol(s);
    const int k = s.signature().arity(sym) - 1;
    const int n = s.size();
    if (!KayKernel::fits(n, k))
        throw BudgetExceeded("preimage_fiber: subset space exceeds 64 bits",
                             "binom(" + std::to_string(n) + "," + std::to_string(k) + ") ranks");
    PreimageFiber out;
    out.n = n;
    out.k = k;
    out.base_point = edges_to_mask(reconstruct_base(s, 0), 0);  // validates parity

    KayKernel ctx(n, k);
    const std::uint64_t shift = ctx.kay(0);
    // echelon elimination with combination tracking; columns that vanish
    // give independent kernel vectors (each keeps its private edge bit)
    std::vector<std::uint64_t> pivot_val(64, 0), pivot_combo(64, 0);
    for (int j = 0; j < ctx.edge_bits(); ++j) {
        std::uint64_t val = ctx.kay(1ull << j) ^ shift;
        std::uint64_t combo = 1ull << j;
        while (val) {
            const int bit = 63 - std::countl_zero(val);
            if (!pivot_val[bit]) {
                pivot_val[bit] = val;
                pivot_combo[bit] = combo;
                break;
            }
            val ^= pivot_val[bit];
            combo ^= pivot_combo[bit];
        }
        if (val == 0) out.kernel_basis.push_back(combo);
    }
    return out;
}

// --- ExpandedStructure -------------------------------------------------------

ExpandedStructure ExpandedStructure::from_edges(int n, int k, const std::vector<Tuple>& edges,
                                                bool ordered) {
    Structure h = hypergraph(n, k, edges, ordered);
    Structure s = kay_graph(h);
    std::vector<std::vector<Tuple>> rels;
    rels.push_back(h.tuples(0));
    rels.push_back(s.tuples(0));
    if (ordered) rels.push_back({});
    return ExpandedStructure(Structure(expanded_signature(k, ordered), n, std::move(rels)));
}

ExpandedStructure ExpandedStructure::wrap(Structure s) {
    const int r = s.signature().index_of("R");
    const int ks = s.signature().index_of("S");
    if (r < 0 || ks < 0 || s.signature().kind(r) != SymbolKind::hyperedge ||
        s.signature().kind(ks) != SymbolKind::hyperedge ||
        s.signature().arity(ks) != s.signature().arity(r) + 1)
        throw std::invalid_argument("ExpandedStructure: expected symbols R (arity k) and S (arity k+1)");
    ExpandedStructure out(std::move(s));
    Structure expect = kay_graph(out.edge_part());
    if (!(expect.tuples(0) == out.s_.tuples(ks)))
        throw std::invalid_argument("ExpandedStructure: S is not the Kay-graph of R");
    return out;
}

int ExpandedStructure::edge_symbol() const { return s_.signature().index_of("R"); }
int ExpandedStructure::kay_symbol() const { return s_.signature().index_of("S"); }
int ExpandedStructure::k() const { return s_.signature().arity(edge_symbol()); }

Structure ExpandedStructure::base() const {
    std::vector<std::vector<Tuple>> rels;
    rels.push_back(s_.tuples(kay_symbol()));
    if (ordered()) rels.push_back({});
    return Structure(kay_signature(k(), ordered()), size(), std::move(rels));
}

Structure ExpandedStructure::edge_part() const {
    return hypergraph(size(), k(), s_.tuples(edge_symbol()), ordered());
}

ExpandedStructure complement_expansion(const ExpandedStructure& a) {
    const int k = a.k();
    const int n = a.size();
    std::vector<Tuple> edges;
    for_each_subset(n, k, [&](const std::vector<int>& t) {
        if (!a.structure().has(a.edge_symbol(), t)) edges.push_back(t);
    });
    ExpandedStructure out = ExpandedStructure::from_edges(n, k, edges, a.ordered());

    // parity law: complementing R preserves S iff k is odd, complements it iff k is even
    const auto& old_s = a.structure().tuples(a.kay_symbol());
    const auto& new_s = out.structure().tuples(out.kay_symbol());
    bool law_ok;
    if (k % 2 == 1) {
        law_ok = old_s == new_s;
    } else {
        law_ok = old_s.size() + new_s.size() == binom(n, k + 1);
        if (law_ok) {
            for (const Tuple& t : new_s)
                if (a.structure().has(a.kay_symbol(), t)) { law_ok = false; break; }
        }
    }
    if (!law_ok) throw std::logic_error("complement_expansion: parity law violated");
    return out;
}

ExpandedStructure star_extension(const ExpandedStructure& d) {
    const int k = d.k();
    const int n = d.size();
    const int star = n;
    std::vector<Tuple> edges = d.structure().tuples(d.edge_symbol());
    for_each_subset(n, k - 1, [&](const std::vector<int>& p) {
        Tuple t = p;
        t.push_back(star);
        edges.push_back(t);
    });
    ExpandedStructure out = ExpandedStructure::from_edges(n + 1, k, edges, d.ordered());

    // S(x1..xk, star) <=> R(x1..xk) for every k-subset of the old vertices
    for_each_subset(n, k, [&](const std::vector<int>& t) {
        Tuple x = t;
        x.push_back(star);
        if (out.structure().has(out.kay_symbol(), x) != d.structure().has(d.edge_symbol(), t))
            throw std::logic_error("star_extension: star law violated");
    });
    return out;
}

ExpandedStructure expanded_disjoint_union(const ExpandedStructure& a, const ExpandedStructure& b) {
    if (a.k() != b.k() || a.ordered() != b.ordered())
        throw std::invalid_argument("expanded_disjoint_union: incompatible parts");
    std::vector<Tuple> edges = a.structure().tuples(a.edge_symbol());
    for (Tuple t : b.structure().tuples(b.edge_symbol())) {
        for (int& v : t) v += a.size();
        edges.push_back(std::move(t));
    }
    return ExpandedStructure::from_edges(a.size() + b.size(), a.k(), edges, a.ordered());
}

}  // namespace kaylab
