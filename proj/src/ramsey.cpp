#include "kaylab/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "kaylab/certcheck.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/subsets.hpp"

namespace kaylab {

std::string to_string(ArrowVerdict v) {
    switch (v) {
        case ArrowVerdict::holds: return "holds";
        case ArrowVerdict::fails: return "fails";
        case ArrowVerdict::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

std::string to_string(ColourMode m) {
    return m == ColourMode::copies ? "copies" : "embeddings";
}

ColourMode colour_mode_from_string(const std::string& s) {
    if (s == "copies") return ColourMode::copies;
    if (s == "embeddings") return ColourMode::embeddings;
    throw std::invalid_argument("unknown colour mode: " + s);
}

std::uint64_t default_node_budget() {
    if (const char* env = std::getenv("KAYLAB_BUDGET_DEFAULT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 50'000'000ull;
}

namespace {

struct Compiled {
    ColourMode mode = ColourMode::copies;
    std::vector<ColourFamily> families;
    std::vector<std::vector<std::vector<int>>> objects;     // [f][o]
    std::vector<std::vector<int>> blocks;                   // [b]
    std::vector<std::vector<std::vector<int>>> obj_blocks;  // [f][o] -> block ids
    std::vector<std::vector<std::vector<int>>> block_objs;  // [b][f] -> object ids
    bool vacuous = false;
    std::string note;
};

Compiled compile(const Structure& c, const Structure& b, const std::vector<ColourFamily>& fams,
                 ColourMode mode) {
    Compiled out;
    out.mode = mode;
    out.families = fams;
    out.blocks = mode == ColourMode::copies ? enumerate_copies(b, c).members
                                            : enumerate_embeddings(b, c);
    const int nf = static_cast<int>(fams.size());
    out.objects.resize(nf);
    out.obj_blocks.resize(nf);
    out.block_objs.assign(out.blocks.size(), std::vector<std::vector<int>>(nf));
    bool any_inner = false;
    for (int f = 0; f < nf; ++f) {
        out.objects[f] = mode == ColourMode::copies
                             ? enumerate_copies(fams[f].pattern, c).members
                             : enumerate_embeddings(fams[f].pattern, c);
        out.obj_blocks[f].assign(out.objects[f].size(), {});
        if (mode == ColourMode::copies) {
            for (std::size_t bi = 0; bi < out.blocks.size(); ++bi) {
                const auto& block = out.blocks[bi];
                for (std::size_t oi = 0; oi < out.objects[f].size(); ++oi) {
                    const auto& o = out.objects[f][oi];
                    if (std::includes(block.begin(), block.end(), o.begin(), o.end())) {
                        out.obj_blocks[f][oi].push_back(static_cast<int>(bi));
                        out.block_objs[bi][f].push_back(static_cast<int>(oi));
                    }
                }
            }
        } else {
            std::map<std::vector<int>, int> index;
            for (std::size_t oi = 0; oi < out.objects[f].size(); ++oi)
                index[out.objects[f][oi]] = static_cast<int>(oi);
            const auto inner = enumerate_embeddings(fams[f].pattern, b);
            for (std::size_t bi = 0; bi < out.blocks.size(); ++bi) {
                for (const auto& e : inner) {
                    std::vector<int> composed(e.size());
                    for (std::size_t v = 0; v < e.size(); ++v) composed[v] = out.blocks[bi][e[v]];
                    auto it = index.find(composed);
                    if (it == index.end())
                        throw std::logic_error("arrow compile: induced object missing");
                    out.obj_blocks[f][it->second].push_back(static_cast<int>(bi));
                    out.block_objs[bi][f].push_back(it->second);
                }
            }
        }
    }
    for (const auto& per_block : out.block_objs)
        for (const auto& objs : per_block)
            if (!objs.empty()) any_inner = true;
    if (out.blocks.empty()) {
        out.vacuous = true;
        out.note = "no copies of the middle structure in the ambient";
    } else if (!any_inner) {
        out.vacuous = true;
        out.note = "no pattern occurs inside any copy of the middle structure";
    }
    return out;
}

struct FamState {
    std::vector<std::uint16_t> cnt;
    int distinct = 0;
    int unassigned = 0;
};

// Backtracking refutation search with fail-first variable order, colour
// symmetry breaking (a colour may be used only after all smaller ones
// appeared) and dead-block pruning.
class RefutationSearch {
public:
    RefutationSearch(const Compiled& inst, std::uint64_t budget, std::atomic<std::uint64_t>& nodes,
                     std::atomic<bool>& stop)
        : inst_(inst), budget_(budget), nodes_(nodes), stop_(stop) {
        const int nf = static_cast<int>(inst.families.size());
        for (int f = 0; f < nf; ++f)
            for (std::size_t o = 0; o < inst.objects[f].size(); ++o)
                vars_.push_back({f, static_cast<int>(o)});
        std::stable_sort(vars_.begin(), vars_.end(), [&](const auto& x, const auto& y) {
            return inst.obj_blocks[x.first][x.second].size() >
                   inst.obj_blocks[y.first][y.second].size();
        });
        state_.resize(inst.blocks.size());
        for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
            state_[b].resize(nf);
            for (int f = 0; f < nf; ++f) {
                state_[b][f].cnt.assign(inst.families[f].colours, 0);
                state_[b][f].unassigned = static_cast<int>(inst.block_objs[b][f].size());
            }
        }
        max_used_.assign(nf, -1);
        colour_.resize(nf);
        for (int f = 0; f < nf; ++f) colour_[f].assign(inst.objects[f].size(), -1);
    }

    bool root_dead(int* block) const {
        for (std::size_t b = 0; b < state_.size(); ++b)
            if (dead(static_cast<int>(b))) {
                *block = static_cast<int>(b);
                return true;
            }
        return false;
    }

    // 0 = exhausted without refutation, 1 = refutation found, 2 = stopped
    int run(const std::vector<int>& prefix) {
        for (std::size_t v = 0; v < prefix.size(); ++v) {
            auto [f, o] = vars_[v];
            apply(f, o, prefix[v]);
            saved_max_.push_back(max_used_[f]);
            max_used_[f] = std::max(max_used_[f], prefix[v]);
            colour_[f][o] = prefix[v];
        }
        int r = dfs(prefix.size());
        for (std::size_t v = prefix.size(); v-- > 0;) {
            auto [f, o] = vars_[v];
            colour_[f][o] = -1;
            max_used_[f] = saved_max_[v];
            undo(f, o, prefix[v]);
        }
        saved_max_.clear();
        return r;
    }

    // valid extensions of a prefix by one colour, pruning dead branches
    std::vector<int> viable_colours(const std::vector<int>& prefix) {
        std::vector<int> out;
        if (prefix.size() >= vars_.size()) return out;
        for (std::size_t v = 0; v < prefix.size(); ++v) {
            auto [f, o] = vars_[v];
            apply(f, o, prefix[v]);
            saved_max_.push_back(max_used_[f]);
            max_used_[f] = std::max(max_used_[f], prefix[v]);
        }
        auto [f, o] = vars_[prefix.size()];
        const int cmax = std::min(max_used_[f] + 1, inst_.families[f].colours - 1);
        for (int c = 0; c <= cmax; ++c) {
            int dead_block = apply(f, o, c);
            if (dead_block < 0) out.push_back(c);
            undo(f, o, c);
        }
        for (std::size_t v = prefix.size(); v-- > 0;) {
            auto [pf, po] = vars_[v];
            max_used_[pf] = saved_max_[v];
            undo(pf, po, prefix[v]);
        }
        saved_max_.clear();
        return out;
    }

    std::size_t var_count() const { return vars_.size(); }
    const std::vector<std::vector<int>>& found_colouring() const { return found_; }
    int last_dead_block() const { return last_dead_; }
    bool budget_hit() const { return budget_hit_; }

private:
    bool satisfied(int b) const {
        for (std::size_t f = 0; f < state_[b].size(); ++f)
            if (state_[b][f].distinct > inst_.families[f].degree) return true;
        return false;
    }

    bool dead(int b) const {
        if (satisfied(b)) return false;
        for (std::size_t f = 0; f < state_[b].size(); ++f) {
            const FamState& fs = state_[b][f];
            const int reach =
                fs.distinct + std::min(fs.unassigned, inst_.families[f].colours - fs.distinct);
            if (reach > inst_.families[f].degree) return false;
        }
        return true;
    }

    // applies the assignment everywhere; returns a dead block or -1
    int apply(int f, int o, int c) {
        int dead_block = -1;
        for (int b : inst_.obj_blocks[f][o]) {
            FamState& fs = state_[b][f];
            --fs.unassigned;
            if (++fs.cnt[c] == 1) ++fs.distinct;
            if (dead_block < 0 && dead(b)) dead_block = b;
        }
        return dead_block;
    }

    void undo(int f, int o, int c) {
        for (int b : inst_.obj_blocks[f][o]) {
            FamState& fs = state_[b][f];
            ++fs.unassigned;
            if (--fs.cnt[c] == 0) --fs.distinct;
        }
    }

    int dfs(std::size_t v) {
        if (stop_.load(std::memory_order_relaxed)) return 2;
        if (v == vars_.size()) {
            found_ = colour_;
            return 1;
        }
        auto [f, o] = vars_[v];
        const int cmax = std::min(max_used_[f] + 1, inst_.families[f].colours - 1);
        for (int c = 0; c <= cmax; ++c) {
            const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
            if (n > budget_) {
                budget_hit_ = true;
                stop_.store(true, std::memory_order_relaxed);
                return 2;
            }
            int dead_block = apply(f, o, c);
            int result = 0;
            if (dead_block < 0) {
                const int old = max_used_[f];
                max_used_[f] = std::max(old, c);
                colour_[f][o] = c;
                result = dfs(v + 1);
                colour_[f][o] = -1;
                max_used_[f] = old;
            } else {
                last_dead_ = dead_block;
            }
            undo(f, o, c);
            if (result != 0) return result;
        }
        return 0;
    }

    const Compiled& inst_;
    std::vector<std::pair<int, int>> vars_;
    std::vector<std::vector<FamState>> state_;
    std::vector<int> max_used_;
    std::vector<int> saved_max_;
    std::vector<std::vector<int>> colour_;
    std::vector<std::vector<int>> found_;
    std::uint64_t budget_;
    std::atomic<std::uint64_t>& nodes_;
    std::atomic<bool>& stop_;
    int last_dead_ = -1;
    bool budget_hit_ = false;
};

ArrowCertificate finish_certificate(const Compiled& inst, ArrowCertificate cert) {
    cert.mode = inst.mode;
    cert.vacuous = inst.vacuous;
    if (cert.note.empty()) cert.note = inst.note;
    cert.objects = inst.objects;
    cert.blocks = inst.blocks;
    return cert;
}

void self_check_refutation(const Structure& c, const Structure& b, const Compiled& inst,
                           const ArrowCertificate& cert) {
    std::vector<certcheck::FamilyData> fams;
    for (std::size_t f = 0; f < inst.families.size(); ++f) {
        certcheck::FamilyData fd;
        fd.pattern = inst.families[f].pattern;
        fd.colours = inst.families[f].colours;
        fd.degree = inst.families[f].degree;
        fd.objects = inst.objects[f];
        fd.colouring = cert.colouring[f];
        fams.push_back(std::move(fd));
    }
    auto v = certcheck::verify_refutation(c, b, fams, inst.mode == ColourMode::copies);
    if (!v.valid)
        throw std::logic_error("refutation failed independent re-verification: " + v.detail);
}

}  // namespace

ArrowCertificate joint_oscillation(const Structure& c, const Structure& b,
                                   const std::vector<ColourFamily>& families, ColourMode mode,
                                   const ArrowOptions& opts) {
    if (families.empty()) throw std::invalid_argument("joint_oscillation: no colour families");
    for (const ColourFamily& f : families) {
        if (f.colours < 1) throw std::invalid_argument("joint_oscillation: palette must be >= 1");
        if (f.degree < 1) throw std::invalid_argument("joint_oscillation: degree must be >= 1");
        if (!(f.pattern.signature() == c.signature()) || !(b.signature() == c.signature()))
            throw std::invalid_argument("joint_oscillation: signature mismatch");
    }
    const Compiled inst = compile(c, b, families, mode);
    ArrowCertificate cert;
    cert.nodes = 0;

    // a block with no copies of B can never be refuted
    if (inst.blocks.empty()) {
        cert.verdict = ArrowVerdict::fails;
        cert.colouring.clear();
        for (const auto& objs : inst.objects)
            cert.colouring.push_back(std::vector<int>(objs.size(), 0));
        cert = finish_certificate(inst, std::move(cert));
        self_check_refutation(c, b, inst, cert);
        return cert;
    }

    const std::uint64_t budget = opts.node_budget ? opts.node_budget : default_node_budget();
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};

    RefutationSearch probe(inst, budget, nodes, stop);
    int root_block = -1;
    if (probe.root_dead(&root_block)) {
        cert.verdict = ArrowVerdict::holds;
        cert.good_copy = inst.blocks[root_block];
        cert.note = "a copy of the middle structure can never exceed its degrees";
        return finish_certificate(inst, std::move(cert));
    }

    int workers = opts.deterministic ? 1 : std::max(1, opts.workers);
    if (probe.var_count() < 12) workers = 1;

    if (workers == 1) {
        int r = probe.run({});
        cert.nodes = nodes.load();
        if (r == 1) {
            cert.verdict = ArrowVerdict::fails;
            cert.colouring = probe.found_colouring();
            cert = finish_certificate(inst, std::move(cert));
            self_check_refutation(c, b, inst, cert);
            return cert;
        }
        if (probe.budget_hit()) {
            cert.verdict = ArrowVerdict::budget_exhausted;
            cert.note = "node budget " + std::to_string(budget) + " exhausted";
            return finish_certificate(inst, std::move(cert));
        }
        cert.verdict = ArrowVerdict::holds;
        if (probe.last_dead_block() >= 0) cert.good_copy = inst.blocks[probe.last_dead_block()];
        return finish_certificate(inst, std::move(cert));
    }

    // split the top of the tree into prefix tasks, OR-reduce the results
    std::vector<std::vector<int>> frontier{{}};
    while (frontier.size() < static_cast<std::size_t>(4 * workers)) {
        if (frontier.empty() || frontier.front().size() >= probe.var_count()) break;
        std::vector<std::vector<int>> next;
        bool grew = false;
        for (const auto& prefix : frontier) {
            RefutationSearch gen(inst, budget, nodes, stop);
            for (int col : gen.viable_colours(prefix)) {
                auto ext = prefix;
                ext.push_back(col);
                next.push_back(std::move(ext));
                grew = true;
            }
        }
        if (!grew) {
            // every prefix is dead: no refutation can exist
            cert.verdict = ArrowVerdict::holds;
            cert.nodes = nodes.load();
            return finish_certificate(inst, std::move(cert));
        }
        frontier = std::move(next);
    }

    std::atomic<std::size_t> task_index{0};
    std::mutex found_mutex;
    std::optional<std::vector<std::vector<int>>> found;
    bool any_budget = false;
    auto run_worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            std::size_t i = task_index.fetch_add(1);
            if (i >= frontier.size()) return;
            RefutationSearch search(inst, budget, nodes, stop);
            int r = search.run(frontier[i]);
            if (r == 1) {
                std::lock_guard<std::mutex> lock(found_mutex);
                if (!found) found = search.found_colouring();
                stop.store(true, std::memory_order_relaxed);
            } else if (search.budget_hit()) {
                std::lock_guard<std::mutex> lock(found_mutex);
                any_budget = true;
            }
        }
    };
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker);
    for (auto& t : threads) t.join();

    cert.nodes = nodes.load();
    if (found) {
        cert.verdict = ArrowVerdict::fails;
        cert.colouring = *found;
        cert = finish_certificate(inst, std::move(cert));
        self_check_refutation(c, b, inst, cert);
        return cert;
    }
    if (any_budget) {
        cert.verdict = ArrowVerdict::budget_exhausted;
        cert.note = "node budget " + std::to_string(budget) + " exhausted";
        return finish_certificate(inst, std::move(cert));
    }
    cert.verdict = ArrowVerdict::holds;
    return finish_certificate(inst, std::move(cert));
}

ArrowCertificate oscillation_holds(const Structure& c, const Structure& b, const Structure& a,
                                   int colours, int degree, ColourMode mode,
                                   const ArrowOptions& opts) {
    return joint_oscillation(c, b, {{a, colours, degree}}, mode, opts);
}

std::optional<Structure> sequential_arrow_builder(const ClassPool& pool, const Structure& b,
                                                  const std::vector<ColourFamily>& families,
                                                  ColourMode mode, const ArrowOptions& opts,
                                                  std::vector<Structure>* stages) {
    Structure current = b;
    for (const ColourFamily& fam : families) {
        bool found = false;
        for (int size = current.size(); size <= pool.max_n && !found; ++size) {
            const PoolSlice& slice = pool.slices[size];
            for (std::uint64_t i = 0; i < slice.count() && !found; ++i) {
                Structure cand = slice.materialize(i);
                auto cert = oscillation_holds(cand, current, fam.pattern, fam.colours, fam.degree,
                                              mode, opts);
                if (cert.verdict == ArrowVerdict::holds) {
                    current = std::move(cand);
                    if (stages) stages->push_back(current);
                    found = true;
                }
            }
        }
        if (!found) return std::nullopt;
    }
    return current;
}

// --- expansions ---------------------------------------------------------------

namespace {

int kay_symbol_of(const Structure& base, int k) {
    int sym = -1;
    for (int s = 0; s < base.signature().symbol_count(); ++s)
        if (base.signature().kind(s) == SymbolKind::hyperedge) {
            if (sym >= 0) throw std::invalid_argument("expected a single hyperedge symbol");
            sym = s;
        }
    if (sym < 0 || base.signature().arity(sym) != k + 1)
        throw std::invalid_argument("expected a hyperedge symbol of arity k+1");
    return sym;
}

}  // namespace

ExpansionCount count_expansions(const Structure& base, int k, std::uint64_t witness_cap,
                                std::uint64_t budget) {
    const int sym = kay_symbol_of(base, k);
    const int n = base.size();
    if (!KayKernel::fits(n, k) || binom(n, k) >= 63)
        throw BudgetExceeded("count_expansions: edge space too large",
                             "2^" + std::to_string(binom(n, k)) + " edge sets");
    const std::uint64_t total = 1ull << binom(n, k);
    if (total > budget)
        throw BudgetExceeded("count_expansions: edge space exceeds budget",
                             std::to_string(total) + " edge sets");
    KayKernel ctx(n, k);
    const std::uint64_t target = edges_to_mask(base, sym);
    ExpansionCount out;
    for (std::uint64_t r = 0; r < total; ++r) {
        if (ctx.kay(r) != target) continue;
        ++out.count;
        if (out.witnesses.size() < witness_cap)
            out.witnesses.push_back(hypergraph(n, k, mask_to_edges(r, k), base.ordered()));
    }
    out.witnesses_complete = out.count == out.witnesses.size();
    return out;
}

ExpansionColouring expansion_colouring(const Structure& base, int k, const Structure& pattern,
                                       int star) {
    const Structure expected_pattern = hypergraph(k, k + 1, {}, true, "S");
    if (!(pattern == expected_pattern))
        throw std::invalid_argument(
            "expansion_colouring: pattern must be the size-k ordered structure with empty relation");
    Structure r = reconstruct_base(base, star);  // validates the parity condition
    ExpansionColouring out;
    out.k = k;
    out.star = star;
    for_each_subset(base.size(), k, [&](const std::vector<int>& t) {
        out.objects.push_back(t);
        out.colours.push_back(r.has(0, t) ? 1 : 0);
    });
    return out;
}

// --- non-Ramsey construction ----------------------------------------------------

NonRamseyReport non_ramsey_witness(int k, const ClassPool& pool, const NonRamseyOptions& opts) {
    if (k < 2) throw std::invalid_argument("non_ramsey_witness: k must be >= 2");
    NonRamseyReport rep;
    rep.k = k;
    rep.exploratory = k == 2;

    std::vector<int> first_edge(k);
    for (int i = 0; i < k; ++i) first_edge[i] = i;
    rep.b_star = kay_graph(hypergraph(k + 2, k, {first_edge}, true));

    const Structure empty_ext = kay_graph(hypergraph(k + 2, k, {}, true));
    std::vector<Tuple> all_edges;
    for_each_subset(k + 2, k, [&](const std::vector<int>& t) { all_edges.push_back(t); });
    const Structure complete_ext = kay_graph(hypergraph(k + 2, k, all_edges, true));
    rep.empty_extension_differs = !(empty_ext == rep.b_star);
    rep.complete_extension_differs = !(complete_ext == rep.b_star);
    if (!rep.empty_extension_differs || !rep.complete_extension_differs)
        throw std::logic_error("non_ramsey_witness: the single-edge image fails to separate");

    const std::uint64_t bstar_mask = edges_to_mask(rep.b_star, 0);
    const std::uint64_t full_pattern_edges = (1ull << binom(k + 2, k)) - 1;

    for (const PoolSlice& slice : pool.slices) {
        const int m = slice.size;
        if (slice.lazy()) {
            if (slice.mask_k != k)
                throw std::invalid_argument("non_ramsey_witness: pool arity mismatch");
            KayKernel ctx(m, k);
            // per window: global bit positions of its local subsets, colex order
            struct Window { std::vector<int> s_ranks, r_ranks; };
            std::vector<Window> windows;
            for_each_subset(m, k + 2, [&](const std::vector<int>& w) {
                Window win;
                win.s_ranks.resize(binom(k + 2, k + 1));
                win.r_ranks.resize(binom(k + 2, k));
                // position = local colex rank, value = global bit
                for_each_subset(k + 2, k + 1, [&](const std::vector<int>& idx) {
                    std::vector<int> x(idx.size());
                    for (std::size_t i = 0; i < idx.size(); ++i) x[i] = w[idx[i]];
                    win.s_ranks[colex_rank(idx)] = static_cast<int>(colex_rank(x));
                });
                for_each_subset(k + 2, k, [&](const std::vector<int>& idx) {
                    std::vector<int> t(idx.size());
                    for (std::size_t i = 0; i < idx.size(); ++i) t[i] = w[idx[i]];
                    win.r_ranks[colex_rank(idx)] = static_cast<int>(colex_rank(t));
                });
                windows.push_back(std::move(win));
            });
            auto gather = [](std::uint64_t mask, const std::vector<int>& ranks) {
                std::uint64_t local = 0;
                for (std::size_t j = 0; j < ranks.size(); ++j)
                    local |= ((mask >> ranks[j]) & 1) << j;
                return local;
            };
            for (std::uint64_t i = 0; i < slice.masks.size(); ++i) {
                const std::uint64_t s = slice.masks[i];
                if (!ctx.parity_ok(s))
                    throw std::invalid_argument("non_ramsey_witness: pool contains a non-Kay structure");
                const std::uint64_t r = ctx.reconstruct(s, opts.star);
                ++rep.members_checked;
                std::uint64_t copies = 0;
                bool mono = false;
                for (const auto& w : windows) {
                    if (gather(s, w.s_ranks) != bstar_mask) continue;
                    ++copies;
                    const std::uint64_t local = gather(r, w.r_ranks);
                    if (local == 0 || local == full_pattern_edges) mono = true;
                }
                rep.copies_checked += copies;
                if (mono) {
                    ++rep.mono_copies;
                    rep.failures.push_back({m, i, copies, true});
                }
                if (opts.validate_independently) {
                    Structure member = slice.materialize(i);
                    std::vector<std::pair<std::vector<int>, int>> colouring;
                    for_each_subset(m, k, [&](const std::vector<int>& t) {
                        colouring.push_back({t, (r >> colex_rank(t)) & 1 ? 1 : 0});
                    });
                    auto v = certcheck::verify_no_mono_copy(member, rep.b_star, colouring);
                    if (v.valid != !mono || v.blocks_checked != copies)
                        throw std::logic_error("non_ramsey_witness: validator disagrees with the scan");
                    ++rep.independently_validated;
                }
            }
            continue;
        }
        for (std::uint64_t i = 0; i < slice.members.size(); ++i) {
            const Structure& member = slice.members[i];
            if (member.size() == 0) {
                ++rep.members_checked;
                if (opts.validate_independently) ++rep.independently_validated;
                continue;
            }
            auto pc = check_parity(member);
            if (!pc.ok)
                throw std::invalid_argument("non_ramsey_witness: pool contains a non-Kay structure");
            auto colouring = expansion_colouring(member, k, hypergraph(k, k + 1, {}, true, "S"),
                                                 opts.star);
            ++rep.members_checked;
            std::vector<std::pair<std::vector<int>, int>> pairs;
            for (std::size_t t = 0; t < colouring.objects.size(); ++t)
                pairs.push_back({colouring.objects[t], colouring.colours[t]});
            auto v = certcheck::verify_no_mono_copy(member, rep.b_star, pairs);
            rep.copies_checked += v.blocks_checked;
            if (!v.valid) {
                ++rep.mono_copies;
                rep.failures.push_back({m, i, v.blocks_checked, true});
            }
            if (opts.validate_independently) ++rep.independently_validated;
        }
    }
    return rep;
}

// --- arrow-witness probes -----------------------------------------------------

ErpProbeReport positive_erp_probe(int k, const ClassPool& pool, int s, int b_max_size,
                                  const ArrowOptions& opts) {
    if (s > k - 1) throw std::invalid_argument("positive_erp_probe: pattern size must be <= k-1");
    ErpProbeReport rep;
    rep.k = k;
    rep.pattern_size = s;
    const Structure a = hypergraph(s, k + 1, {}, true, "S");

    for (const PoolSlice& slice : pool.slices) {
        if (slice.size > b_max_size) break;
        for (std::uint64_t bi = 0; bi < slice.count(); ++bi) {
            ErpProbeEntry entry{slice.materialize(bi), false, std::nullopt, std::nullopt,
                                ArrowVerdict::budget_exhausted};
            if (s > entry.b.size()) {
                entry.vacuous = true;
                rep.entries.push_back(std::move(entry));
                continue;
            }
            bool found = false;
            for (int size = entry.b.size(); size <= pool.max_n && !found; ++size) {
                const PoolSlice& cs = pool.slices[size];
                for (std::uint64_t ci = 0; ci < cs.count() && !found; ++ci) {
                    auto cert = oscillation_holds(cs.materialize(ci), entry.b, a, 2, 1,
                                                  ColourMode::copies, opts);
                    entry.last_verdict = cert.verdict;
                    if (cert.verdict == ArrowVerdict::holds) {
                        entry.witness_size = size;
                        entry.witness_index = ci;
                        found = true;
                    }
                }
            }
            if (!found && !entry.vacuous) rep.all_found = false;
            rep.entries.push_back(std::move(entry));
        }
    }
    return rep;
}

bool expansion_property_probe(const ExpandedStructure& a_star, const Structure& b,
                              std::uint64_t budget) {
    const int k = a_star.k();
    kay_symbol_of(b, k);  // shape check
    // the expansions of b form a coset of the parity kernel; walk the coset
    PreimageFiber fiber = preimage_fiber(b);
    if (fiber.count() > budget)
        throw BudgetExceeded("expansion_property_probe: too many expansions",
                             std::to_string(fiber.count()) + " expansions");
    for (std::uint64_t i = 0; i < fiber.count(); ++i) {
        ExpandedStructure bstar = ExpandedStructure::from_edges(
            b.size(), k, mask_to_edges(fiber.member(i), k), b.ordered());
        if (enumerate_embeddings(a_star.structure(), bstar.structure()).empty()) return false;
    }
    return true;
}

Structure expansion_recipe_candidate(const ExpandedStructure& a_star) {
    ExpandedStructure tilde = expanded_disjoint_union(a_star, complement_expansion(a_star));
    return star_extension(tilde).base();
}

}  // namespace kaylab
