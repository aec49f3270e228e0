#include "kaylab/order_search.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "kaylab/io.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/subsets.hpp"

namespace kaylab {

namespace {

std::string pointed_code(const Structure& two, int a, int b) {
    return to_compact_text(two) + "#" + std::to_string(a) + std::to_string(b);
}

}  // namespace

std::string pair_type_id(const Structure& s, int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= s.size() || b >= s.size())
        throw std::invalid_argument("pair_type_id: need two distinct domain elements");
    const int lo = std::min(a, b), hi = std::max(a, b);
    Structure two = s.induced({lo, hi});
    const int pa = a == lo ? 0 : 1;
    std::string best = pointed_code(two, pa, 1 - pa);
    if (!two.ordered()) {
        Structure swapped = two.relabelled({1, 0});
        best = std::min(best, pointed_code(swapped, 1 - pa, pa));
    }
    return best;
}

int TypeAtlas::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < types.size(); ++i)
        if (types[i].id == id) return static_cast<int>(i);
    return -1;
}

TypeAtlas build_atlas(const std::vector<Structure>& members) {
    std::map<std::string, PairType> found;
    for (const Structure& m : members) {
        for (int a = 0; a < m.size(); ++a) {
            for (int b = 0; b < m.size(); ++b) {
                if (a == b) continue;
                std::string id = pair_type_id(m, a, b);
                if (found.count(id)) continue;
                PairType t;
                t.id = id;
                const int lo = std::min(a, b), hi = std::max(a, b);
                t.rep = m.induced({lo, hi});
                t.pair = {a == lo ? 0 : 1, a == lo ? 1 : 0};
                t.witness = m;
                t.witness_pair = {a, b};
                found.emplace(std::move(id), std::move(t));
            }
        }
    }
    TypeAtlas atlas;
    for (auto& kv : found) atlas.types.push_back(std::move(kv.second));
    atlas.converse.resize(atlas.types.size());
    atlas.self_converse.resize(atlas.types.size());
    for (std::size_t i = 0; i < atlas.types.size(); ++i) {
        const PairType& t = atlas.types[i];
        std::string conv = pair_type_id(t.rep, t.pair[1], t.pair[0]);
        int j = atlas.index_of(conv);
        if (j < 0) throw std::logic_error("build_atlas: converse type not realized");
        atlas.converse[i] = j;
        atlas.self_converse[i] = j == static_cast<int>(i);
    }
    return atlas;
}

TypeAtlas build_atlas(const ClassPool& pool) {
    std::vector<Structure> members;
    pool.for_each_member([&](const Structure& s) { members.push_back(s); });
    return build_atlas(members);
}

bool OrderDefinition::contains(const std::string& id) const {
    return std::binary_search(chosen.begin(), chosen.end(), id);
}

bool order_defines_linear(const OrderDefinition& phi, const Structure& s, std::string* why) {
    const int n = s.size();
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && phi.contains(pair_type_id(s, a, b))) rel[a][b] = 1;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (rel[a][b] + rel[b][a] != 1) {
                if (why)
                    *why = rel[a][b] ? "both directions chosen on a pair"
                                     : "neither direction chosen on a pair";
                return false;
            }
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (a != b && b != c && a != c && rel[a][b] && rel[b][c] && !rel[a][c]) {
                    if (why) *why = "transitivity fails";
                    return false;
                }
    return true;
}

std::string to_string(OrderabilityStatus s) {
    switch (s) {
        case OrderabilityStatus::ordered: return "ordered";
        case OrderabilityStatus::self_converse_obstruction: return "self-converse-obstruction";
        case OrderabilityStatus::exhausted: return "exhausted";
    }
    return "?";
}

OrderabilityResult orderability_search(const ClassPool& pool, const TypeAtlas& atlas) {
    OrderabilityResult out;
    out.pool_max_n = pool.max_n;

    for (std::size_t i = 0; i < atlas.types.size(); ++i) {
        if (atlas.self_converse[i]) {
            out.status = OrderabilityStatus::self_converse_obstruction;
            out.obstruction_type = atlas.types[i];
            return out;
        }
    }

    std::vector<std::pair<int, int>> pairs;  // (first, second) by id order
    for (std::size_t i = 0; i < atlas.types.size(); ++i) {
        int j = atlas.converse[i];
        if (static_cast<int>(i) < j) pairs.push_back({static_cast<int>(i), j});
    }

    std::vector<Structure> members;
    pool.for_each_member([&](const Structure& s) { members.push_back(s); });
    std::stable_sort(members.begin(), members.end(),
                     [](const Structure& a, const Structure& b) { return a.size() < b.size(); });

    const std::uint64_t total = 1ull << pairs.size();
    for (std::uint64_t sel = 0; sel < total; ++sel) {
        OrderDefinition cand;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            cand.chosen.push_back(atlas.types[(sel >> p) & 1 ? pairs[p].second : pairs[p].first].id);
        std::sort(cand.chosen.begin(), cand.chosen.end());
        ++out.candidates_tried;
        bool ok = true;
        for (const Structure& m : members) {
            std::string why;
            if (!order_defines_linear(cand, m, &why)) {
                out.failures.push_back({cand.chosen, m, why});
                ok = false;
                break;
            }
        }
        if (ok) {
            out.status = OrderabilityStatus::ordered;
            out.phi = std::move(cand);
            return out;
        }
    }
    out.status = OrderabilityStatus::exhausted;
    return out;
}

OrderabilityResult orderability_search(const ClassPool& pool) {
    return orderability_search(pool, build_atlas(pool));
}

bool is_rigid(const Structure& a) { return automorphisms(a).size() == 1; }

// --- C-relations ----------------------------------------------------------------

namespace {

struct TreeNode {
    std::vector<int> leaves;
    int depth = 0;
};

// parses "leaf | (SPEC,SPEC)"; fills the pairwise meet-depth matrix
std::vector<int> parse_tree(const std::string& spec, std::size_t& pos, int depth,
                            std::vector<std::vector<int>>& meet, int n) {
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("tree spec: " + what + " at offset " + std::to_string(pos));
    };
    if (pos >= spec.size()) fail("unexpected end");
    if (spec[pos] == '(') {
        ++pos;
        std::vector<int> left = parse_tree(spec, pos, depth + 1, meet, n);
        if (pos >= spec.size() || spec[pos] != ',') fail("expected ','");
        ++pos;
        std::vector<int> right = parse_tree(spec, pos, depth + 1, meet, n);
        if (pos >= spec.size() || spec[pos] != ')') fail("expected ')'");
        ++pos;
        for (int a : left)
            for (int b : right) meet[a][b] = meet[b][a] = depth;
        left.insert(left.end(), right.begin(), right.end());
        return left;
    }
    if (!std::isdigit(static_cast<unsigned char>(spec[pos]))) fail("expected a leaf number");
    int v = 0;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos])))
        v = v * 10 + (spec[pos++] - '0');
    if (v >= n) fail("leaf out of range");
    return {v};
}

Structure cameron_from_meets(const Structure& tournament,
                             const std::vector<std::vector<int>>& meet) {
    const int n = tournament.size();
    std::vector<Tuple> c_tuples;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                if (meet[b][c] > meet[a][b]) c_tuples.push_back({a, b, c});
            }
    Signature sig({{"R", 2, SymbolKind::plain}, {"C", 3, SymbolKind::plain}});
    return Structure(sig, n, {tournament.tuples(0), std::move(c_tuples)});
}

void require_tournament(const Structure& t) {
    if (t.signature().symbol_count() < 1 || t.signature().arity(0) != 2 ||
        t.signature().kind(0) != SymbolKind::plain)
        throw std::invalid_argument("expected a binary plain relation as the tournament");
    for (int a = 0; a < t.size(); ++a) {
        if (t.has(0, {a, a})) throw std::invalid_argument("tournament has a loop");
        for (int b = a + 1; b < t.size(); ++b)
            if (t.has(0, {a, b}) == t.has(0, {b, a}))
                throw std::invalid_argument("tournament needs exactly one arc per pair");
    }
}

}  // namespace

Structure cameron_structure(const Structure& tournament, const std::string& tree_spec) {
    require_tournament(tournament);
    const int n = tournament.size();
    std::vector<std::vector<int>> meet(n, std::vector<int>(n, -1));
    std::size_t pos = 0;
    std::string spec;
    for (char ch : tree_spec)
        if (!std::isspace(static_cast<unsigned char>(ch))) spec.push_back(ch);
    std::vector<int> leaves = parse_tree(spec, pos, 0, meet, n);
    if (pos != spec.size()) throw std::invalid_argument("tree spec: trailing input");
    std::sort(leaves.begin(), leaves.end());
    for (int i = 0; i < n; ++i)
        if (i >= static_cast<int>(leaves.size()) || leaves[i] != i)
            throw std::invalid_argument("tree spec: leaves must be exactly 0..n-1");
    return cameron_from_meets(tournament, meet);
}

namespace {

// all binary leaf-trees on the given leafset, as meet-depth matrices
void gen_trees(const std::vector<int>& leafset, int depth, std::vector<std::vector<int>>& meet,
               int n, const std::function<void()>& done) {
    if (leafset.size() <= 1) {
        done();
        return;
    }
    // split off a nonempty proper subset not containing the least leaf
    const int m = static_cast<int>(leafset.size());
    for (std::uint64_t mask = 1; mask < (1ull << (m - 1)); ++mask) {
        std::vector<int> left{leafset[0]}, right;
        for (int i = 1; i < m; ++i)
            ((mask >> (i - 1)) & 1 ? right : left).push_back(leafset[i]);
        for (int a : left)
            for (int b : right) meet[a][b] = meet[b][a] = depth;
        gen_trees(left, depth + 1, meet, n, [&] {
            gen_trees(right, depth + 1, meet, n, done);
        });
    }
}

}  // namespace

ClassPool enumerate_cameron(int max_n, const EnumerateOptions& opts) {
    ClassPool pool;
    pool.family = Family::cameron;
    pool.k = 0;
    pool.max_n = max_n;
    pool.signature = Signature({{"R", 2, SymbolKind::plain}, {"C", 3, SymbolKind::plain}});
    pool.slices.resize(max_n + 1);
    for (int m = 0; m <= max_n; ++m) {
        pool.slices[m].size = m;
        const std::uint64_t orientations = 1ull << binom(m, 2);
        if (orientations > opts.labelled_budget)
            throw BudgetExceeded("cameron enumeration: too many labelled candidates",
                                 std::to_string(orientations) + " orientations per tree");
        std::vector<Structure> raw;
        std::vector<int> leafset(m);
        for (int i = 0; i < m; ++i) leafset[i] = i;
        std::vector<std::vector<int>> meet(m, std::vector<int>(m, -1));
        auto emit = [&] {
            for (std::uint64_t bits = 0; bits < orientations; ++bits) {
                std::vector<Tuple> arcs;
                int i = 0;
                for_each_subset(m, 2, [&](const std::vector<int>& p) {
                    arcs.push_back((bits >> i++) & 1 ? Tuple{p[0], p[1]} : Tuple{p[1], p[0]});
                });
                Structure t(Signature({{"R", 2, SymbolKind::plain}}), m, {std::move(arcs)});
                raw.push_back(cameron_from_meets(t, meet));
            }
        };
        if (m == 0) {
            raw.push_back(Structure(pool.signature, 0, {{}, {}}));
        } else {
            gen_trees(leafset, 0, meet, m, emit);
        }
        std::map<std::vector<std::uint64_t>, Structure> dedup;
        for (Structure& s : raw) {
            auto cf = canonical_form(s);
            dedup.emplace(canonical_code(cf.canon), std::move(cf.canon));
        }
        for (auto& kv : dedup) pool.slices[m].members.push_back(std::move(kv.second));
    }
    return pool;
}

// --- extraction -------------------------------------------------------------------

std::string to_string(ExtractionStatus s) {
    switch (s) {
        case ExtractionStatus::ordered: return "ordered";
        case ExtractionStatus::nonrigid_type: return "nonrigid-type";
        case ExtractionStatus::no_witness: return "no-witness";
        case ExtractionStatus::inconsistent: return "inconsistent-directions";
        case ExtractionStatus::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

namespace {

// linear-order expansions of c up to automorphisms: permutation images kept
// only when lexicographically least in their Aut(c) coset
std::vector<std::vector<int>> expansion_orders(const Structure& c) {
    const int n = c.size();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    const auto auts = automorphisms(c);
    std::vector<std::vector<int>> out;
    do {
        bool least = true;
        for (const auto& phi : auts) {
            std::vector<int> other(n);
            for (int v = 0; v < n; ++v) other[v] = perm[phi[v]];
            if (other < perm) { least = false; break; }
        }
        if (least) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

ExtractionResult two_erp_order_extraction(const ClassPool& pool, const ExtractionOptions& opts) {
    ExtractionResult out;
    out.pool_max_n = pool.max_n;

    std::vector<Structure> members;
    pool.for_each_member([&](const Structure& s) { members.push_back(s); });
    std::stable_sort(members.begin(), members.end(),
                     [](const Structure& a, const Structure& b) { return a.size() < b.size(); });

    TypeAtlas atlas = build_atlas(members);
    for (std::size_t i = 0; i < atlas.types.size(); ++i) {
        if (atlas.self_converse[i]) {
            out.status = ExtractionStatus::nonrigid_type;
            out.detail = "type " + atlas.types[i].id + " equals its converse";
            return out;
        }
    }

    if (members.size() <= opts.jep_check_member_cap) {
        out.jep_checked = true;
        out.jep_holds = check_property(pool, ClassProperty::jep).holds;
    }

    // canonical representative per converse pair: the lex-smaller id
    std::map<std::string, int> direction;  // representative id -> 0 (forward) / 1 (converse)

    for (const Structure& b : members) {
        if (b.size() < 2) continue;
        // realized representative types inside b
        std::set<std::string> reps;
        for (int x = 0; x < b.size(); ++x)
            for (int y = 0; y < b.size(); ++y) {
                if (x == y) continue;
                std::string id = pair_type_id(b, x, y);
                int i = atlas.index_of(id);
                reps.insert(std::min(atlas.types[i].id, atlas.types[atlas.converse[i]].id));
            }

        ExtractionStep step;
        step.b = b;
        std::uint64_t tried = 0;
        bool witnessed = false;
        for (const Structure& c : members) {
            if (c.size() < b.size()) continue;
            auto copies = enumerate_copies(b, c);
            if (copies.members.empty()) continue;
            for (const auto& order : expansion_orders(c)) {
                if (++tried > opts.expansions_budget) {
                    out.status = ExtractionStatus::budget_exhausted;
                    out.detail = "witness budget exhausted at a target of size " +
                                 std::to_string(b.size());
                    return out;
                }
                for (const auto& copy : copies.members) {
                    // every realized type must colour constantly on this copy
                    std::map<std::string, int> local;
                    bool constant = true;
                    for (std::size_t xi = 0; xi < copy.size() && constant; ++xi)
                        for (std::size_t yi = 0; yi < copy.size() && constant; ++yi) {
                            if (xi == yi) continue;
                            const int x = copy[xi], y = copy[yi];
                            std::string id = pair_type_id(c, x, y);
                            int i = atlas.index_of(id);
                            const std::string rep =
                                std::min(atlas.types[i].id, atlas.types[atlas.converse[i]].id);
                            // direction of the representative realization
                            const bool is_rep = atlas.types[i].id == rep;
                            const int chi = (order[x] > order[y]) ? 1 : 0;
                            const int dir = is_rep ? chi : 1 - chi;
                            auto it = local.find(rep);
                            if (it == local.end()) local.emplace(rep, dir);
                            else if (it->second != dir) constant = false;
                        }
                    if (!constant) continue;
                    if (local.size() != reps.size()) continue;  // must realize every type of b
                    // record directions
                    for (const auto& [rep, dir] : local) {
                        auto it = direction.find(rep);
                        if (it == direction.end()) {
                            direction.emplace(rep, dir);
                        } else if (it->second != dir) {
                            out.status = ExtractionStatus::inconsistent;
                            out.detail = "type " + rep + " extracted with both directions";
                            return out;
                        }
                    }
                    step.witnessed = true;
                    step.c_size = c.size();
                    step.expansion = order;
                    witnessed = true;
                    break;
                }
                if (witnessed) break;
            }
            if (witnessed) break;
        }
        out.steps.push_back(step);
        if (!witnessed) {
            out.status = ExtractionStatus::no_witness;
            out.detail = "no order expansion admits a uniform copy of a target of size " +
                         std::to_string(b.size());
            return out;
        }
    }

    OrderDefinition phi;
    for (const auto& [rep, dir] : direction) {
        int i = atlas.index_of(rep);
        phi.chosen.push_back(dir == 0 ? atlas.types[i].id : atlas.types[atlas.converse[i]].id);
    }
    std::sort(phi.chosen.begin(), phi.chosen.end());
    for (const Structure& m : members) {
        std::string why;
        if (!order_defines_linear(phi, m, &why)) {
            out.status = ExtractionStatus::inconsistent;
            out.detail = "extracted definition fails on a member of size " +
                         std::to_string(m.size()) + ": " + why;
            return out;
        }
    }
    out.status = ExtractionStatus::ordered;
    out.phi = std::move(phi);
    return out;
}

}  // namespace kaylab
