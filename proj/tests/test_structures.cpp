#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "helpers.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/structure.hpp"
#include "kaylab/subsets.hpp"

using namespace kaylab;

namespace {

Structure three_cycle_tournament() {
    return Structure(Signature({{"R", 2, SymbolKind::plain}}), 3, {{{0, 1}, {1, 2}, {2, 0}}});
}

}  // namespace

TEST_CASE("signature validation") {
    CHECK_THROWS(Signature({{"R", 2, SymbolKind::hyperedge}, {"R", 3, SymbolKind::hyperedge}}));
    CHECK_THROWS(Signature({{"<=", 3, SymbolKind::order}}));
    CHECK_THROWS(Signature({{"<=", 2, SymbolKind::order}, {"<", 2, SymbolKind::order}}));
    CHECK_THROWS(Signature({{"R", 0, SymbolKind::plain}}));
}

TEST_CASE("hyperedge tuples canonicalized, repeats rejected") {
    Structure g = hypergraph(4, 2, {{1, 0}, {3, 2}}, false);
    CHECK(g.tuples(0) == std::vector<Tuple>{{0, 1}, {2, 3}});
    CHECK(g.has(0, {1, 0}));
    CHECK_FALSE(g.has(0, {0, 2}));
    CHECK_THROWS(hypergraph(4, 2, {{1, 1}}, false));
    CHECK_THROWS(hypergraph(4, 2, {{0, 4}}, false));
}

TEST_CASE("induced substructure") {
    SUBCASE("order restriction") {
        Structure c = chain(3).induced({0, 2});
        CHECK(c == chain(2));
    }
    SUBCASE("direct restriction") {
        Structure g = hypergraph(4, 2, {{0, 1}, {1, 2}, {2, 3}}, false);
        Structure path = g.induced({0, 1, 2});
        CHECK(path == hypergraph(3, 2, {{0, 1}, {1, 2}}, false));
    }
    SUBCASE("out of range rejected") {
        CHECK_THROWS(chain(3).induced({0, 3}));
    }
    SUBCASE("restriction functoriality") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            Signature sig = testing::random_signature(rng);
            Structure s = testing::random_structure(sig, 6, rng);
            std::vector<int> d{0, 2, 3, 5};
            std::vector<int> d2{1, 3};  // within the 4-element restriction
            std::vector<int> composed{d[d2[0]], d[d2[1]]};
            CHECK(s.induced(d).induced(d2) == s.induced(composed));
        }
    }
}

TEST_CASE("embedding enumeration on chains and the triangle") {
    CHECK(enumerate_embeddings(chain(1), chain(3)).size() == 3);
    CHECK(enumerate_embeddings(chain(2), chain(3)).size() == 3);

    Structure edge = hypergraph(2, 2, {{0, 1}}, false);
    Structure triangle = hypergraph(3, 2, {{0, 1}, {0, 2}, {1, 2}}, false);
    auto embs = enumerate_embeddings(edge, triangle);
    CHECK(embs.size() == 6);
    CHECK(embs.size() == static_cast<std::size_t>(testing::brute_force_embedding_count(edge, triangle)));

    CHECK_THROWS(enumerate_embeddings(edge, chain(3)));
}

TEST_CASE("embeddings are lexicographically ordered and valid") {
    Structure edge = hypergraph(2, 2, {{0, 1}}, false);
    Structure square = hypergraph(4, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, false);
    auto embs = enumerate_embeddings(edge, square);
    CHECK(std::is_sorted(embs.begin(), embs.end()));
    for (const auto& e : embs) CHECK(is_embedding(edge, square, e));
    CHECK(embs.size() == 8);
}

TEST_CASE("copy enumeration") {
    CHECK(enumerate_copies(chain(2), chain(3)).members ==
          std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
    Structure edge = hypergraph(2, 2, {{0, 1}}, false);
    Structure triangle = hypergraph(3, 2, {{0, 1}, {0, 2}, {1, 2}}, false);
    CHECK(enumerate_copies(edge, triangle).members.size() == 3);
}

TEST_CASE("automorphisms") {
    auto cyc = automorphisms(three_cycle_tournament());
    CHECK(cyc.size() == 3);
    CHECK(cyc.front() == VertexMap{0, 1, 2});  // identity first

    CHECK(automorphisms(chain(5)).size() == 1);
    CHECK(automorphisms(hypergraph(3, 2, {}, false)).size() == 6);
}

TEST_CASE("canonical forms") {
    Structure g = hypergraph(4, 2, {{0, 1}, {1, 2}}, false);
    Structure h = g.relabelled({3, 1, 0, 2});
    CHECK(canonical_form(g).canon == canonical_form(h).canon);

    Structure path = hypergraph(3, 2, {{0, 1}, {1, 2}}, false);
    Structure triangle = hypergraph(3, 2, {{0, 1}, {0, 2}, {1, 2}}, false);
    CHECK_FALSE(canonical_form(path).canon == canonical_form(triangle).canon);

    SUBCASE("idempotent on random structures") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 1000; ++trial) {
            Signature sig = testing::random_signature(rng);
            Structure s = testing::random_structure(sig, 1 + static_cast<int>(rng() % 6), rng);
            Structure c = canonical_form(s).canon;
            CHECK(canonical_form(c).canon == c);
        }
    }
}

TEST_CASE("isomorphism with witness, cross-checked against brute force") {
    std::mt19937_64 rng(13);
    int witnessed = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Signature sig = testing::random_signature(rng);
        int n = 1 + static_cast<int>(rng() % 5);
        Structure a = testing::random_structure(sig, n, rng);
        Structure b = testing::random_structure(sig, n, rng, 0.5);
        if (rng() % 2) {  // half the time, force isomorphic pairs
            if (a.ordered()) {
                b = a;
            } else {
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                b = a.relabelled(perm);
            }
        }
        auto iso = find_isomorphism(a, b);
        CHECK(iso.has_value() == testing::brute_force_isomorphic(a, b));
        if (iso) {
            CHECK(is_embedding(a, b, *iso));
            ++witnessed;
        }
    }
    CHECK(witnessed > 50);
}

TEST_CASE("embedding composition stays an embedding") {
    std::mt19937_64 rng(17);
    int composed = 0;
    for (int trial = 0; trial < 200 && composed < 40; ++trial) {
        Signature sig = testing::random_signature(rng);
        Structure c = testing::random_structure(sig, 6, rng);
        auto cs = enumerate_copies(testing::random_structure(sig, 3, rng), c);
        if (cs.members.empty()) continue;
        Structure b = c.induced(cs.members.front());
        Structure a = b.induced({0, 1});
        for (const auto& e : enumerate_embeddings(a, b))
            for (const auto& f : enumerate_embeddings(b, c)) {
                CHECK(is_embedding(a, c, compose(e, f)));
                ++composed;
            }
    }
    CHECK(composed >= 40);
}

TEST_CASE("counting identity |Emb(A,B)| = |copies| * |Aut(A)|") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 120; ++trial) {
        Signature sig = testing::random_signature(rng);
        int na = 1 + static_cast<int>(rng() % 3);
        int nb = na + static_cast<int>(rng() % 3);
        Structure a = testing::random_structure(sig, na, rng);
        Structure b = testing::random_structure(sig, nb, rng);
        auto embs = enumerate_embeddings(a, b);
        auto copies = enumerate_copies(a, b);
        auto auts = automorphisms(a);
        CHECK(embs.size() == copies.members.size() * auts.size());
    }
}

TEST_CASE("order canonicity") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        Structure a = testing::random_structure(hypergraph_signature(2, true), 3, rng);
        Structure b = testing::random_structure(hypergraph_signature(2, true), 6, rng);
        CHECK(automorphisms(a).size() == 1);
        for (const auto& e : enumerate_embeddings(a, b))
            CHECK(std::is_sorted(e.begin(), e.end()));
    }
}

TEST_CASE("subset ranking round-trips") {
    for (int n : {4, 6, 8})
        for (int k : {1, 2, 3, 4}) {
            if (k > n) continue;
            std::uint64_t expect = 0;
            std::set<std::uint64_t> seen;
            for_each_subset(n, k, [&](const std::vector<int>& t) {
                ++expect;
                std::uint64_t r = colex_rank(t);
                CHECK(colex_unrank(r, k) == t);
                seen.insert(r);
            });
            CHECK(expect == binom(n, k));
            CHECK(seen.size() == expect);
            CHECK(*seen.rbegin() == expect - 1);
        }
}
