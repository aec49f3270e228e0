#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "kaylab/class_pool.hpp"
#include "kaylab/kay.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/subsets.hpp"

using namespace kaylab;

TEST_CASE("enumeration counts") {
    SUBCASE("unordered graphs: 1,1,2,4,11") {
        ClassPool pool = enumerate_class(Family::hypergraphs, 2, 4);
        std::vector<std::uint64_t> counts;
        for (auto& s : pool.slices) counts.push_back(s.count());
        CHECK(counts == std::vector<std::uint64_t>{1, 1, 2, 4, 11});
    }
    SUBCASE("graphs n=5: 34 classes") {
        CHECK(enumerate_class(Family::hypergraphs, 2, 5).slices[5].count() == 34);
    }
    SUBCASE("ordered 2-hypergraphs n=3: all labelled edge sets") {
        ClassPool pool = enumerate_class(Family::ordered_hypergraphs, 2, 3);
        CHECK(pool.slices[3].count() == 8);
    }
    SUBCASE("ordered Kay-graphs, k=3, n <= 3: one member per size") {
        ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 3);
        for (auto& s : pool.slices) CHECK(s.count() == 1);
    }
    SUBCASE("ordered Kay-graph slice sizes, k=3: 2, 16, 1024 at n=4,5,6") {
        ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 6);
        CHECK(pool.slices[4].count() == 2);
        CHECK(pool.slices[5].count() == 16);
        CHECK(pool.slices[6].count() == 1024);
    }
    SUBCASE("two-graph classes: 2, 3, 7 at n=3,4,5") {
        ClassPool pool = enumerate_class(Family::kay_graphs, 2, 5);
        CHECK(pool.slices[3].count() == 2);
        CHECK(pool.slices[4].count() == 3);
        CHECK(pool.slices[5].count() == 7);
    }
    SUBCASE("tournaments: 1, 2, 4 at n=2,3,4") {
        ClassPool pool = enumerate_class(Family::tournaments, 0, 4);
        CHECK(pool.slices[2].count() == 1);
        CHECK(pool.slices[3].count() == 2);
        CHECK(pool.slices[4].count() == 4);
    }
    SUBCASE("budget refusal carries an estimate") {
        EnumerateOptions opts;
        opts.labelled_budget = 1 << 10;
        try {
            enumerate_class(Family::hypergraphs, 2, 6, opts);
            CHECK(false);
        } catch (const BudgetExceeded& e) {
            CHECK(e.estimate.find("2^15") != std::string::npos);
        }
    }
}

TEST_CASE("enumeration soundness and completeness") {
    SUBCASE("labelled completeness cross-check at n = 4 (graphs)") {
        // brute-force labelled enumeration + canonical dedup must agree
        std::set<std::vector<std::uint64_t>> brute;
        for (std::uint64_t r = 0; r < (1ull << 6); ++r)
            brute.insert(canonical_code(hypergraph(4, 2, mask_to_edges(r, 2), false)));
        ClassPool pool = enumerate_class(Family::hypergraphs, 2, 4);
        std::set<std::vector<std::uint64_t>> listed;
        for (const Structure& s : pool.slices[4].members) listed.insert(canonical_code(s));
        CHECK(brute == listed);
    }
    SUBCASE("Kay pools built two ways agree, k=2,3, n <= 5") {
        for (int k : {2, 3}) {
            for (int n = k + 1; n <= 5; ++n) {
                KayKernel ctx(n, k);
                std::set<std::vector<std::uint64_t>> via_images, via_parity;
                for (std::uint64_t r = 0; r < (1ull << ctx.edge_bits()); ++r)
                    via_images.insert(
                        canonical_code(hypergraph(n, k + 1, mask_to_edges(ctx.kay(r), k + 1), false, "S")));
                for (std::uint64_t s = 0; s < (1ull << ctx.kay_bits()); ++s)
                    if (ctx.parity_ok(s))
                        via_parity.insert(
                            canonical_code(hypergraph(n, k + 1, mask_to_edges(s, k + 1), false, "S")));
                CHECK(via_images == via_parity);
            }
        }
    }
    SUBCASE("every ordered Kay member passes the parity condition") {
        ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 6);
        pool.for_each_member([&](const Structure& s) {
            if (s.size() >= 5) REQUIRE(check_parity(s).ok);
        });
    }
}

TEST_CASE("free amalgamation") {
    Structure pt = hypergraph(1, 2, {}, false);
    Structure edge = hypergraph(2, 2, {{0, 1}}, false);
    SUBCASE("empty base gives the disjoint union") {
        Structure empty = hypergraph(0, 2, {}, false);
        Amalgam am = free_amalgam(empty, edge, edge, {}, {});
        CHECK(am.d.size() == 4);
        CHECK(am.d.tuples(0) == std::vector<Tuple>{{0, 1}, {2, 3}});
    }
    SUBCASE("two edges over a point make a path, nothing more") {
        Amalgam am = free_amalgam(pt, edge, edge, {0}, {0});
        CHECK(am.d.size() == 3);
        CHECK(am.d.tuples(0).size() == 2);
        CHECK_FALSE(am.d.has(0, {am.g[1], am.h[1]}));  // freeness
        CHECK(am.g[am.g[0] == 0 ? 0 : 0] == am.h[0]);
    }
    SUBCASE("universal property and kay functoriality over the amalgam") {
        for (int k : {2, 3}) {
            ClassPool pool = enumerate_class(Family::hypergraphs, k, k + 1);
            std::vector<const Structure*> members;
            for (auto& sl : pool.slices)
                for (auto& m : sl.members) members.push_back(&m);
            int instances = 0;
            for (const Structure* a : members)
                for (const Structure* b : members)
                    for (const Structure* c : members) {
                        auto es = enumerate_embeddings(*a, *b);
                        auto fs = enumerate_embeddings(*a, *c);
                        for (const auto& e : es)
                            for (const auto& f : fs) {
                                Amalgam am = free_amalgam(*a, *b, *c, e, f);
                                for (int v = 0; v < a->size(); ++v)
                                    REQUIRE(am.g[e[v]] == am.h[f[v]]);
                                // no tuples beyond the two images
                                std::uint64_t expect = b->tuples(0).size();
                                for (const Tuple& t : c->tuples(0)) {
                                    Tuple img(t.size());
                                    for (std::size_t i = 0; i < t.size(); ++i) img[i] = am.h[t[i]];
                                    std::sort(img.begin(), img.end());
                                    if (!am.d.has(0, img)) REQUIRE(false);
                                    Tuple back(img.size());
                                    bool fromb = true;
                                    for (std::size_t i = 0; i < img.size(); ++i) {
                                        if (img[i] >= b->size()) { fromb = false; break; }
                                        back[i] = img[i];
                                    }
                                    if (!fromb || !b->has(0, back)) ++expect;
                                }
                                REQUIRE(am.d.tuples(0).size() == expect);
                                // the Kay images embed over the base's Kay image
                                REQUIRE(is_embedding(kay_graph(*b), kay_graph(am.d), am.g));
                                REQUIRE(is_embedding(kay_graph(*c), kay_graph(am.d), am.h));
                                ++instances;
                            }
                    }
            CHECK(instances > 100);
        }
    }
}

TEST_CASE("ordered amalgamation") {
    Structure a0 = hypergraph(0, 2, {}, true);
    Structure one = hypergraph(1, 2, {}, true);
    SUBCASE("two 1-chains over nothing merge into a 2-chain") {
        Amalgam am = order_amalgam(a0, one, one, {}, {});
        CHECK(am.d.size() == 2);
        CHECK(am.g == VertexMap{0});
        CHECK(am.h == VertexMap{1});  // B's segment precedes C's
    }
    SUBCASE("restriction to either image recovers the part") {
        std::mt19937_64 rng(211);
        for (int trial = 0; trial < 60; ++trial) {
            Structure b = testing::random_structure(hypergraph_signature(2, true), 4, rng);
            Structure c = testing::random_structure(hypergraph_signature(2, true), 3, rng);
            auto bs = enumerate_copies(chain(2), chain(4));  // any 2-subset as base anchors
            std::vector<int> bsub = bs.members[trial % bs.members.size()];
            Structure a = b.induced(bsub);
            VertexMap e{bsub[0], bsub[1]};
            auto fs = enumerate_embeddings(a, c);
            if (fs.empty()) continue;
            Amalgam am = order_amalgam(a, b, c, e, fs.front());
            REQUIRE(is_embedding(b, am.d, am.g));
            REQUIRE(is_embedding(c, am.d, am.h));
            std::vector<int> image = am.h;
            std::sort(image.begin(), image.end());
            REQUIRE(am.d.induced(image) == c);
        }
    }
    SUBCASE("kay of an ordered amalgam stays in the image family") {
        Structure b = hypergraph(3, 2, {{0, 1}}, true);
        Structure c = hypergraph(3, 2, {{1, 2}}, true);
        Structure a = b.induced({0});
        Amalgam am = order_amalgam(a, b, c, {0}, {0});
        CHECK(kay_class_membership(kay_graph(am.d)).member);
    }
    SUBCASE("non-increasing embeddings rejected") {
        CHECK_THROWS(order_amalgam(chain(2), chain(3), chain(3), {1, 0}, {0, 1}));
    }
}

TEST_CASE("bounded class properties") {
    SUBCASE("two-graph pool n <= 5: HP holds, AP witnesses found") {
        ClassPool pool = enumerate_class(Family::kay_graphs, 2, 5);
        PropertyReport hp = check_property(pool, ClassProperty::hp);
        CHECK(hp.holds);
        PropertyReport ap = check_property(pool, ClassProperty::ap);
        CHECK(ap.holds);
        CHECK(ap.instances_checked > 0);
        CHECK(ap.instances_skipped > 0);  // out-of-bound instances are reported, not claimed
    }
    SUBCASE("removing a member breaks HP with a counterexample") {
        ClassPool pool = enumerate_class(Family::hypergraphs, 2, 3);
        // drop the single-edge graph on 2 vertices
        auto& slice = pool.slices[2].members;
        slice.erase(std::remove_if(slice.begin(), slice.end(),
                                   [](const Structure& s) { return s.tuples(0).size() == 1; }),
                    slice.end());
        PropertyReport hp = check_property(pool, ClassProperty::hp);
        CHECK_FALSE(hp.holds);
        CHECK(hp.witness.has_value());
        CHECK_FALSE(hp.counterexample.empty());
    }
    SUBCASE("tournaments n <= 4: HP and JEP hold") {
        ClassPool pool = enumerate_class(Family::tournaments, 0, 4);
        CHECK(check_property(pool, ClassProperty::hp).holds);
        PropertyReport jep = check_property(pool, ClassProperty::jep);
        CHECK(jep.holds);
        CHECK(jep.instances_checked > 0);
    }
    SUBCASE("HP on the mask-backed ordered Kay pool") {
        ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 6);
        // force one lazy slice to exercise the mask route
        EnumerateOptions opts;
        opts.explicit_cap = 512;
        ClassPool lazy_pool = enumerate_class(Family::ordered_kay_graphs, 3, 6, opts);
        CHECK(lazy_pool.slices[6].lazy());
        CHECK(check_property(lazy_pool, ClassProperty::hp).holds);
        CHECK(check_property(pool, ClassProperty::hp).holds);
    }
}

TEST_CASE("random hereditary pools are downward closed") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        ClassPool pool = random_hereditary_pool(seed);
        CHECK(check_property(pool, ClassProperty::hp).holds);
    }
}

TEST_CASE("pool membership lookup") {
    ClassPool pool = enumerate_class(Family::kay_graphs, 2, 4);
    Structure member = kay_graph(hypergraph(4, 2, {{0, 1}, {2, 3}}, false));
    CHECK(pool.contains_isomorphic(member));
    CHECK_FALSE(pool.contains_isomorphic(hypergraph(4, 3, {{0, 1, 2}}, false, "S")));
}
