#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "kaylab/class_pool.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/order_search.hpp"

using namespace kaylab;

namespace {

Structure three_cycle() {
    return Structure(Signature({{"R", 2, SymbolKind::plain}}), 3, {{{0, 1}, {1, 2}, {2, 0}}});
}

Structure transitive_tournament(int n) {
    std::vector<Tuple> arcs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) arcs.push_back({a, b});
    return Structure(Signature({{"R", 2, SymbolKind::plain}}), n, {{arcs}});
}

}  // namespace

TEST_CASE("pair type ids") {
    SUBCASE("chains carry one converse pair of types") {
        TypeAtlas atlas = build_atlas(enumerate_class(Family::linear_orders, 0, 4));
        REQUIRE(atlas.types.size() == 2);
        CHECK(atlas.converse[0] == 1);
        CHECK(atlas.converse[1] == 0);
        CHECK_FALSE(atlas.self_converse[0]);
    }
    SUBCASE("graphs collapse to two self-converse types") {
        TypeAtlas atlas = build_atlas(enumerate_class(Family::hypergraphs, 2, 3));
        REQUIRE(atlas.types.size() == 2);
        CHECK(atlas.self_converse[0]);
        CHECK(atlas.self_converse[1]);
    }
    SUBCASE("tournaments carry two mutually-converse arc types") {
        TypeAtlas atlas = build_atlas(enumerate_class(Family::tournaments, 0, 3));
        REQUIRE(atlas.types.size() == 2);
        CHECK(atlas.converse[0] == 1);
        CHECK_FALSE(atlas.self_converse[0]);
    }
    SUBCASE("ids are invariant under relabelling") {
        std::mt19937_64 rng(401);
        for (int trial = 0; trial < 60; ++trial) {
            Structure s = testing::random_structure(Signature({{"R", 2, SymbolKind::plain}}), 5, rng);
            std::vector<int> perm{2, 4, 0, 3, 1};
            Structure t = s.relabelled(perm);
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b)
                    if (a != b) CHECK(pair_type_id(s, a, b) == pair_type_id(t, perm[a], perm[b]));
        }
    }
    SUBCASE("atlas grows monotonically with the pool, ids unchanged") {
        ClassPool small = enumerate_class(Family::tournaments, 0, 2);
        ClassPool big = enumerate_class(Family::tournaments, 0, 3);
        TypeAtlas a1 = build_atlas(small), a2 = build_atlas(big);
        std::set<std::string> ids1, ids2;
        for (const auto& t : a1.types) ids1.insert(t.id);
        for (const auto& t : a2.types) ids2.insert(t.id);
        CHECK(std::includes(ids2.begin(), ids2.end(), ids1.begin(), ids1.end()));
    }
}

TEST_CASE("orderability search") {
    SUBCASE("linear orders are ordered by the increasing type") {
        ClassPool pool = enumerate_class(Family::linear_orders, 0, 4);
        auto res = orderability_search(pool);
        REQUIRE(res.status == OrderabilityStatus::ordered);
        REQUIRE(res.phi.has_value());
        CHECK(res.phi->chosen.size() == 1);
        // the chosen type is the one realized by (0,1) in a 2-chain
        CHECK(res.phi->chosen[0] == pair_type_id(chain(2), 0, 1));
        for (int n = 0; n <= 4; ++n) CHECK(order_defines_linear(*res.phi, chain(n)));
    }
    SUBCASE("tournaments fail on the 3-cycle in both directions") {
        ClassPool pool = enumerate_class(Family::tournaments, 0, 3);
        auto res = orderability_search(pool);
        REQUIRE(res.status == OrderabilityStatus::exhausted);
        CHECK(res.candidates_tried == 2);
        REQUIRE(res.failures.size() == 2);
        for (const auto& f : res.failures) {
            CHECK(find_isomorphism(f.failing, three_cycle()).has_value());
            CHECK(f.why == "transitivity fails");
        }
    }
    SUBCASE("graphs are blocked by a self-converse type") {
        auto res = orderability_search(enumerate_class(Family::hypergraphs, 2, 3));
        CHECK(res.status == OrderabilityStatus::self_converse_obstruction);
        CHECK(res.obstruction_type.has_value());
    }
    SUBCASE("the tournament/C-relation pool is rigid yet unorderable") {
        ClassPool pool = enumerate_cameron(4);
        pool.for_each_member([](const Structure& s) { REQUIRE(is_rigid(s)); });
        auto res = orderability_search(pool);
        REQUIRE(res.status == OrderabilityStatus::exhausted);
        CHECK(res.candidates_tried >= 2);
        for (const auto& f : res.failures) CHECK(f.why == "transitivity fails");
    }
}

TEST_CASE("rigidity") {
    CHECK_FALSE(is_rigid(three_cycle()));
    CHECK(is_rigid(chain(6)));
    CHECK(is_rigid(transitive_tournament(4)));
}

TEST_CASE("tournament/C-relation structures") {
    SUBCASE("two leaves carry no C-triples") {
        Structure c = cameron_structure(transitive_tournament(2), "(0,1)");
        CHECK(c.tuples(1).empty());
    }
    SUBCASE("caterpillar on three leaves") {
        Structure c = cameron_structure(transitive_tournament(3), "(0,(1,2))");
        CHECK(c.has(1, {0, 1, 2}));       // meet(1,2) is deeper than meet(0,1)
        CHECK(c.has(1, {0, 2, 1}));       // symmetric in the last two entries
        CHECK_FALSE(c.has(1, {1, 0, 2}));
    }
    SUBCASE("malformed input rejected") {
        CHECK_THROWS(cameron_structure(transitive_tournament(3), "(0,1)"));        // missing leaf
        CHECK_THROWS(cameron_structure(transitive_tournament(3), "((0,1),(1,2))"));
        CHECK_THROWS(cameron_structure(transitive_tournament(3), "(0,(1,2)"));     // unbalanced
        Structure not_tournament(Signature({{"R", 2, SymbolKind::plain}}), 2, {{{0, 1}, {1, 0}}});
        CHECK_THROWS(cameron_structure(not_tournament, "(0,1)"));
    }
    SUBCASE("enumeration counts and group facts") {
        ClassPool pool = enumerate_cameron(4);
        CHECK(pool.slices[2].count() == 1);
        CHECK(pool.slices[3].count() >= 2);
        // automorphism groups of the C-reduct alone are 2-groups
        for (int m = 0; m <= 4; ++m) {
            for (const Structure& s : pool.slices[m].members) {
                Structure c_only(Signature({{"C", 3, SymbolKind::plain}}), s.size(), {s.tuples(1)});
                auto aut = automorphisms(c_only).size();
                CHECK((aut & (aut - 1)) == 0);  // power of two
            }
        }
        // tournament reducts have odd-order groups
        for (const Structure& s : pool.slices[4].members) {
            Structure r_only(Signature({{"R", 2, SymbolKind::plain}}), s.size(), {s.tuples(0)});
            CHECK(automorphisms(r_only).size() % 2 == 1);
        }
    }
}

TEST_CASE("group facts persist at five leaves") {
    // a slow sweep: every tournament/C-relation structure on <= 5 vertices
    ClassPool pool = enumerate_cameron(5);
    CHECK(pool.slices[5].count() == 896);
    std::uint64_t members = 0;
    pool.for_each_member([&](const Structure& s) {
        ++members;
        REQUIRE(is_rigid(s));
        Structure c_only(Signature({{"C", 3, SymbolKind::plain}}), s.size(), {s.tuples(1)});
        auto aut = automorphisms(c_only).size();
        REQUIRE((aut & (aut - 1)) == 0);
        Structure r_only(Signature({{"R", 2, SymbolKind::plain}}), s.size(), {s.tuples(0)});
        REQUIRE(automorphisms(r_only).size() % 2 == 1);
    });
    CHECK(members == 943);
}

TEST_CASE("order extraction via direction colourings") {
    SUBCASE("linear orders extract the increasing type") {
        ClassPool pool = enumerate_class(Family::linear_orders, 0, 4);
        auto res = two_erp_order_extraction(pool);
        REQUIRE(res.status == ExtractionStatus::ordered);
        CHECK(res.phi->chosen == std::vector<std::string>{pair_type_id(chain(2), 0, 1)});
        CHECK(res.jep_checked);
        CHECK(res.jep_holds);
        for (const auto& step : res.steps) CHECK(step.witnessed);
    }
    SUBCASE("ordered Kay pool extracts the built-in order") {
        ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 5);
        auto res = two_erp_order_extraction(pool);
        REQUIRE(res.status == ExtractionStatus::ordered);
        CHECK(res.phi->chosen.size() == 1);
        Structure member = pool.slices[2].members[0];
        CHECK(res.phi->chosen[0] == pair_type_id(member, 0, 1));
    }
    SUBCASE("tournaments fail at the constancy step on the 3-cycle") {
        ClassPool pool = enumerate_class(Family::tournaments, 0, 3);
        auto res = two_erp_order_extraction(pool);
        REQUIRE(res.status == ExtractionStatus::no_witness);
        CHECK(res.detail.find("size 3") != std::string::npos);
    }
    SUBCASE("orderable pools have only rigid members") {
        for (std::uint64_t seed = 20; seed < 35; ++seed) {
            ClassPool pool = random_hereditary_pool(seed);
            auto res = orderability_search(pool);
            if (res.status != OrderabilityStatus::ordered) continue;
            pool.for_each_member([](const Structure& s) { REQUIRE(is_rigid(s)); });
        }
    }
}
