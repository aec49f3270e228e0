#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "kaylab/certcheck.hpp"
#include "kaylab/class_pool.hpp"
#include "kaylab/kay.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/ramsey.hpp"
#include "kaylab/subsets.hpp"

using namespace kaylab;

namespace {

Structure point() { return chain(1); }

ArrowCertificate chain_arrow(int c, int b, int a, int colours, int degree,
                             ColourMode mode = ColourMode::copies, ArrowOptions opts = {}) {
    return oscillation_holds(chain(c), chain(b), chain(a), colours, degree, mode, opts);
}

}  // namespace

TEST_CASE("pigeonhole calibration: 3-chain -> (2-chain)^point_2") {
    auto holds = chain_arrow(3, 2, 1, 2, 1);
    CHECK(holds.verdict == ArrowVerdict::holds);

    auto fails = chain_arrow(2, 2, 1, 2, 1);
    REQUIRE(fails.verdict == ArrowVerdict::fails);
    REQUIRE(fails.colouring.size() == 1);
    CHECK(fails.colouring[0] == std::vector<int>{0, 1});  // the two points get distinct colours
}

TEST_CASE("ramsey number calibration: 6-chain -> (3-chain)^{2-chain}_2, 5-chain does not") {
    auto six = chain_arrow(6, 3, 2, 2, 1);
    CHECK(six.verdict == ArrowVerdict::holds);
    auto five = chain_arrow(5, 3, 2, 2, 1);
    REQUIRE(five.verdict == ArrowVerdict::fails);

    // the certificate really refutes: every triple sees both colours
    std::vector<certcheck::FamilyData> fams{{chain(2), 2, 1, five.objects[0], five.colouring[0]}};
    auto v = certcheck::verify_refutation(chain(5), chain(3), fams, true);
    CHECK(v.valid);
    CHECK(v.blocks_checked == 10);
}

TEST_CASE("degree at or above the palette holds trivially") {
    auto cert = chain_arrow(4, 3, 2, 2, 2);
    CHECK(cert.verdict == ArrowVerdict::holds);
    CHECK(cert.nodes == 0);  // dead at the root
    CHECK(cert.good_copy.has_value());
}

TEST_CASE("pruned search agrees with full enumeration") {
    struct Inst { int c, b, a, r, d; };
    for (const Inst& i : {Inst{3, 2, 1, 2, 1}, Inst{2, 2, 1, 2, 1}, Inst{4, 3, 2, 2, 1},
                          Inst{5, 3, 2, 2, 1}, Inst{5, 4, 2, 2, 1}, Inst{4, 3, 1, 3, 1},
                          Inst{6, 3, 2, 2, 1}}) {
        auto pruned = chain_arrow(i.c, i.b, i.a, i.r, i.d).verdict;
        bool full = certcheck::arrow_holds_by_enumeration(
            chain(i.c), chain(i.b), {{chain(i.a), i.r, i.d, {}, {}}}, true);
        CHECK((pruned == ArrowVerdict::holds) == full);
    }
    CHECK_THROWS_AS(certcheck::arrow_holds_by_enumeration(chain(8), chain(3),
                                                          {{chain(2), 2, 1, {}, {}}}, true, 1 << 10),
                    BudgetExceeded);
}

TEST_CASE("copies and embeddings modes agree for rigid patterns") {
    for (int c : {4, 5}) {
        auto a = chain_arrow(c, 3, 2, 2, 1, ColourMode::copies).verdict;
        auto b = chain_arrow(c, 3, 2, 2, 1, ColourMode::embeddings).verdict;
        CHECK(a == b);
    }
}

TEST_CASE("joint colourings") {
    SUBCASE("vertex and pair colourings simultaneously on the 6-chain") {
        std::vector<ColourFamily> fams{{point(), 2, 1}, {chain(2), 2, 1}};
        auto cert = joint_oscillation(chain(6), chain(2), fams, ColourMode::copies);
        CHECK(cert.verdict == ArrowVerdict::holds);
        CHECK(certcheck::arrow_holds_by_enumeration(
            chain(6), chain(2), {{point(), 2, 1, {}, {}}, {chain(2), 2, 1, {}, {}}}, true,
            1ull << 22));
    }
    SUBCASE("a single family degenerates to the plain arrow") {
        for (int c : {2, 3, 4, 5}) {
            auto joint = joint_oscillation(chain(c), chain(2), {{point(), 2, 1}}, ColourMode::copies);
            auto plain = chain_arrow(c, 2, 1, 2, 1);
            CHECK(joint.verdict == plain.verdict);
            if (joint.verdict == ArrowVerdict::fails) CHECK(joint.colouring == plain.colouring);
        }
    }
    SUBCASE("sequential composition builder, verified by the product search") {
        ClassPool pool = enumerate_class(Family::linear_orders, 0, 6);
        std::vector<ColourFamily> fams{{point(), 2, 1}, {chain(2), 2, 1}};
        std::vector<Structure> stages;
        auto c = sequential_arrow_builder(pool, chain(2), fams, ColourMode::copies, {}, &stages);
        REQUIRE(c.has_value());
        CHECK(stages.size() == 2);
        CHECK(stages[0].size() == 3);  // pigeonhole stage
        CHECK(c->size() == 6);         // pair-colouring stage
        CHECK(joint_oscillation(*c, chain(2), fams, ColourMode::copies).verdict ==
              ArrowVerdict::holds);
    }
}

TEST_CASE("restricting a refutation to a sub-chain still refutes") {
    auto five = chain_arrow(5, 3, 2, 2, 1);
    REQUIRE(five.verdict == ArrowVerdict::fails);
    // every pair of the 4-chain {0..3} is a pair of the 5-chain
    std::vector<std::vector<int>> objects;
    std::vector<int> colours;
    for (std::size_t i = 0; i < five.objects[0].size(); ++i)
        if (five.objects[0][i][1] <= 3) {
            objects.push_back(five.objects[0][i]);
            colours.push_back(five.colouring[0][i]);
        }
    std::vector<certcheck::FamilyData> fams{{chain(2), 2, 1, objects, colours}};
    CHECK(certcheck::verify_refutation(chain(4), chain(3), fams, true).valid);
}

TEST_CASE("vacuous instances are flagged with sound verdicts") {
    // B does not embed into C: refuted by any colouring at all
    auto no_b = chain_arrow(2, 3, 1, 2, 1);
    CHECK(no_b.verdict == ArrowVerdict::fails);
    CHECK(no_b.vacuous);
    // A does not occur inside B: every copy of B is trivially good
    Structure edge = hypergraph(3, 2, {{0, 1}}, true);
    Structure a = hypergraph(2, 2, {{0, 1}}, true);
    Structure c = hypergraph(4, 2, {{0, 1}}, true);
    Structure b_empty = hypergraph(3, 2, {}, true);
    auto no_a = oscillation_holds(c, b_empty, a, 2, 1, ColourMode::copies);
    CHECK(no_a.verdict == ArrowVerdict::holds);
    CHECK(no_a.vacuous);
    (void)edge;
}

TEST_CASE("budget exhaustion is an explicit verdict") {
    ArrowOptions opts;
    opts.node_budget = 4;
    auto cert = chain_arrow(6, 3, 2, 2, 1, ColourMode::copies, opts);
    CHECK(cert.verdict == ArrowVerdict::budget_exhausted);
    CHECK(cert.nodes >= 4);
}

TEST_CASE("worker splitting preserves verdicts") {
    for (int workers : {2, 4}) {
        ArrowOptions opts;
        opts.workers = workers;
        CHECK(chain_arrow(6, 3, 2, 2, 1, ColourMode::copies, opts).verdict == ArrowVerdict::holds);
        CHECK(chain_arrow(5, 3, 2, 2, 1, ColourMode::copies, opts).verdict == ArrowVerdict::fails);
    }
}

TEST_CASE("expansion counting") {
    SUBCASE("sizes below k have the single trivial expansion") {
        for (int n : {0, 1, 2}) {
            Structure base = hypergraph(n, 4, {}, true, "S");
            auto ec = count_expansions(base, 3);
            CHECK(ec.count == 1);
        }
    }
    SUBCASE("size k has exactly the empty and the full edge set") {
        Structure base = hypergraph(3, 4, {}, true, "S");
        auto ec = count_expansions(base, 3);
        REQUIRE(ec.count == 2);
        CHECK(ec.witnesses[0].tuples(0).empty());
        CHECK(ec.witnesses[1].tuples(0) == std::vector<Tuple>{{0, 1, 2}});
    }
    SUBCASE("kay images count their own preimage") {
        std::mt19937_64 rng(301);
        for (int trial = 0; trial < 25; ++trial) {
            Structure h = testing::random_structure(hypergraph_signature(3, true), 5, rng);
            Structure s = kay_graph(h);
            auto ec = count_expansions(s, 3);
            CHECK(ec.count >= 1);
            bool found = false;
            for (const Structure& w : ec.witnesses)
                if (w == h) found = true;
            CHECK(found);
        }
    }
    SUBCASE("fiber route agrees with brute-force enumeration") {
        std::mt19937_64 rng(303);
        for (int trial = 0; trial < 20; ++trial) {
            int k = 2 + static_cast<int>(rng() % 2);
            int n = k + static_cast<int>(rng() % 3);
            Structure h = testing::random_structure(hypergraph_signature(k, true), n, rng);
            Structure s = kay_graph(h);
            PreimageFiber fiber = preimage_fiber(s);
            auto ec = count_expansions(s, k, 1ull << 20);
            CHECK(fiber.count() == ec.count);
            // rank-nullity: images times fiber size covers the edge space
            KayKernel ctx(n, k);
            std::set<std::uint64_t> images;
            for (std::uint64_t r = 0; r < (1ull << ctx.edge_bits()); ++r) images.insert(ctx.kay(r));
            CHECK(images.size() * fiber.count() == 1ull << ctx.edge_bits());
            // all fiber members map back to s
            for (std::uint64_t i = 0; i < std::min<std::uint64_t>(fiber.count(), 64); ++i)
                CHECK(ctx.kay(fiber.member(i)) == edges_to_mask(s, 0));
        }
    }
    SUBCASE("budget refusal") {
        CHECK_THROWS_AS(count_expansions(hypergraph(7, 4, {}, true, "S"), 3, 16, 1 << 10),
                        BudgetExceeded);
    }
}

TEST_CASE("expansion colouring") {
    Structure pattern = hypergraph(3, 4, {}, true, "S");
    SUBCASE("kay of a single full-size edge colours its unique copy as an edge") {
        Structure base = kay_graph(hypergraph(3, 3, {{0, 1, 2}}, true));
        auto col = expansion_colouring(base, 3, pattern);
        REQUIRE(col.objects.size() == 1);
        CHECK(col.colours[0] == 1);
    }
    SUBCASE("colour classes partition the k-subsets") {
        Structure base = kay_graph(hypergraph(6, 3, {{0, 1, 2}, {2, 3, 4}}, true));
        auto col = expansion_colouring(base, 3, pattern);
        CHECK(col.objects.size() == binom(6, 3));
        for (int c : col.colours) CHECK((c == 0 || c == 1));
    }
    SUBCASE("parity violations are rejected") {
        // two 4-edges inside a 5-set: even count where an odd one is required
        Structure bad = hypergraph(5, 4, {{0, 1, 2, 3}, {0, 1, 2, 4}}, true, "S");
        CHECK_THROWS_AS(expansion_colouring(bad, 3, pattern), ParityViolation);
    }
}

TEST_CASE("non-ramsey witness over the ordered Kay pool, k=3, n <= 5") {
    ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 5);
    auto rep = non_ramsey_witness(3, pool);
    CHECK(rep.mono_copies == 0);
    CHECK(rep.failures.empty());
    CHECK(rep.members_checked == pool.total_count());
    CHECK(rep.empty_extension_differs);
    CHECK(rep.complete_extension_differs);
    CHECK(rep.independently_validated == rep.members_checked);
    CHECK(rep.copies_checked > 0);

    SUBCASE("the edgeless extension on k+2 vertices has complete S for odd k") {
        Structure complete = kay_graph(hypergraph(5, 3, {}, true));
        CHECK(complete.tuples(0).size() == binom(5, 4));
        CHECK_FALSE(complete == rep.b_star);
    }
    SUBCASE("non-Kay pools are rejected") {
        ClassPool bad = pool;
        bad.slices[5].members.push_back(
            hypergraph(5, 4, {{0, 1, 2, 3}, {0, 1, 2, 4}}, true, "S"));
        CHECK_THROWS(non_ramsey_witness(3, bad));
    }
}

TEST_CASE("positive erp probe") {
    ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 6);
    SUBCASE("pairs need a 6-element witness") {
        auto rep = positive_erp_probe(3, pool, 2, 3);
        CHECK(rep.all_found);
        for (const auto& e : rep.entries) {
            if (e.vacuous) continue;
            if (e.b.size() == 3) CHECK(*e.witness_size == 6);
        }
    }
    SUBCASE("points need three vertices") {
        auto rep = positive_erp_probe(3, pool, 1, 2);
        CHECK(rep.all_found);
        for (const auto& e : rep.entries)
            if (!e.vacuous && e.b.size() == 2) CHECK(*e.witness_size == 3);
    }
    SUBCASE("patterns larger than the target are vacuous") {
        auto rep = positive_erp_probe(3, pool, 2, 1);
        for (const auto& e : rep.entries)
            if (e.b.size() < 2) CHECK(e.vacuous);
    }
}

TEST_CASE("expansion property probe") {
    SUBCASE("trivial expansions always embed") {
        ExpandedStructure a = ExpandedStructure::from_edges(2, 3, {}, true);
        Structure b = kay_graph(hypergraph(4, 3, {{0, 1, 2}}, true));
        CHECK(expansion_property_probe(a, b));
    }
    SUBCASE("a single-edge pattern fails against the size-k member") {
        ExpandedStructure a = ExpandedStructure::from_edges(3, 3, {{0, 1, 2}}, true);
        Structure b = hypergraph(3, 4, {}, true, "S");
        CHECK_FALSE(expansion_property_probe(a, b));
    }
    SUBCASE("the recipe-shaped candidate passes for |A*| = 3") {
        ExpandedStructure a = ExpandedStructure::from_edges(3, 3, {{0, 1, 2}}, true);
        Structure b = expansion_recipe_candidate(a);
        CHECK(b.size() == 7);
        CHECK(expansion_property_probe(a, b, 1ull << 40));
    }
}
