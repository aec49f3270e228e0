#include "kaylab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>

#include "kaylab/certcheck.hpp"
#include "kaylab/certificates.hpp"
#include "kaylab/class_pool.hpp"
#include "kaylab/io.hpp"
#include "kaylab/kay.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/order_search.hpp"
#include "kaylab/ramsey.hpp"
#include "kaylab/structure.hpp"
#include "kaylab/subsets.hpp"

namespace kaylab {

namespace {

using nlohmann::ordered_json;

struct SuiteContext {
    const SuiteOptions& opts;
    std::vector<std::string> certificates;
    std::vector<std::string> artifacts;

    void write(const std::string& rel, const ordered_json& j) {
        write_text_file(opts.out_dir / rel, j.dump(2) + "\n");
        const std::string type = j.contains("type") ? j["type"].get<std::string>() : "";
        const bool checkable = type.rfind("arrow-", 0) == 0 || type == "no-mono-copy";
        (checkable ? certificates : artifacts).push_back(rel);
    }
};

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

// ---- criterion 1: parity condition characterizes the kay images -------------

Outcome criterion_parity(SuiteContext& ctx) {
    Outcome out;
    ordered_json doc;
    doc["checks"] = ordered_json::array();
    std::uint64_t candidates = 0, members = 0, discrepancies = 0;
    for (auto [k, max_n] : {std::pair{2, 5}, std::pair{3, 6}}) {
        for (int n = 0; n <= max_n; ++n) {
            KayKernel kernel(n, k);
            std::vector<std::uint64_t> images;
            const std::uint64_t edge_total = 1ull << kernel.edge_bits();
            images.reserve(edge_total);
            for (std::uint64_t r = 0; r < edge_total; ++r) images.push_back(kernel.kay(r));
            std::sort(images.begin(), images.end());
            images.erase(std::unique(images.begin(), images.end()), images.end());

            std::uint64_t local_disc = 0;
            const std::uint64_t s_total = 1ull << kernel.kay_bits();
            for (std::uint64_t s = 0; s < s_total; ++s) {
                const bool parity = kernel.parity_ok(s);
                const bool image = std::binary_search(images.begin(), images.end(), s);
                if (parity != image) ++local_disc;
                if (parity && n > 0 && kernel.kay(kernel.reconstruct(s, 0)) != s) ++local_disc;
            }
            candidates += s_total;
            members += images.size();
            discrepancies += local_disc;
            ordered_json jc;
            jc["k"] = k;
            jc["n"] = n;
            jc["candidates"] = s_total;
            jc["members"] = images.size();
            jc["discrepancies"] = local_disc;
            doc["checks"].push_back(std::move(jc));
        }
    }
    out.require(discrepancies == 0, "parity/image discrepancies found");
    out.detail = std::to_string(candidates) + " candidates, " + std::to_string(members) +
                 " members, " + std::to_string(discrepancies) + " discrepancies";
    ctx.write("criterion_01_parity.json", doc);
    return out;
}

// ---- criterion 2: reconstruction round-trip ----------------------------------

Outcome criterion_roundtrip(SuiteContext& ctx) {
    Outcome out;
    std::uint64_t checked = 0, failures = 0;
    ordered_json doc;
    doc["checks"] = ordered_json::array();
    for (auto [k, max_n] : {std::pair{2, 6}, std::pair{3, 6}}) {
        for (int n = 1; n <= max_n; ++n) {
            KayKernel kernel(n, k);
            const std::uint64_t total = 1ull << kernel.edge_bits();
            std::uint64_t local = 0;
            for (std::uint64_t r = 0; r < total; ++r) {
                const std::uint64_t s = kernel.kay(r);
                for (int star = 0; star < n; ++star) {
                    ++checked;
                    if (kernel.kay(kernel.reconstruct(s, star)) != s) {
                        ++failures;
                        ++local;
                    }
                }
            }
            ordered_json jc;
            jc["k"] = k;
            jc["n"] = n;
            jc["edge_sets"] = total;
            jc["failures"] = local;
            doc["checks"].push_back(std::move(jc));
        }
    }
    out.require(failures == 0, "round-trip failures");
    out.detail = std::to_string(checked) + " (edge set, star) pairs, " + std::to_string(failures) +
                 " failures";
    ctx.write("criterion_02_roundtrip.json", doc);
    return out;
}

// ---- criterion 3: expansion counts over the ordered Kay pools -----------------

Outcome criterion_expansions(SuiteContext& ctx) {
    Outcome out;
    ordered_json doc;
    doc["members"] = ordered_json::array();
    for (int k : {3, 4}) {
        ClassPool pool = enumerate_class(Family::ordered_kay_graphs, k, k);
        for (const PoolSlice& slice : pool.slices) {
            for (std::uint64_t i = 0; i < slice.count(); ++i) {
                Structure member = slice.materialize(i);
                auto ec = count_expansions(member, k);
                const std::uint64_t expect = slice.size <= k - 1 ? 1 : 2;
                ordered_json jm;
                jm["k"] = k;
                jm["size"] = slice.size;
                jm["count"] = ec.count;
                jm["expected"] = expect;
                doc["members"].push_back(std::move(jm));
                out.require(ec.count == expect,
                            "size " + std::to_string(slice.size) + " has " +
                                std::to_string(ec.count) + " expansions (k=" + std::to_string(k) +
                                ")");
                if (slice.size == k && ec.count == 2) {
                    out.require(ec.witnesses[0].tuples(0).empty(), "first witness not empty");
                    out.require(ec.witnesses[1].tuples(0).size() == 1, "second witness not full");
                }
            }
        }
    }
    if (out.pass) out.detail = "sizes <= k-1 have 1 expansion, size k has 2, for k in {3,4}";
    ctx.write("criterion_03_expansions.json", doc);
    return out;
}

// ---- criterion 4: complement parity law ---------------------------------------

Outcome criterion_complement(SuiteContext& ctx) {
    Outcome out;
    std::uint64_t checked = 0, failures = 0;
    ordered_json doc;
    doc["law"] = "S' = S for odd k; S' = complement(S) for even k";
    doc["checks"] = ordered_json::array();
    for (int k : {2, 3, 4}) {
        for (int n = k; n <= 6; ++n) {
            KayKernel kernel(n, k);
            const std::uint64_t total = 1ull << kernel.edge_bits();
            const std::uint64_t full = kernel.full_edges();
            const std::uint64_t full_kay = kernel.full_kay();
            std::uint64_t local = 0;
            for (std::uint64_t r = 0; r < total; ++r) {
                const std::uint64_t s = kernel.kay(r);
                const std::uint64_t sc = kernel.kay(~r & full);
                ++checked;
                const bool ok = (k % 2 == 1) ? sc == s : sc == (~s & full_kay);
                if (!ok) {
                    ++failures;
                    ++local;
                }
            }
            ordered_json jc;
            jc["k"] = k;
            jc["n"] = n;
            jc["edge_sets"] = total;
            jc["failures"] = local;
            doc["checks"].push_back(std::move(jc));
        }
    }
    out.require(failures == 0, "complement parity failures");
    out.detail = std::to_string(checked) + " edge sets; S'=S iff k odd, S'=complement(S) iff k even";
    ctx.write("criterion_04_complement.json", doc);
    return out;
}

// ---- criterion 5: star-extension law -------------------------------------------

Outcome criterion_star(SuiteContext& ctx) {
    Outcome out;
    std::uint64_t checked = 0, failures = 0;
    for (int k : {2, 3}) {
        for (int n = k; n <= 5; ++n) {
            const std::uint64_t total = 1ull << binom(n, k);
            for (std::uint64_t r = 0; r < total; ++r) {
                ExpandedStructure d =
                    ExpandedStructure::from_edges(n, k, mask_to_edges(r, k), true);
                try {
                    ExpandedStructure ds = star_extension(d);  // asserts the star law
                    bool ok = true;
                    for_each_subset(n, k, [&](const std::vector<int>& t) {
                        Tuple x = t;
                        x.push_back(n);
                        if (ds.structure().has(ds.kay_symbol(), x) !=
                            d.structure().has(d.edge_symbol(), t))
                            ok = false;
                    });
                    if (!ok) ++failures;
                } catch (const std::logic_error&) {
                    ++failures;
                }
                ++checked;
            }
        }
    }
    out.require(failures == 0, "star law failures");
    out.detail = std::to_string(checked) + " extensions checked across k in {2,3}, n <= 5";
    ordered_json doc;
    doc["checked"] = checked;
    doc["failures"] = failures;
    ctx.write("criterion_05_star.json", doc);
    return out;
}

// ---- criterion 6: arrow engine calibration --------------------------------------

Outcome criterion_arrows(SuiteContext& ctx) {
    Outcome out;
    ArrowOptions aopts;
    aopts.deterministic = ctx.opts.deterministic;
    aopts.workers = ctx.opts.workers;

    struct Inst {
        int c, b, a, r, d;
        ArrowVerdict expect;
        const char* label;
    };
    const Inst instances[] = {
        {3, 2, 1, 2, 1, ArrowVerdict::holds, "pigeonhole_holds"},
        {2, 2, 1, 2, 1, ArrowVerdict::fails, "pigeonhole_fails"},
        {6, 3, 2, 2, 1, ArrowVerdict::holds, "pair_colouring_holds"},
        {5, 3, 2, 2, 1, ArrowVerdict::fails, "pair_colouring_fails"},
        {4, 3, 2, 2, 1, ArrowVerdict::fails, "pair_colouring_small"},
        {5, 4, 2, 2, 1, ArrowVerdict::fails, "pair_colouring_wide"},
        {4, 3, 1, 3, 1, ArrowVerdict::fails, "three_palette"},
    };
    int idx = 0;
    for (const Inst& inst : instances) {
        std::vector<ColourFamily> fams{{chain(inst.a), inst.r, inst.d}};
        auto cert = joint_oscillation(chain(inst.c), chain(inst.b), fams, ColourMode::copies, aopts);
        out.require(cert.verdict == inst.expect,
                    std::string(inst.label) + " returned " + to_string(cert.verdict));
        const bool full = certcheck::arrow_holds_by_enumeration(
            chain(inst.c), chain(inst.b), {{chain(inst.a), inst.r, inst.d, {}, {}}}, true);
        out.require((cert.verdict == ArrowVerdict::holds) == full,
                    std::string(inst.label) + " disagrees with full enumeration");
        ordered_json jc = arrow_certificate_to_json(chain(inst.c), chain(inst.b), fams, cert);
        auto check = verify_certificate_json(jc);
        out.require(check.valid, std::string(inst.label) + " certificate rejected: " + check.detail);
        char name[64];
        std::snprintf(name, sizeof name, "criterion_06_arrows/instance_%02d_%s.json", idx++,
                      inst.label);
        ctx.write(name, jc);
    }
    if (out.pass)
        out.detail = "chain calibration verdicts match expectations and full enumeration";
    return out;
}

// ---- criterion 7: constructive non-Ramsey sweep ----------------------------------

Outcome criterion_non_ramsey(SuiteContext& ctx) {
    Outcome out;
    ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 7);
    NonRamseyOptions nopts;
    nopts.validate_independently = true;
    auto rep = non_ramsey_witness(3, pool, nopts);
    out.require(rep.mono_copies == 0, "monochromatic copies found");
    out.require(rep.failures.empty(), "member failures recorded");
    out.require(rep.members_checked == pool.total_count(), "not all members checked");
    out.require(rep.independently_validated == rep.members_checked,
                "independent validation incomplete");
    out.require(rep.empty_extension_differs && rep.complete_extension_differs,
                "the single-edge image fails to separate from the trivial images");
    out.require(rep.copies_checked > 0, "no pattern copies occurred at all");
    out.detail = std::to_string(rep.members_checked) + " members, " +
                 std::to_string(rep.copies_checked) + " pattern copies, 0 monochromatic";

    ordered_json doc;
    doc["members_checked"] = rep.members_checked;
    doc["copies_checked"] = rep.copies_checked;
    doc["mono_copies"] = rep.mono_copies;
    doc["independently_validated"] = rep.independently_validated;
    doc["pattern"] = structure_to_json(rep.b_star);
    ctx.write("criterion_07_nonramsey/summary.json", doc);

    // a deterministic sample of full certificates, re-checked from the file form
    int emitted = 0;
    for (int size : {5, 6, 7}) {
        const PoolSlice& slice = pool.slices[size];
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(slice.count(), 3); ++i) {
            Structure member = slice.materialize(i);
            auto colouring =
                expansion_colouring(member, 3, hypergraph(3, 4, {}, true, "S"), nopts.star);
            std::vector<std::pair<std::vector<int>, int>> pairs;
            for (std::size_t t = 0; t < colouring.objects.size(); ++t)
                pairs.push_back({colouring.objects[t], colouring.colours[t]});
            ordered_json jc = non_ramsey_certificate_to_json(member, rep.b_star, pairs);
            auto check = verify_certificate_json(jc);
            out.require(check.valid, "sample certificate rejected: " + check.detail);
            char name[64];
            std::snprintf(name, sizeof name, "criterion_07_nonramsey/sample_n%d_%02d.json", size,
                          static_cast<int>(i));
            ctx.write(name, jc);
            ++emitted;
        }
    }
    out.require(emitted > 0, "no sample certificates emitted");
    return out;
}

// ---- criterion 8: positive probe --------------------------------------------------

Outcome criterion_erp_probe(SuiteContext& ctx) {
    Outcome out;
    ClassPool pool = enumerate_class(Family::ordered_kay_graphs, 3, 6);
    ArrowOptions aopts;
    aopts.deterministic = ctx.opts.deterministic;
    aopts.workers = ctx.opts.workers;
    auto rep = positive_erp_probe(3, pool, 2, 3, aopts);
    out.require(rep.all_found, "a pool member lacks a witness");
    ordered_json doc;
    doc["entries"] = ordered_json::array();
    for (const auto& e : rep.entries) {
        ordered_json je;
        je["b_size"] = e.b.size();
        je["vacuous"] = e.vacuous;
        if (e.witness_size) je["witness_size"] = *e.witness_size;
        doc["entries"].push_back(std::move(je));
        if (e.vacuous) continue;
        out.require(e.witness_size.has_value(), "missing witness");
        if (e.b.size() == 3)
            out.require(*e.witness_size <= 6,
                        "size-3 target needed a witness beyond six vertices");
    }
    if (out.pass) out.detail = "every size-3 target has a witness within six vertices";
    ctx.write("criterion_08_erp_probe.json", doc);
    return out;
}

// ---- criterion 9: orderability verdicts -------------------------------------------

Outcome criterion_orderability(SuiteContext& ctx) {
    Outcome out;
    ordered_json doc;

    ClassPool chains = enumerate_class(Family::linear_orders, 0, 4);
    auto res = orderability_search(chains);
    out.require(res.status == OrderabilityStatus::ordered, "chains not ordered");
    out.require(res.phi && res.phi->chosen == std::vector<std::string>{pair_type_id(chain(2), 0, 1)},
                "chain order definition unexpected");
    doc["linear_orders"] = to_string(res.status);

    ClassPool tournaments = enumerate_class(Family::tournaments, 0, 3);
    auto rest = orderability_search(tournaments);
    out.require(rest.status == OrderabilityStatus::exhausted, "tournaments not exhausted");
    out.require(rest.candidates_tried == 2, "tournament candidate count unexpected");
    Structure cyc(Signature({{"R", 2, SymbolKind::plain}}), 3, {{{0, 1}, {1, 2}, {2, 0}}});
    for (const auto& f : rest.failures)
        out.require(find_isomorphism(f.failing, cyc).has_value(),
                    "tournament obstruction is not the 3-cycle");
    doc["tournaments"] = to_string(rest.status);
    doc["tournament_candidates"] = rest.candidates_tried;

    ClassPool cameron = enumerate_cameron(4);
    bool all_rigid = true;
    cameron.for_each_member([&](const Structure& s) { all_rigid = all_rigid && is_rigid(s); });
    auto resc = orderability_search(cameron);
    out.require(all_rigid, "a tournament/C-relation member is not rigid");
    out.require(resc.status == OrderabilityStatus::exhausted,
                "tournament/C-relation pool unexpectedly ordered");
    doc["cameron"] = to_string(resc.status);
    doc["cameron_all_rigid"] = all_rigid;

    if (out.pass)
        out.detail = "chains ordered by the increasing type; tournaments and the C-relation pool "
                     "obstructed as expected";
    ctx.write("criterion_09_orderability.json", doc);
    return out;
}

// ---- criterion 10: orderable pools are rigid ----------------------------------------

Outcome criterion_orderable_rigid(SuiteContext& ctx) {
    Outcome out;
    int successes = 0, violations = 0;
    ordered_json doc;
    doc["pools"] = ordered_json::array();
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ClassPool pool = random_hereditary_pool(seed);
        auto res = orderability_search(pool);
        ordered_json jp;
        jp["seed"] = seed;
        jp["family"] = to_string(pool.family);
        jp["members"] = pool.total_count();
        jp["status"] = to_string(res.status);
        if (res.status == OrderabilityStatus::ordered) {
            ++successes;
            pool.for_each_member([&](const Structure& s) {
                if (!is_rigid(s)) ++violations;
            });
        }
        doc["pools"].push_back(std::move(jp));
    }
    out.require(violations == 0, std::to_string(violations) + " non-rigid members in ordered pools");
    out.require(successes > 0, "no pool was orderable; the sweep is vacuous");
    out.detail = std::to_string(successes) + "/50 pools ordered, 0 rigidity violations";
    doc["ordered_pools"] = successes;
    doc["violations"] = violations;
    ctx.write("criterion_10_rigidity.json", doc);
    return out;
}

// ---- criterion 11: counting identity ------------------------------------------------

Outcome criterion_counting(SuiteContext& ctx) {
    Outcome out;
    std::mt19937_64 rng(0xC0FFEEull);
    auto random_structure = [&](const Signature& sig, int n) {
        std::vector<std::vector<Tuple>> rels(sig.symbol_count());
        for (int s = 0; s < sig.symbol_count(); ++s) {
            const Symbol& sym = sig.symbols()[s];
            if (sym.kind == SymbolKind::order) continue;
            if (sym.kind == SymbolKind::hyperedge) {
                for_each_subset(n, sym.arity, [&](const std::vector<int>& t) {
                    if (rng() % 5 < 2) rels[s].push_back(t);
                });
            } else {
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (a != b && rng() % 5 < 2) rels[s].push_back({a, b});
            }
        }
        return Structure(sig, n, std::move(rels));
    };
    const Signature sigs[] = {hypergraph_signature(2, false), hypergraph_signature(3, false),
                              hypergraph_signature(2, true),
                              Signature({{"R", 2, SymbolKind::plain}})};
    std::uint64_t failures = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Signature& sig = sigs[trial % 4];
        const int nb = 2 + static_cast<int>(rng() % 5);
        const int na = 1 + static_cast<int>(rng() % std::min(nb, 4));
        Structure a = random_structure(sig, na);
        Structure b = random_structure(sig, nb);
        const auto embs = enumerate_embeddings(a, b).size();
        const auto copies = enumerate_copies(a, b).members.size();
        const auto auts = automorphisms(a).size();
        if (embs != copies * auts) ++failures;
    }
    out.require(failures == 0, std::to_string(failures) + " counting identity failures");
    out.detail = "500 seeded pairs, |Emb(A,B)| = |copies| * |Aut(A)| throughout";
    ordered_json doc;
    doc["pairs"] = 500;
    doc["failures"] = failures;
    ctx.write("criterion_11_counting.json", doc);
    return out;
}

struct CriterionSpec {
    int id;
    int tier;
    const char* name;
    Outcome (*run)(SuiteContext&);
};

const CriterionSpec kCriteria[] = {
    {1, 1, "parity condition characterizes kay images", criterion_parity},
    {2, 2, "reconstruction round-trip over all edge sets and stars", criterion_roundtrip},
    {3, 1, "expansion counts over ordered Kay pools", criterion_expansions},
    {4, 1, "complement parity law", criterion_complement},
    {5, 1, "star-extension law", criterion_star},
    {6, 1, "arrow engine calibration", criterion_arrows},
    {7, 2, "expansion colouring admits no monochromatic pattern copy", criterion_non_ramsey},
    {8, 1, "positive arrow witnesses within six vertices", criterion_erp_probe},
    {9, 1, "orderability verdicts", criterion_orderability},
    {10, 1, "orderable pools contain only rigid members", criterion_orderable_rigid},
    {11, 1, "embedding/copy/automorphism counting identity", criterion_counting},
};

}  // namespace

SuiteReport run_verify_suite(const SuiteOptions& opts) {
    SuiteReport report;
    SuiteContext ctx{opts, {}};
    std::filesystem::create_directories(opts.out_dir);

    for (const CriterionSpec& spec : kCriteria) {
        if (opts.tier != 0 && spec.tier != opts.tier) continue;
        CriterionResult r;
        r.id = spec.id;
        r.name = spec.name;
        const auto start = std::chrono::steady_clock::now();
        try {
            Outcome o = spec.run(ctx);
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
        report.all_pass = report.all_pass && r.pass;
        report.results.push_back(std::move(r));
    }

    ManifestData m;
    m.command = "verify-suite --tier " + std::to_string(opts.tier);
    m.node_budget = default_node_budget();
    m.workers = opts.workers;
    m.deterministic = opts.deterministic;
    m.verdicts = ordered_json::object();
    for (const CriterionResult& r : report.results) {
        ordered_json jv;
        jv["name"] = r.name;
        jv["pass"] = r.pass;
        jv["detail"] = r.detail;
        m.verdicts[std::to_string(r.id)] = std::move(jv);
    }
    std::sort(ctx.certificates.begin(), ctx.certificates.end());
    std::sort(ctx.artifacts.begin(), ctx.artifacts.end());
    m.certificates = ctx.certificates;
    m.artifacts = ctx.artifacts;
    report.manifest_path = opts.out_dir / "manifest.json";
    write_manifest(m, report.manifest_path);
    return report;
}

CriterionResult run_determinism_check(const SuiteOptions& base, SuiteReport* first_run) {
    CriterionResult r;
    r.id = 12;
    r.name = "deterministic replay is byte-identical";
    const auto start = std::chrono::steady_clock::now();

    SuiteOptions a = base, b = base;
    a.deterministic = b.deterministic = true;
    a.out_dir = base.out_dir / "replay-1";
    b.out_dir = base.out_dir / "replay-2";
    SuiteReport ra = run_verify_suite(a);
    SuiteReport rb = run_verify_suite(b);
    if (first_run) *first_run = ra;

    auto listing = [](const std::filesystem::path& root) {
        std::vector<std::filesystem::path> rel;
        for (const auto& e : std::filesystem::recursive_directory_iterator(root))
            if (e.is_regular_file()) rel.push_back(std::filesystem::relative(e.path(), root));
        std::sort(rel.begin(), rel.end());
        return rel;
    };
    auto la = listing(a.out_dir), lb = listing(b.out_dir);
    r.pass = ra.all_pass == rb.all_pass && la == lb;
    if (!r.pass) {
        r.detail = "file listings differ between replays";
    } else {
        std::size_t compared = 0;
        for (const auto& f : la) {
            if (read_text_file(a.out_dir / f) != read_text_file(b.out_dir / f)) {
                r.pass = false;
                r.detail = "byte mismatch in " + f.string();
                break;
            }
            ++compared;
        }
        if (r.pass)
            r.detail = std::to_string(compared) + " artifacts byte-identical across two runs";
    }
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
                   .count();
    return r;
}

}  // namespace kaylab
