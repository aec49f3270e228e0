// kaylab: a workbench for parity-defined hypergraph expansions, arrow
// searches with machine-checkable certificates, amalgamation-class checks
// and definable-order searches on small finite structures.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "kaylab/certcheck.hpp"
#include "kaylab/certificates.hpp"
#include "kaylab/class_pool.hpp"
#include "kaylab/io.hpp"
#include "kaylab/kay.hpp"
#include "kaylab/morphisms.hpp"
#include "kaylab/order_search.hpp"
#include "kaylab/ramsey.hpp"
#include "kaylab/structure.hpp"
#include "kaylab/suite.hpp"

namespace fs = std::filesystem;
using namespace kaylab;
using nlohmann::ordered_json;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

struct Common {
    std::string out;
    std::string format = "text";
    bool deterministic = false;
    int workers = 1;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_search_flags = false) {
    cmd->add_option("--out", c.out, "directory for artifacts and the manifest");
    cmd->add_option("--format", c.format, "text|machine")->check(CLI::IsMember({"text", "machine"}));
    if (with_search_flags) {
        cmd->add_flag("--deterministic", c.deterministic, "single-worker canonical replay");
        cmd->add_option("--workers", c.workers, "parallel search workers");
        cmd->add_option("--budget", c.budget, "search node budget (default KAYLAB_BUDGET_DEFAULT)");
    }
    cmd->add_option("--seed", c.seed, "seed for random pools");
}

std::string g_command_line;

struct RunArtifacts {
    std::map<std::string, std::string> inputs;
    ordered_json verdicts = ordered_json::object();
    std::vector<std::string> certificates;
    std::vector<std::string> artifacts;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Structure load(const fs::path& path) {
        Structure s = load_structure(path);
        inputs[path.string()] = fnv1a_hex(read_text_file(path));
        return s;
    }
    void emit(const Common& c, const std::string& rel, const std::string& content,
              bool certificate = false) {
        if (c.out.empty()) return;
        write_text_file(fs::path(c.out) / rel, content);
        (certificate ? certificates : artifacts).push_back(rel);
    }
    void finish(const Common& c) {
        if (c.out.empty()) return;
        ManifestData m;
        m.command = g_command_line;
        m.input_hashes = inputs;
        m.node_budget = c.budget ? c.budget : default_node_budget();
        m.workers = c.workers;
        m.deterministic = c.deterministic;
        m.seed = c.seed;
        m.verdicts = verdicts;
        std::sort(certificates.begin(), certificates.end());
        std::sort(artifacts.begin(), artifacts.end());
        m.certificates = certificates;
        m.artifacts = artifacts;
        m.wall_clock_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        write_manifest(m, fs::path(c.out) / "manifest.json");
    }
};

void print_structure(const Common& c, const Structure& s, const std::string& label) {
    if (c.format == "machine") {
        std::cout << to_compact_text(s) << "\n";
        return;
    }
    std::cout << label << ": " << s.size() << " vertices";
    for (int i = 0; i < s.signature().symbol_count(); ++i) {
        if (s.signature().kind(i) == SymbolKind::order) continue;
        std::cout << ", |" << s.signature().symbols()[i].name << "| = " << s.tuples(i).size();
    }
    std::cout << "\n";
}

// expanded-structure input: accepts a (V;R,S,<=) document or a bare
// hypergraph, which is completed by its own kay relation
ExpandedStructure load_expanded(RunArtifacts& run, const fs::path& path) {
    Structure s = run.load(path);
    if (s.signature().index_of("R") >= 0 && s.signature().index_of("S") >= 0)
        return ExpandedStructure::wrap(s);
    int hyper = -1;
    for (int i = 0; i < s.signature().symbol_count(); ++i)
        if (s.signature().kind(i) == SymbolKind::hyperedge) hyper = i;
    if (hyper < 0) throw std::invalid_argument("expected a hyperedge relation in " + path.string());
    return ExpandedStructure::from_edges(s.size(), s.signature().arity(hyper), s.tuples(hyper),
                                         s.ordered());
}

ClassPool pool_for(const std::string& family, int k, int n, std::uint64_t seed) {
    if (family == "cameron") return enumerate_cameron(n);
    if (family == "random-hereditary") return random_hereditary_pool(seed);
    return enumerate_class(family_from_string(family), k, n);
}

std::vector<int> parse_map(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

ArrowOptions arrow_options(const Common& c) {
    ArrowOptions o;
    o.node_budget = c.budget;
    o.workers = c.workers;
    o.deterministic = c.deterministic;
    return o;
}

int arrow_exit(ArrowVerdict v) {
    switch (v) {
        case ArrowVerdict::holds: return kExitHolds;
        case ArrowVerdict::fails: return kExitFails;
        case ArrowVerdict::budget_exhausted: return kExitBudget;
    }
    return kExitInput;
}

int run_arrow(RunArtifacts& run, const Common& common, const fs::path& c_path,
              const fs::path& b_path, const std::vector<ColourFamily>& fams,
              const std::vector<fs::path>& fam_paths, const std::string& mode) {
    Structure c = run.load(c_path);
    Structure b = run.load(b_path);
    (void)fam_paths;
    auto cert = joint_oscillation(c, b, fams, colour_mode_from_string(mode), arrow_options(common));
    ordered_json doc = arrow_certificate_to_json(c, b, fams, cert);
    if (common.format == "machine") {
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << "verdict: " << to_string(cert.verdict) << " (" << cert.nodes << " nodes";
        if (cert.vacuous) std::cout << "; vacuous: " << cert.note;
        std::cout << ")\n";
        if (cert.verdict == ArrowVerdict::fails)
            std::cout << "bad colouring certificate over " << cert.objects[0].size()
                      << " objects\n";
    }
    run.emit(common, "arrow.json", doc.dump(2) + "\n", /*certificate=*/true);
    run.verdicts["arrow"] = to_string(cert.verdict);
    run.finish(common);
    return arrow_exit(cert.verdict);
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 0; i < argc; ++i) {
        if (i) g_command_line += ' ';
        g_command_line += argv[i];
    }

    CLI::App app{"kaylab: parity hypergraph expansions, arrow certificates, order search"};
    app.require_subcommand(1);

    try {
        // ---- kay ----
        auto* kay_cmd = app.add_subcommand("kay", "apply the parity extension to a hypergraph");
        static std::string kay_in;
        static Common kay_common;
        kay_cmd->add_option("--in", kay_in, "structure file")->required();
        add_common(kay_cmd, kay_common);
        kay_cmd->callback([&] {
            RunArtifacts run;
            Structure h = run.load(kay_in);
            Structure s = kay_graph(h);
            print_structure(kay_common, s, "kay image");
            run.emit(kay_common, "kay.struct", to_text(s));
            run.verdicts["edges"] = s.tuples(0).size();
            run.finish(kay_common);
        });

        // ---- check-parity ----
        auto* parity_cmd =
            app.add_subcommand("check-parity", "test the extension-parity membership condition");
        static std::string parity_in;
        static Common parity_common;
        parity_cmd->add_option("--in", parity_in, "structure file")->required();
        add_common(parity_cmd, parity_common);
        static int parity_exit = 0;
        parity_cmd->callback([&] {
            RunArtifacts run;
            Structure s = run.load(parity_in);
            auto pc = check_parity(s);
            ordered_json doc;
            doc["type"] = "parity-check";
            doc["ok"] = pc.ok;
            if (pc.violation) doc["violation"] = *pc.violation;
            if (parity_common.format == "machine") std::cout << doc.dump() << "\n";
            else if (pc.ok) std::cout << "parity condition holds\n";
            else {
                std::cout << "parity condition fails on {";
                for (std::size_t i = 0; i < pc.violation->size(); ++i)
                    std::cout << (i ? "," : "") << (*pc.violation)[i];
                std::cout << "}\n";
            }
            run.emit(parity_common, "parity.json", doc.dump(2) + "\n");
            run.verdicts["parity"] = pc.ok;
            run.finish(parity_common);
            parity_exit = pc.ok ? kExitHolds : kExitFails;
        });

        // ---- reconstruct ----
        auto* rec_cmd = app.add_subcommand("reconstruct", "invert the parity extension from a star");
        static std::string rec_in;
        static int rec_star = 0;
        static Common rec_common;
        rec_cmd->add_option("--in", rec_in, "structure file")->required();
        rec_cmd->add_option("--star", rec_star, "star vertex (default 0)");
        add_common(rec_cmd, rec_common);
        rec_cmd->callback([&] {
            RunArtifacts run;
            Structure s = run.load(rec_in);
            Structure r = reconstruct_base(s, rec_star);
            print_structure(rec_common, r, "reconstructed base");
            run.emit(rec_common, "base.struct", to_text(r));
            run.verdicts["edges"] = r.tuples(0).size();
            run.finish(rec_common);
        });

        // ---- star-extend ----
        auto* star_cmd = app.add_subcommand("star-extend", "adjoin a maximal cone vertex");
        static std::string star_in;
        static Common star_common;
        star_cmd->add_option("--in", star_in, "hypergraph or expansion file")->required();
        add_common(star_cmd, star_common);
        star_cmd->callback([&] {
            RunArtifacts run;
            ExpandedStructure d = load_expanded(run, star_in);
            ExpandedStructure ds = star_extension(d);
            print_structure(star_common, ds.structure(), "star extension");
            run.emit(star_common, "extension.struct", to_text(ds.structure()));
            run.finish(star_common);
        });

        // ---- complement ----
        auto* comp_cmd = app.add_subcommand("complement", "complement the edge relation");
        static std::string comp_in;
        static Common comp_common;
        comp_cmd->add_option("--in", comp_in, "hypergraph or expansion file")->required();
        add_common(comp_cmd, comp_common);
        comp_cmd->callback([&] {
            RunArtifacts run;
            ExpandedStructure a = load_expanded(run, comp_in);
            ExpandedStructure b = complement_expansion(a);
            print_structure(comp_common, b.structure(), "complement");
            run.emit(comp_common, "complement.struct", to_text(b.structure()));
            run.finish(comp_common);
        });

        // ---- enumerate ----
        auto* enum_cmd = app.add_subcommand("enumerate", "list class members up to isomorphism");
        static std::string enum_family;
        static int enum_k = 2, enum_n = 4, enum_slack = 0;
        static std::vector<std::string> enum_checks;
        static Common enum_common;
        enum_cmd->add_option("--family", enum_family, "family name")->required();
        enum_cmd->add_option("--k", enum_k, "hyperedge arity");
        enum_cmd->add_option("--n", enum_n, "maximum size");
        enum_cmd->add_option("--check", enum_checks, "class properties to verify: hp jep ap");
        enum_cmd->add_option("--slack", enum_slack, "witness-size slack for jep/ap");
        add_common(enum_cmd, enum_common);
        enum_cmd->callback([&] {
            RunArtifacts run;
            ClassPool pool = pool_for(enum_family, enum_k, enum_n, enum_common.seed);
            ordered_json counts = ordered_json::array();
            for (const PoolSlice& slice : pool.slices) {
                counts.push_back(slice.count());
                if (enum_common.format == "text")
                    std::cout << "size " << slice.size << ": " << slice.count() << " members\n";
                if (!enum_common.out.empty() && slice.lazy() && enum_common.format == "text")
                    std::cout << "  (slice kept mask-backed; members not exported as files)\n";
                if (!enum_common.out.empty() && !slice.lazy()) {
                    for (std::uint64_t i = 0; i < slice.count(); ++i) {
                        char name[64];
                        std::snprintf(name, sizeof name, "size_%02d_index_%04llu.struct",
                                      slice.size, static_cast<unsigned long long>(i));
                        run.emit(enum_common, name, to_text(slice.materialize(i)));
                    }
                }
            }
            run.verdicts["family"] = enum_family;
            run.verdicts["counts"] = counts;
            for (const std::string& check : enum_checks) {
                ClassProperty p = check == "hp" ? ClassProperty::hp
                                : check == "jep" ? ClassProperty::jep
                                                 : ClassProperty::ap;
                auto rep = check_property(pool, p, enum_slack);
                ordered_json jr;
                jr["holds"] = rep.holds;
                jr["checked"] = rep.instances_checked;
                jr["skipped"] = rep.instances_skipped;
                jr["bound"] = rep.verified_up_to + rep.slack;
                if (!rep.holds) jr["counterexample"] = rep.counterexample;
                run.verdicts[check] = jr;
                if (enum_common.format == "text")
                    std::cout << check << ": " << (rep.holds ? "verified" : "FAILED")
                              << " up to size " << rep.verified_up_to << " with slack "
                              << rep.slack << " (" << rep.instances_checked << " instances, "
                              << rep.instances_skipped << " beyond the bound)\n";
            }
            if (enum_common.format == "machine") std::cout << run.verdicts.dump() << "\n";
            run.finish(enum_common);
        });

        // ---- amalgam ----
        auto* am_cmd = app.add_subcommand("amalgam", "amalgamate two structures over a base");
        static std::string am_base, am_left, am_right, am_left_map, am_right_map;
        static Common am_common;
        am_cmd->add_option("--base", am_base, "base structure file")->required();
        am_cmd->add_option("--left", am_left, "left structure file")->required();
        am_cmd->add_option("--right", am_right, "right structure file")->required();
        am_cmd->add_option("--left-map", am_left_map, "embedding of the base, e.g. 0,2");
        am_cmd->add_option("--right-map", am_right_map, "embedding of the base");
        add_common(am_cmd, am_common);
        am_cmd->callback([&] {
            RunArtifacts run;
            Structure a = run.load(am_base), b = run.load(am_left), c = run.load(am_right);
            VertexMap e, f;
            if (!am_left_map.empty()) e = parse_map(am_left_map);
            else {
                auto es = enumerate_embeddings(a, b);
                if (es.empty()) throw std::invalid_argument("base does not embed into left");
                e = es.front();
            }
            if (!am_right_map.empty()) f = parse_map(am_right_map);
            else {
                auto fsv = enumerate_embeddings(a, c);
                if (fsv.empty()) throw std::invalid_argument("base does not embed into right");
                f = fsv.front();
            }
            Amalgam am = a.ordered() ? order_amalgam(a, b, c, e, f) : free_amalgam(a, b, c, e, f);
            print_structure(am_common, am.d, "amalgam");
            run.emit(am_common, "amalgam.struct", to_text(am.d));
            ordered_json jm;
            jm["g"] = am.g;
            jm["h"] = am.h;
            run.verdicts["maps"] = jm;
            run.finish(am_common);
        });

        // ---- arrow ----
        auto* arrow_cmd = app.add_subcommand("arrow", "decide an arrow instance by refutation search");
        static std::string ar_c, ar_b, ar_a, ar_mode = "copies";
        static int ar_colors = 2, ar_degree = 1;
        static Common ar_common;
        arrow_cmd->add_option("--C", ar_c, "ambient structure file")->required();
        arrow_cmd->add_option("--B", ar_b, "middle structure file")->required();
        arrow_cmd->add_option("--A", ar_a, "coloured pattern file")->required();
        arrow_cmd->add_option("--colors", ar_colors, "palette size");
        arrow_cmd->add_option("--degree", ar_degree, "allowed colours per good copy");
        arrow_cmd->add_option("--mode", ar_mode, "copies|embeddings")
            ->check(CLI::IsMember({"copies", "embeddings"}));
        add_common(arrow_cmd, ar_common, true);
        static int ar_exit = 0;
        arrow_cmd->callback([&] {
            RunArtifacts run;
            Structure a = run.load(ar_a);
            ar_exit = run_arrow(run, ar_common, ar_c, ar_b, {{a, ar_colors, ar_degree}}, {ar_a},
                                ar_mode);
        });

        // ---- joint-arrow ----
        auto* joint_cmd =
            app.add_subcommand("joint-arrow", "simultaneous colourings, one family per --A");
        static std::string ja_c, ja_b, ja_mode = "copies";
        static int ja_colors = 2;
        static std::vector<std::string> ja_patterns;
        static Common ja_common;
        joint_cmd->add_option("--C", ja_c, "ambient structure file")->required();
        joint_cmd->add_option("--B", ja_b, "middle structure file")->required();
        joint_cmd->add_option("--A", ja_patterns, "pattern as file:degree[:colors], repeatable")
            ->required();
        joint_cmd->add_option("--colors", ja_colors, "default palette size");
        joint_cmd->add_option("--mode", ja_mode, "copies|embeddings")
            ->check(CLI::IsMember({"copies", "embeddings"}));
        add_common(joint_cmd, ja_common, true);
        static int ja_exit = 0;
        joint_cmd->callback([&] {
            RunArtifacts run;
            std::vector<ColourFamily> fams;
            std::vector<fs::path> paths;
            for (const std::string& spec : ja_patterns) {
                std::vector<std::string> parts;
                std::stringstream ss(spec);
                std::string item;
                while (std::getline(ss, item, ':')) parts.push_back(item);
                if (parts.empty()) throw std::invalid_argument("empty --A spec");
                ColourFamily fam;
                fam.pattern = run.load(parts[0]);
                fam.degree = parts.size() > 1 ? std::stoi(parts[1]) : 1;
                fam.colours = parts.size() > 2 ? std::stoi(parts[2]) : ja_colors;
                fams.push_back(std::move(fam));
                paths.push_back(parts[0]);
            }
            ja_exit = run_arrow(run, ja_common, ja_c, ja_b, fams, paths, ja_mode);
        });

        // ---- expansions ----
        auto* exp_cmd = app.add_subcommand("expansions", "count edge sets mapping onto a Kay image");
        static std::string exp_base;
        static int exp_k = 3;
        static Common exp_common;
        exp_cmd->add_option("--base", exp_base, "Kay-image structure file")->required();
        exp_cmd->add_option("--k", exp_k, "edge arity")->required();
        add_common(exp_cmd, exp_common);
        exp_cmd->callback([&] {
            RunArtifacts run;
            Structure base = run.load(exp_base);
            auto ec = count_expansions(base, exp_k);
            if (exp_common.format == "machine") {
                ordered_json doc;
                doc["count"] = ec.count;
                std::cout << doc.dump() << "\n";
            } else {
                std::cout << "expansions: " << ec.count << "\n";
            }
            for (std::size_t i = 0; i < ec.witnesses.size() && i < 64; ++i) {
                char name[48];
                std::snprintf(name, sizeof name, "expansion_%03zu.struct", i);
                run.emit(exp_common, name, to_text(ec.witnesses[i]));
            }
            run.verdicts["count"] = ec.count;
            run.finish(exp_common);
        });

        // ---- non-ramsey ----
        auto* nr_cmd = app.add_subcommand(
            "non-ramsey", "sweep the ordered Kay pool for monochromatic pattern copies");
        static int nr_k = 3, nr_max_n = 6, nr_star = 0;
        static Common nr_common;
        nr_cmd->add_option("--k", nr_k, "edge arity (>= 3; 2 is exploratory)");
        nr_cmd->add_option("--max-n", nr_max_n, "largest member size");
        nr_cmd->add_option("--star", nr_star, "reconstruction star");
        add_common(nr_cmd, nr_common);
        static int nr_exit = 0;
        nr_cmd->callback([&] {
            RunArtifacts run;
            ClassPool pool = enumerate_class(Family::ordered_kay_graphs, nr_k, nr_max_n);
            NonRamseyOptions nopts;
            nopts.star = nr_star;
            auto rep = non_ramsey_witness(nr_k, pool, nopts);
            if (nr_common.format == "text") {
                if (rep.exploratory) std::cout << "note: k=2 runs are exploratory\n";
                std::cout << rep.members_checked << " members, " << rep.copies_checked
                          << " pattern copies, " << rep.mono_copies << " monochromatic\n";
            }
            ordered_json doc;
            doc["members_checked"] = rep.members_checked;
            doc["copies_checked"] = rep.copies_checked;
            doc["mono_copies"] = rep.mono_copies;
            doc["exploratory"] = rep.exploratory;
            if (nr_common.format == "machine") std::cout << doc.dump() << "\n";
            run.emit(nr_common, "non_ramsey_summary.json", doc.dump(2) + "\n");
            run.verdicts["mono_copies"] = rep.mono_copies;
            run.finish(nr_common);
            nr_exit = rep.mono_copies == 0 ? kExitHolds : kExitFails;
        });

        // ---- orderability ----
        auto* ord_cmd = app.add_subcommand("orderability", "search for a definable linear order");
        static std::string ord_family;
        static int ord_k = 2, ord_n = 3;
        static Common ord_common;
        ord_cmd->add_option("--family", ord_family, "family name")->required();
        ord_cmd->add_option("--k", ord_k, "hyperedge arity");
        ord_cmd->add_option("--n", ord_n, "maximum size");
        add_common(ord_cmd, ord_common);
        static int ord_exit = 0;
        ord_cmd->callback([&] {
            RunArtifacts run;
            ClassPool pool = pool_for(ord_family, ord_k, ord_n, ord_common.seed);
            auto res = orderability_search(pool);
            ordered_json doc;
            doc["status"] = to_string(res.status);
            doc["pool_max_n"] = res.pool_max_n;
            doc["candidates_tried"] = res.candidates_tried;
            if (res.phi) doc["chosen_types"] = res.phi->chosen;
            if (res.obstruction_type) doc["self_converse_type"] = res.obstruction_type->id;
            if (ord_common.format == "machine") std::cout << doc.dump() << "\n";
            else {
                std::cout << "status (relative to pool <= " << res.pool_max_n
                          << "): " << to_string(res.status) << "\n";
                if (res.phi)
                    for (const auto& id : res.phi->chosen) std::cout << "  type " << id << "\n";
            }
            run.emit(ord_common, "orderability.json", doc.dump(2) + "\n");
            run.verdicts["status"] = to_string(res.status);
            run.finish(ord_common);
            ord_exit = res.status == OrderabilityStatus::ordered ? kExitHolds : kExitFails;
        });

        // ---- rigidity ----
        auto* rig_cmd = app.add_subcommand("rigidity", "count automorphisms");
        static std::string rig_file;
        static Common rig_common;
        rig_cmd->add_option("--file", rig_file, "structure file")->required();
        add_common(rig_cmd, rig_common);
        static int rig_exit = 0;
        rig_cmd->callback([&] {
            RunArtifacts run;
            Structure s = run.load(rig_file);
            auto auts = automorphisms(s);
            if (rig_common.format == "machine") {
                ordered_json doc;
                doc["automorphisms"] = auts.size();
                doc["rigid"] = auts.size() == 1;
                std::cout << doc.dump() << "\n";
            } else {
                std::cout << "automorphisms: " << auts.size()
                          << (auts.size() == 1 ? " (rigid)" : "") << "\n";
            }
            run.verdicts["automorphisms"] = auts.size();
            run.finish(rig_common);
            rig_exit = auts.size() == 1 ? kExitHolds : kExitFails;
        });

        // ---- cameron ----
        auto* cam_cmd =
            app.add_subcommand("cameron", "attach a leaf C-relation from a binary tree");
        static std::string cam_tournament, cam_tree;
        static Common cam_common;
        cam_cmd->add_option("--tournament-file", cam_tournament, "tournament structure file")
            ->required();
        cam_cmd->add_option("--tree", cam_tree, "nested leaf list, e.g. ((0,1),(2,3))")->required();
        add_common(cam_cmd, cam_common);
        cam_cmd->callback([&] {
            RunArtifacts run;
            Structure t = run.load(cam_tournament);
            Structure s = cameron_structure(t, cam_tree);
            print_structure(cam_common, s, "tournament with C-relation");
            run.emit(cam_common, "cameron.struct", to_text(s));
            run.finish(cam_common);
        });

        // ---- extract-order ----
        auto* ext_cmd = app.add_subcommand(
            "extract-order", "derive an order definition from direction colourings");
        static std::string ext_family;
        static int ext_k = 3, ext_n = 4;
        static Common ext_common;
        ext_cmd->add_option("--family", ext_family, "family name")->required();
        ext_cmd->add_option("--k", ext_k, "hyperedge arity");
        ext_cmd->add_option("--n", ext_n, "maximum size");
        add_common(ext_cmd, ext_common, true);
        static int ext_exit = 0;
        ext_cmd->callback([&] {
            RunArtifacts run;
            ClassPool pool = pool_for(ext_family, ext_k, ext_n, ext_common.seed);
            ExtractionOptions xopts;
            if (ext_common.budget) xopts.expansions_budget = ext_common.budget;
            auto res = two_erp_order_extraction(pool, xopts);
            ordered_json doc;
            doc["status"] = to_string(res.status);
            doc["detail"] = res.detail;
            doc["pool_max_n"] = res.pool_max_n;
            doc["jep_checked"] = res.jep_checked;
            if (res.jep_checked) doc["jep_holds"] = res.jep_holds;
            if (res.phi) doc["chosen_types"] = res.phi->chosen;
            if (ext_common.format == "machine") std::cout << doc.dump() << "\n";
            else {
                std::cout << "status (relative to pool <= " << res.pool_max_n
                          << "): " << to_string(res.status) << "\n";
                if (!res.detail.empty()) std::cout << "  " << res.detail << "\n";
                if (res.jep_checked && !res.jep_holds)
                    std::cout << "  note: bounded joint-embedding check failed for this pool\n";
            }
            run.emit(ext_common, "extraction.json", doc.dump(2) + "\n");
            run.verdicts["status"] = to_string(res.status);
            run.finish(ext_common);
            ext_exit = res.status == ExtractionStatus::ordered       ? kExitHolds
                       : res.status == ExtractionStatus::budget_exhausted ? kExitBudget
                                                                          : kExitFails;
        });

        // ---- verify-suite ----
        auto* suite_cmd = app.add_subcommand("verify-suite", "run the acceptance battery");
        static std::string suite_tier = "all";
        static Common suite_common;
        suite_cmd->add_option("--tier", suite_tier, "1|2|all")
            ->check(CLI::IsMember({"1", "2", "all"}));
        add_common(suite_cmd, suite_common, true);
        static int suite_exit = 0;
        suite_cmd->callback([&] {
            SuiteOptions sopts;
            sopts.tier = suite_tier == "all" ? 0 : std::stoi(suite_tier);
            sopts.out_dir = suite_common.out.empty() ? fs::path("verify-out")
                                                     : fs::path(suite_common.out);
            sopts.deterministic = suite_common.deterministic;
            sopts.workers = suite_common.workers;
            SuiteReport rep = run_verify_suite(sopts);
            for (const auto& r : rep.results)
                std::printf("[%s] criterion %2d: %s (%s; %lld ms)\n", r.pass ? "PASS" : "FAIL",
                            r.id, r.name.c_str(), r.detail.c_str(),
                            static_cast<long long>(r.millis));
            std::printf("manifest: %s\n", rep.manifest_path.string().c_str());
            suite_exit = rep.all_pass ? kExitHolds : kExitFails;
        });

        // ---- verify-cert ----
        auto* vc_cmd = app.add_subcommand("verify-cert", "re-check an emitted certificate");
        static std::string vc_file;
        static Common vc_common;
        vc_cmd->add_option("--cert", vc_file, "certificate file")->required();
        add_common(vc_cmd, vc_common);
        static int vc_exit = 0;
        vc_cmd->callback([&] {
            auto doc = nlohmann::json::parse(read_text_file(vc_file));
            auto outcome = verify_certificate_json(doc);
            std::cout << (outcome.valid ? "valid" : outcome.recheckable ? "INVALID" : "unverifiable")
                      << ": " << outcome.detail << "\n";
            vc_exit = outcome.valid ? kExitHolds : outcome.recheckable ? kExitFails : kExitBudget;
        });

        CLI11_PARSE(app, argc, argv);

        if (*parity_cmd) return parity_exit;
        if (*arrow_cmd) return ar_exit;
        if (*joint_cmd) return ja_exit;
        if (*nr_cmd) return nr_exit;
        if (*ord_cmd) return ord_exit;
        if (*rig_cmd) return rig_exit;
        if (*ext_cmd) return ext_exit;
        if (*suite_cmd) return suite_exit;
        if (*vc_cmd) return vc_exit;
        return kExitHolds;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what();
        if (!e.estimate.empty()) std::cerr << " (" << e.estimate << ")";
        std::cerr << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
