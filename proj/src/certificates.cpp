#include "kaylab/certificates.hpp"

#include "kaylab/io.hpp"

namespace kaylab {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json arrow_certificate_to_json(const Structure& ambient, const Structure& middle,
                                       const std::vector<ColourFamily>& families,
                                       const ArrowCertificate& cert) {
    ordered_json j;
    switch (cert.verdict) {
        case ArrowVerdict::fails: j["type"] = "arrow-refutation"; break;
        case ArrowVerdict::holds: j["type"] = "arrow-holds"; break;
        case ArrowVerdict::budget_exhausted: j["type"] = "arrow-budget"; break;
    }
    j["mode"] = to_string(cert.mode);
    j["ambient"] = structure_to_json(ambient);
    j["middle"] = structure_to_json(middle);
    j["families"] = ordered_json::array();
    for (std::size_t f = 0; f < families.size(); ++f) {
        ordered_json jf;
        jf["pattern"] = structure_to_json(families[f].pattern);
        jf["colours"] = families[f].colours;
        jf["degree"] = families[f].degree;
        jf["objects"] = cert.objects.at(f);
        if (cert.verdict == ArrowVerdict::fails) jf["colouring"] = cert.colouring.at(f);
        j["families"].push_back(std::move(jf));
    }
    j["vacuous"] = cert.vacuous;
    j["note"] = cert.note;
    j["nodes"] = cert.nodes;
    if (cert.good_copy) j["good_copy"] = *cert.good_copy;
    return j;
}

ordered_json non_ramsey_certificate_to_json(
    const Structure& member, const Structure& pattern,
    const std::vector<std::pair<std::vector<int>, int>>& colouring) {
    ordered_json j;
    j["type"] = "no-mono-copy";
    j["ambient"] = structure_to_json(member);
    j["pattern"] = structure_to_json(pattern);
    ordered_json cols = ordered_json::array();
    for (const auto& [subset, colour] : colouring) {
        ordered_json e;
        e["subset"] = subset;
        e["colour"] = colour;
        cols.push_back(std::move(e));
    }
    j["colouring"] = std::move(cols);
    return j;
}

CertCheckOutcome verify_certificate_json(const json& doc, std::uint64_t enumeration_cap) {
    CertCheckOutcome out;
    if (!doc.contains("type")) {
        out.detail = "missing certificate type";
        return out;
    }
    const std::string type = doc.at("type").get<std::string>();

    if (type == "no-mono-copy") {
        Structure ambient = structure_from_json(doc.at("ambient"));
        Structure pattern = structure_from_json(doc.at("pattern"));
        std::vector<std::pair<std::vector<int>, int>> colouring;
        for (const auto& e : doc.at("colouring"))
            colouring.push_back({e.at("subset").get<std::vector<int>>(), e.at("colour").get<int>()});
        auto v = certcheck::verify_no_mono_copy(ambient, pattern, colouring);
        out.valid = v.valid;
        out.detail = v.valid ? "verified on " + std::to_string(v.blocks_checked) + " copies"
                             : v.detail;
        return out;
    }

    if (type == "arrow-refutation" || type == "arrow-holds" || type == "arrow-budget") {
        Structure ambient = structure_from_json(doc.at("ambient"));
        Structure middle = structure_from_json(doc.at("middle"));
        const bool copies_mode = doc.at("mode").get<std::string>() == "copies";
        std::vector<certcheck::FamilyData> fams;
        for (const auto& jf : doc.at("families")) {
            certcheck::FamilyData fd;
            fd.pattern = structure_from_json(jf.at("pattern"));
            fd.colours = jf.at("colours").get<int>();
            fd.degree = jf.at("degree").get<int>();
            fd.objects = jf.at("objects").get<std::vector<std::vector<int>>>();
            if (jf.contains("colouring")) fd.colouring = jf.at("colouring").get<std::vector<int>>();
            fams.push_back(std::move(fd));
        }
        if (type == "arrow-refutation") {
            auto v = certcheck::verify_refutation(ambient, middle, fams, copies_mode);
            out.valid = v.valid;
            out.detail = v.valid ? "refutation verified on " + std::to_string(v.blocks_checked) +
                                       " copies"
                                 : v.detail;
            return out;
        }
        if (type == "arrow-budget") {
            out.valid = true;
            out.detail = "budget verdicts carry no claim to check";
            return out;
        }
        try {
            out.valid = certcheck::arrow_holds_by_enumeration(ambient, middle, fams, copies_mode,
                                                              enumeration_cap);
            out.detail = out.valid ? "holds re-verified by full enumeration"
                                   : "full enumeration found a refuting colouring";
        } catch (const BudgetExceeded& e) {
            out.recheckable = false;
            out.detail = std::string("not re-checkable: ") + e.what();
        }
        return out;
    }

    out.detail = "unknown certificate type: " + type;
    return out;
}

ordered_json manifest_to_json(const ManifestData& m) {
    ordered_json j;
    j["type"] = "manifest";
    j["command"] = m.command;
    ordered_json inputs = ordered_json::object();
    for (const auto& [path, hash] : m.input_hashes) inputs[path] = hash;
    j["inputs"] = std::move(inputs);
    j["node_budget"] = m.node_budget;
    j["workers"] = m.workers;
    j["deterministic"] = m.deterministic;
    j["seed"] = m.seed;
    j["verdicts"] = m.verdicts;
    j["certificates"] = m.certificates;
    j["artifacts"] = m.artifacts;
    j["wall_clock_ms"] = m.deterministic ? 0 : m.wall_clock_ms;
    return j;
}

void write_manifest(const ManifestData& m, const std::filesystem::path& file) {
    write_text_file(file, manifest_to_json(m).dump(2) + "\n");
}

}  // namespace kaylab
