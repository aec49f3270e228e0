#pragma once

// Plain-text certificate documents and experiment manifests. Certificates
// embed full structure documents plus explicit object/colour maps so that
// verify-cert can re-check them with nothing but the core machinery.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "kaylab/certcheck.hpp"
#include "kaylab/ramsey.hpp"
#include "kaylab/vendor_json.hpp"

namespace kaylab {

nlohmann::ordered_json arrow_certificate_to_json(const Structure& ambient, const Structure& middle,
                                                 const std::vector<ColourFamily>& families,
                                                 const ArrowCertificate& cert);

nlohmann::ordered_json non_ramsey_certificate_to_json(
    const Structure& member, const Structure& pattern,
    const std::vector<std::pair<std::vector<int>, int>>& colouring);

struct CertCheckOutcome {
    bool valid = false;
    bool recheckable = true;  // holds verdicts above the enumeration cap are not
    std::string detail;
};

// Dispatches on the document's "type"; refutations and no-mono-copy claims
// are fully re-verified, holds verdicts by unpruned enumeration when small
// enough.
CertCheckOutcome verify_certificate_json(const nlohmann::json& doc,
                                         std::uint64_t enumeration_cap = 1ull << 20);

struct ManifestData {
    std::string command;
    std::map<std::string, std::string> input_hashes;  // path -> fnv1a
    std::uint64_t node_budget = 0;
    int workers = 1;
    bool deterministic = false;
    std::uint64_t seed = 0;
    nlohmann::ordered_json verdicts;
    std::vector<std::string> certificates;  // re-checkable documents
    std::vector<std::string> artifacts;     // structure files, summaries
    std::int64_t wall_clock_ms = 0;         // written as 0 when deterministic
};

nlohmann::ordered_json manifest_to_json(const ManifestData& m);
void write_manifest(const ManifestData& m, const std::filesystem::path& file);

}  // namespace kaylab
