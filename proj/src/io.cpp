#include "kaylab/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kaylab {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json structure_to_json(const Structure& s) {
    ordered_json j;
    j["signature"] = ordered_json::array();
    for (const Symbol& sym : s.signature().symbols()) {
        ordered_json js;
        js["name"] = sym.name;
        js["arity"] = sym.arity;
        js["kind"] = to_string(sym.kind);
        j["signature"].push_back(std::move(js));
    }
    j["size"] = s.size();
    ordered_json rels = ordered_json::object();
    for (int i = 0; i < s.signature().symbol_count(); ++i) {
        if (s.signature().kind(i) == SymbolKind::order) continue;
        ordered_json ts = ordered_json::array();
        for (const Tuple& t : s.tuples(i)) ts.push_back(t);
        rels[s.signature().symbols()[i].name] = std::move(ts);
    }
    j["relations"] = std::move(rels);
    return j;
}

Structure structure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("signature") || !j.contains("size") || !j.contains("relations"))
        throw std::invalid_argument("structure file: expected fields signature, size, relations");
    std::vector<Symbol> syms;
    for (const auto& js : j.at("signature")) {
        Symbol s;
        s.name = js.at("name").get<std::string>();
        s.arity = js.at("arity").get<int>();
        s.kind = symbol_kind_from_string(js.at("kind").get<std::string>());
        syms.push_back(std::move(s));
    }
    Signature sig(std::move(syms));
    const int size = j.at("size").get<int>();
    std::vector<std::vector<Tuple>> rels(sig.symbol_count());
    for (const auto& [name, ts] : j.at("relations").items()) {
        int idx = sig.index_of(name);
        if (idx < 0) throw std::invalid_argument("structure file: relation for unknown symbol " + name);
        std::vector<Tuple> tuples;
        for (const auto& jt : ts) tuples.push_back(jt.get<Tuple>());
        if (sig.kind(idx) == SymbolKind::order) {
            // implicit; if listed it must be exactly the strict natural order
            std::vector<Tuple> expect;
            for (int a = 0; a < size; ++a)
                for (int b = a + 1; b < size; ++b) expect.push_back({a, b});
            std::sort(tuples.begin(), tuples.end());
            if (!tuples.empty() && tuples != expect)
                throw std::invalid_argument("structure file: order relation must be the natural order");
            continue;
        }
        rels[idx] = std::move(tuples);
    }
    return Structure(std::move(sig), size, std::move(rels));
}

std::string to_text(const Structure& s) { return structure_to_json(s).dump(2) + "\n"; }

std::string to_compact_text(const Structure& s) { return structure_to_json(s).dump(); }

Structure load_structure(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open structure file: " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("malformed structure file " + file.string() + ": " + e.what());
    }
    return structure_from_json(j);
}

void save_structure(const Structure& s, const std::filesystem::path& file) {
    write_text_file(file, to_text(s));
}

void write_text_file(const std::filesystem::path& file, const std::string& content) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + file.string());
    out << content;
}

std::string read_text_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a_hex(const std::string& bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace kaylab
