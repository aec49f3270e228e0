#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "kaylab/io.hpp"
#include "kaylab/kay.hpp"
#include "kaylab/structure.hpp"

using namespace kaylab;
namespace fs = std::filesystem;

TEST_CASE("structure files round-trip byte-exactly") {
    ExpandedStructure e = ExpandedStructure::from_edges(5, 3, {{0, 1, 2}, {1, 2, 4}}, true);
    for (const Structure& s : {chain(4), hypergraph(4, 2, {{2, 1}, {0, 3}}, false), e.structure()}) {
        std::string text = to_text(s);
        Structure back = structure_from_json(nlohmann::json::parse(text));
        CHECK(back == s);
        CHECK(to_text(back) == text);
    }
}

TEST_CASE("hyperedge tuples canonicalize on load, any entry order") {
    auto j = nlohmann::json::parse(R"({
      "signature": [{"name":"R","arity":2,"kind":"hyperedge"}],
      "size": 3,
      "relations": {"R": [[2,0],[1,0],[0,1]]}
    })");
    Structure s = structure_from_json(j);
    CHECK(s.tuples(0) == std::vector<Tuple>{{0, 1}, {0, 2}});
}

TEST_CASE("order relations are implicit") {
    auto base = R"({
      "signature": [{"name":"<=","arity":2,"kind":"order"}],
      "size": 3,
      "relations": {%}
    })";
    auto parse = [&](const std::string& rel) {
        std::string t(base);
        t.replace(t.find('%'), 1, rel);
        return structure_from_json(nlohmann::json::parse(t));
    };
    CHECK(parse("") == chain(3));
    CHECK(parse(R"("<=": [[0,1],[0,2],[1,2]])") == chain(3));
    CHECK_THROWS(parse(R"("<=": [[1,0]])"));
}

TEST_CASE("malformed input rejected") {
    CHECK_THROWS(structure_from_json(nlohmann::json::parse(R"({"size":2})")));
    CHECK_THROWS(structure_from_json(nlohmann::json::parse(R"({
      "signature": [{"name":"R","arity":2,"kind":"hyperedge"}],
      "size": 2, "relations": {"Q": []}
    })")));
    CHECK_THROWS(structure_from_json(nlohmann::json::parse(R"({
      "signature": [{"name":"R","arity":2,"kind":"mystery"}],
      "size": 2, "relations": {}
    })")));
    CHECK_THROWS(structure_from_json(nlohmann::json::parse(R"({
      "signature": [{"name":"R","arity":2,"kind":"hyperedge"}],
      "size": 2, "relations": {"R": [[0,0]]}
    })")));
}

TEST_CASE("file save/load") {
    fs::path dir = fs::temp_directory_path() / "kaylab-io-test";
    fs::create_directories(dir);
    Structure s = hypergraph(5, 3, {{0, 1, 4}}, true);
    save_structure(s, dir / "a.struct");
    CHECK(load_structure(dir / "a.struct") == s);
    CHECK_THROWS(load_structure(dir / "missing.struct"));
    write_text_file(dir / "junk.struct", "not json");
    CHECK_THROWS(load_structure(dir / "junk.struct"));
    fs::remove_all(dir);
}

TEST_CASE("fingerprints are stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("kay") != fnv1a_hex("yak"));
}
