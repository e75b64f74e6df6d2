#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "helpers.hpp"
#include "qgkm/io.hpp"
#include "qgkm/models.hpp"

using namespace qgkm;
using namespace qgkm::test;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

/// Runs a shell command, capturing stdout (stderr folded in).
RunResult run(const std::string& command) {
    std::array<char, 4096> buf{};
    std::string output;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

const std::string cli = QGKM_CLI_PATH;

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/qgkm_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("save/load round trips byte-stably", "[io]") {
    const auto [g, q] = generate_gr2(standard_gr2_params(4));
    const std::string text = save_graph_text(g, &q);
    const auto loaded = load_graph_text(text);
    REQUIRE(loaded.structure);
    CHECK(save_graph_text(loaded.graph, &*loaded.structure) == text);
    CHECK(loaded.graph.num_vertices() == g.num_vertices());
    CHECK(loaded.graph.num_edges() == g.num_edges());
    CHECK(loaded.structure->partner == q.partner);
}

TEST_CASE("labels are canonicalized on load", "[io]") {
    const std::string text = R"({
      "rank": 2,
      "vertices": ["L", "R"],
      "edges": [
        {"id": "e", "ends": ["L", "R"], "label": [-1, 1]},
        {"id": "f", "ends": ["L", "R"], "label": [1, 1]}
      ]
    })";
    const auto loaded = load_graph_text(text);
    CHECK(loaded.graph.edges()[0].label.rep() == wv({1, -1}));
}

TEST_CASE("pairs are inferred on load when absent", "[io]") {
    const auto [g, q] = generate_hpn(standard_hpn_params(1));
    Json doc = graph_to_json(g, &q);
    doc["quaternionic"].erase("pairs");
    const auto loaded = load_graph_text(doc.dump());
    REQUIRE(loaded.structure);
    CHECK(loaded.structure->partner == q.partner);
}

TEST_CASE("structural file errors carry the right code", "[io]") {
    auto expect_error = [](const std::string& text, Errc code, const std::string& needle) {
        try {
            load_graph_text(text);
            FAIL("expected an error for: " + needle);
        } catch (const Error& e) {
            CHECK(e.code() == code);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_error("{not json", Errc::ParseError, "");
    expect_error(R"({"rank": 2, "vertices": ["A"], "edges": [
        {"id": "e", "ends": ["A", "A"], "label": [1, 0]}]})",
                 Errc::ValidationError, "loop");
    expect_error(R"({"rank": 2, "vertices": ["A", "B"], "edges": [
        {"id": "e", "ends": ["A", "B"], "label": [0, 0]}]})",
                 Errc::ValidationError, "zero label");
    expect_error(R"({"rank": 2, "vertices": ["A", "B"], "edges": [
        {"id": "e", "ends": ["A", "B"], "label": [1]}]})",
                 Errc::ValidationError, "length");
    expect_error(R"({"rank": 2, "vertices": ["A", "B"], "edges": [
        {"id": "e", "ends": ["A", "B"], "label": [1, 0]},
        {"id": "e", "ends": ["A", "B"], "label": [0, 1]}]})",
                 Errc::ValidationError, "duplicate");
}

TEST_CASE("explicit pairs must match inference on GKM_3 inputs", "[io]") {
    const auto [g, q] = generate_hpn(standard_hpn_params(2));
    Json doc = graph_to_json(g, &q);
    // swap the pairing at v0: pair alpha1 with alpha2 instead
    doc["quaternionic"]["pairs"]["v0"] = Json::array(
        {Json::array({"e0_1a", "e0_2a"}), Json::array({"e0_1b", "e0_2b"})});
    CHECK_THROWS_AS(load_graph_text(doc.dump()), Error);
}

TEST_CASE("generate and classify compose through a pipe", "[io]") {
    const auto res = run(cli + " generate gr2 --n 4 --standard | " + cli + " classify -");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("Gr2") != std::string::npos);
    CHECK(res.output.find("n=4") != std::string::npos);
}

TEST_CASE("the CLI classifies the two CP^2 triangles per the dichotomy", "[io]") {
    const std::string kaehler = write_temp("kaehler.json", R"({
      "rank": 2,
      "vertices": ["A", "B", "C"],
      "edges": [
        {"id": "ab", "ends": ["A", "B"], "label": [1, 0]},
        {"id": "ac", "ends": ["A", "C"], "label": [1, -1]},
        {"id": "bc", "ends": ["B", "C"], "label": [2, -1]}
      ],
      "quaternionic": {"weights": {"A": [0, 1], "B": [3, -1], "C": [3, -2]}}
    })");
    const auto kres = run(cli + " classify " + kaehler);
    CHECK(kres.exit_code == 1);
    CHECK(kres.output.find("FaceShapeViolation") != std::string::npos);

    const std::string qk = write_temp("qk.json", R"({
      "rank": 2,
      "vertices": ["A", "B", "C"],
      "edges": [
        {"id": "ab", "ends": ["A", "B"], "label": [1, 0]},
        {"id": "ac", "ends": ["A", "C"], "label": [1, -1]},
        {"id": "bc", "ends": ["B", "C"], "label": [0, 1]}
      ],
      "quaternionic": {"weights": {"A": [0, 1], "B": [1, -1], "C": [1, 0]}}
    })");
    const auto qres = run(cli + " classify " + qk);
    CHECK(qres.exit_code == 0);
    CHECK(qres.output.find("Gr2") != std::string::npos);
}

TEST_CASE("CLI exit codes follow the contract", "[io]") {
    CHECK(run(cli + " nonsense").exit_code == 2);
    CHECK(run(cli + " classify /nonexistent.json").exit_code == 2);  // unreadable file
    const std::string loop = write_temp("loop.json", R"({
      "rank": 2, "vertices": ["A", "B"],
      "edges": [{"id": "e", "ends": ["A", "A"], "label": [1, 0]}]
    })");
    CHECK(run(cli + " validate " + loop).exit_code == 1);
    const std::string junk = write_temp("junk.json", "{");
    CHECK(run(cli + " validate " + junk).exit_code == 2);
}

TEST_CASE("validate reports GKM level", "[io]") {
    const std::string path = write_temp("hp2.json", [] {
        const auto [g, q] = generate_hpn(standard_hpn_params(2));
        return save_graph_text(g, &q);
    }());
    const auto res = run(cli + " validate " + path + " --gkm-level 3");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("GKM_3: yes") != std::string::npos);
    // a quaternionic graph of valence >= 4 is never GKM_4
    const auto res4 = run(cli + " validate " + path + " --gkm-level 4");
    CHECK(res4.exit_code == 1);
    CHECK(res4.output.find("GKM_4: no") != std::string::npos);
}

TEST_CASE("json output parses and carries the text report's fields", "[io]") {
    const std::string path = write_temp("gr24.json", [] {
        const auto [g, q] = generate_gr2(standard_gr2_params(4));
        return save_graph_text(g, &q);
    }());
    {
        const auto res = run(cli + " --json classify " + path);
        REQUIRE(res.exit_code == 0);
        const Json doc = Json::parse(res.output);
        CHECK(doc["model"] == "Gr2");
        CHECK(doc["n"] == 4);
        CHECK(doc.contains("lambda"));
        CHECK(doc.contains("alpha"));
        CHECK(doc["vertexMap"].size() == 6);
    }
    {
        const auto res = run(cli + " --json faces " + path);
        REQUIRE(res.exit_code == 0);
        const Json doc = Json::parse(res.output);
        CHECK(doc["count"] == 11);
        CHECK(doc["census"]["NoncomplexTriangle"] == 4);
        CHECK(doc["census"]["ComplexTriangle"] == 4);
        CHECK(doc["census"]["ComplexQuadrangle"] == 3);
    }
    {
        const auto res = run(cli + " --json cohomology " + path + " --betti --modular");
        REQUIRE(res.exit_code == 0);
        const Json doc = Json::parse(res.output);
        CHECK(doc["betti"] == Json::array({1, 1, 2, 1, 1}));
        CHECK(doc["sum_equals_vertex_count"] == true);
    }
}

TEST_CASE("sign-face signs complex faces and refuses biangles", "[io]") {
    const std::string path = write_temp("hp1.json", [] {
        const auto [g, q] = generate_hpn(standard_hpn_params(1));
        return save_graph_text(g, &q);
    }());
    const auto refuse = run(cli + " sign-face " + path + " --face 0");
    CHECK(refuse.exit_code == 1);

    const std::string gr4 = write_temp("gr24b.json", [] {
        const auto [g, q] = generate_gr2(standard_gr2_params(4));
        return save_graph_text(g, &q);
    }());
    // find a complex face index via the json census
    const auto faces = run(cli + " --json faces " + gr4);
    const Json doc = Json::parse(faces.output);
    int idx = -1;
    for (std::size_t i = 0; i < doc["faces"].size(); ++i)
        if (doc["faces"][i]["kind"] == "ComplexQuadrangle") idx = static_cast<int>(i);
    REQUIRE(idx >= 0);
    const auto ok = run(cli + " sign-face " + gr4 + " --face " + std::to_string(idx));
    CHECK(ok.exit_code == 0);
}

TEST_CASE("generated files round trip byte-stably through the CLI", "[io]") {
    const auto first = run(cli + " generate hpn --n 3 --standard");
    REQUIRE(first.exit_code == 0);
    const std::string path = write_temp("hp3.json", first.output);
    const auto loaded = load_graph_file(path);
    REQUIRE(loaded.structure);
    CHECK(save_graph_text(loaded.graph, &*loaded.structure) == first.output);
}

TEST_CASE("generate accepts explicit parameters", "[io]") {
    const auto res = run(cli + " generate hpn --n 1 --lambda 2,0 --alpha 1,-1 | " + cli +
                         " classify -");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("HPn") != std::string::npos);
    // degenerate parameters are refused with exit 1
    const auto bad = run(cli + " generate hpn --n 2 --lambda 2,0,0 --alpha \"1,-1,0;1,-1,0\"");
    CHECK(bad.exit_code == 1);
}
