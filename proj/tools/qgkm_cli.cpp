// Command line interface: validate, connection, faces, qcheck, sign-face,
// classify, generate, cohomology. Reads graph files (or "-" for stdin),
// prints human-readable reports by default and a single JSON document with
// --json. Exit codes: 0 success/valid/classified, 1 check failed or
// refused, 2 parse/usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qgkm/classify.hpp"
#include "qgkm/cohomology.hpp"
#include "qgkm/io.hpp"
#include "qgkm/models.hpp"

namespace {

using namespace qgkm;

WeightVector parse_csv_vector(const std::string& csv) {
    WeightVector w;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            w.coords.push_back(Int(item));
        } catch (const std::exception&) {
            throw Error(Errc::ParseError, "bad integer '" + item + "' in vector '" + csv + "'");
        }
    }
    if (w.coords.empty()) throw Error(Errc::ParseError, "empty vector '" + csv + "'");
    return w;
}

QuaternionicStructure& require_structure(LoadedGraph& lg, const std::string& said) {
    if (!lg.structure)
        throw Error(Errc::ValidationError,
                    "the file carries no quaternionic block, required by '" + said + "'");
    return *lg.structure;
}

Json face_json(const GkmGraph& g, const TwoFace& f) {
    Json j;
    j["length"] = f.length();
    j["edges"] = Json::array();
    for (OrientedEdge e : f.cycle) j["edges"].push_back(g.oriented_name(e));
    j["vertices"] = f.vertex_cycle(g);
    return j;
}

std::string face_text(const GkmGraph& g, const TwoFace& f) {
    std::string s = "[";
    const auto vs = f.vertex_cycle(g);
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + vs[i];
    s += "] via";
    for (OrientedEdge e : f.cycle) s += " '" + g.edge_id(e) + "'";
    return s;
}

int run_validate(const std::string& path, int gkm_level, bool json) {
    auto lg = load_graph_file(path);
    const auto rep = validate_graph(lg.graph);
    const auto lvl = gkm_level >= 2 ? check_gkm_level(lg.graph, gkm_level) : GkmLevelResult{};
    const bool ok = rep.ok() && lvl.ok;
    if (json) {
        Json out;
        out["valid"] = rep.ok();
        out["violations"] = rep.violations;
        out["warnings"] = rep.warnings;
        out["gkm_level"] = gkm_level;
        out["gkm_level_ok"] = lvl.ok;
        if (!lvl.ok) {
            out["witness_vertex"] = lvl.witness_vertex;
            out["witness_edges"] = lvl.witness_edges;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "valid: " << (rep.ok() ? "yes" : "no") << "\n";
        for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
        for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
        std::cout << "GKM_" << gkm_level << ": " << (lvl.ok ? "yes" : "no") << "\n";
        if (!lvl.ok) {
            std::cout << "witness: vertex '" << lvl.witness_vertex << "', edges";
            for (const auto& e : lvl.witness_edges) std::cout << " '" << e << "'";
            std::cout << "\n";
        }
    }
    return ok ? 0 : 1;
}

int run_connection(const std::string& path, bool json) {
    auto lg = load_graph_file(path);
    const auto& g = lg.graph;
    const Connection con = find_connection(g);
    Json out = Json::array();
    for (int k = 0; k < g.num_edges(); ++k) {
        for (OrientedEdge e : {2 * k, 2 * k + 1}) {
            Json item;
            item["edge"] = g.oriented_name(e);
            item["images"] = Json::array();
            if (!json) std::cout << "nabla along " << g.oriented_name(e) << ":\n";
            for (OrientedEdge f : g.star(g.origin(e))) {
                const OrientedEdge h = con.image(g, e, f);
                const auto c = unsigned_congruence(g.label(f), g.label(h), g.label(e));
                Json entry;
                entry["of"] = g.oriented_name(f);
                entry["to"] = g.oriented_name(h);
                if (c) {
                    entry["sign"] = c->sign;
                    entry["c"] = c->c.convert_to<long long>();
                }
                item["images"].push_back(entry);
                if (!json) {
                    std::cout << "  '" << g.edge_id(f) << "' -> '" << g.edge_id(h) << "'";
                    if (c) std::cout << "  (s=" << (c->sign > 0 ? "+1" : "-1") << ", c=" << c->c
                                     << ")";
                    std::cout << "\n";
                }
            }
            out.push_back(std::move(item));
        }
    }
    if (json) std::cout << out.dump(2) << "\n";
    return 0;
}

int run_faces(const std::string& path, bool json) {
    auto lg = load_graph_file(path);
    const auto& g = lg.graph;
    const Connection con = find_connection(g);
    const auto faces = enumerate_faces(g, con);
    // on GKM_2-only graphs the connection is not unique, so the faces are
    // relative to the deterministic choice made by find_connection
    const bool unique_connection = check_gkm_level(g, 3).ok;

    std::vector<std::string> kinds(faces.size());
    std::map<std::string, int> census;
    if (lg.structure) {
        for (std::size_t i = 0; i < faces.size(); ++i) {
            const auto fc = classify_face(faces[i], g, *lg.structure, con);
            kinds[i] = face_kind_name(fc.kind);
            ++census[kinds[i]];
        }
    } else {
        for (std::size_t i = 0; i < faces.size(); ++i) {
            kinds[i] = std::to_string(faces[i].length()) + "-gon";
            ++census[kinds[i]];
        }
    }
    if (json) {
        Json out;
        out["count"] = faces.size();
        out["connection_unique"] = unique_connection;
        out["census"] = census;
        out["faces"] = Json::array();
        for (std::size_t i = 0; i < faces.size(); ++i) {
            Json f = face_json(g, faces[i]);
            f["kind"] = kinds[i];
            out["faces"].push_back(std::move(f));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "faces: " << faces.size() << "\n";
        if (!unique_connection)
            std::cout << "note: the graph is not GKM_3; faces are relative to the "
                         "lexicographically first compatible connection\n";
        for (const auto& [kind, count] : census)
            std::cout << "  " << kind << ": " << count << "\n";
        for (std::size_t i = 0; i < faces.size(); ++i)
            std::cout << "face " << i << " (" << kinds[i] << "): " << face_text(g, faces[i])
                      << "\n";
    }
    return 0;
}

int run_qcheck(const std::string& path, bool json) {
    auto lg = load_graph_file(path);
    const auto& g = lg.graph;
    const auto& q = require_structure(lg, "qcheck");
    const Connection con = find_connection(g);
    const auto rep = verify_structure(g, q, con);
    // on GKM_2-only graphs only the connection found here is verified; the
    // definition asks for existence of some compatible one, which is not
    // searched exhaustively
    const bool unique_connection = check_gkm_level(g, 3).ok;
    if (json) {
        Json out;
        out["ok"] = rep.ok();
        out["connection_unique"] = unique_connection;
        out["pair_sum_ok"] = rep.pair_sum_ok;
        out["pairs_preserved_ok"] = rep.pairs_preserved_ok;
        out["transport_ok"] = rep.transport_ok;
        if (!rep.pair_sum_ok) out["pair_sum_msg"] = rep.pair_sum_msg;
        if (!rep.pairs_preserved_ok) out["pairs_preserved_msg"] = rep.pairs_preserved_msg;
        if (!rep.transport_ok) out["transport_msg"] = rep.transport_msg;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << rep.summary() << "\n";
        if (!unique_connection)
            std::cout << "note: the graph is not GKM_3; only the lexicographically first "
                         "compatible connection was checked\n";
    }
    return rep.ok() ? 0 : 1;
}

int run_sign_face(const std::string& path, int face_index, bool json) {
    auto lg = load_graph_file(path);
    const auto& g = lg.graph;
    const auto& q = require_structure(lg, "sign-face");
    const Connection con = find_connection(g);
    const auto faces = enumerate_faces(g, con);
    if (face_index < 0 || face_index >= static_cast<int>(faces.size()))
        throw Error(Errc::ValidationError,
                    "face index out of range (the graph has " + std::to_string(faces.size()) +
                        " faces)");
    const auto sf = sign_face(faces[face_index], g, q, con);
    if (json) {
        Json out;
        out["face"] = face_json(g, sf.face);
        out["lifts"] = Json::object();
        for (OrientedEdge e : sf.face.cycle)
            out["lifts"][g.oriented_name(e)] = detail::vector_json(sf.of(e));
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "signed structure on face " << face_index << " " << face_text(g, sf.face)
                  << "\n";
        for (OrientedEdge e : sf.face.cycle)
            std::cout << "  " << g.oriented_name(e) << ": " << sf.of(e).to_string() << "\n";
    }
    return 0;
}

int run_classify(const std::string& path, bool verbose, bool json) {
    auto lg = load_graph_file(path);
    const auto& g = lg.graph;
    const auto& q = require_structure(lg, "classify");
    const ClassificationResult res = classify(g, q);

    Json probes = Json::object();
    std::string probe_text;
    if (verbose && res.classified()) {
        const Connection con = find_connection(g);
        const auto faces = enumerate_faces(g, con);
        std::vector<std::pair<std::string, ProbeReport>> probe_list;
        probe_list.emplace_back("biangle_propagation", probe_biangle_propagation(g, q, con, faces));
        probe_list.emplace_back("quadrangle_rigidity", probe_quadrangle_rigidity(g, q, con, faces));
        for (const auto& [name, rep] : probe_list) {
            Json pj;
            pj["ok"] = rep.ok;
            pj["checked"] = rep.checked;
            pj["findings"] = rep.findings;
            probes[name] = std::move(pj);
            probe_text += "probe " + name + ": " + (rep.ok ? "ok" : "FAILED") + " (" +
                          std::to_string(rep.checked) + " checked)\n";
            for (const auto& f : rep.findings) probe_text += "  " + f + "\n";
        }
    }

    if (json) {
        Json out;
        out["model"] = res.model_name();
        if (res.classified()) {
            out["n"] = res.n;
            out["lambda"] = detail::vector_json(res.lambda);
            out["alpha"] = Json::array();
            for (const auto& a : res.alpha) out["alpha"].push_back(detail::vector_json(a));
            out["vertexMap"] = res.vertex_map;
        } else {
            out["reason"] = refusal_reason_name(res.reason);
            out["witness"] = res.witness;
        }
        if (verbose) out["probes"] = std::move(probes);
        std::cout << out.dump(2) << "\n";
    } else {
        if (res.classified()) {
            std::cout << "model: " << res.model_name() << " n=" << res.n << "\n";
            std::cout << "lambda: " << res.lambda.to_string() << "\n";
            for (std::size_t i = 0; i < res.alpha.size(); ++i) {
                const int k = res.kind == ClassificationResult::Kind::Gr2
                                  ? static_cast<int>(i) + 3
                                  : static_cast<int>(i) + 1;
                std::cout << "alpha_" << k << ": " << res.alpha[i].to_string() << "\n";
            }
            std::cout << "vertexMap:\n";
            for (const auto& [in, model] : res.vertex_map)
                std::cout << "  " << in << " -> " << model << "\n";
        } else {
            std::cout << "model: NotClassified\n";
            std::cout << "reason: " << refusal_reason_name(res.reason) << "\n";
            std::cout << "witness: " << res.witness << "\n";
        }
        std::cout << probe_text;
    }
    return res.classified() ? 0 : 1;
}

int run_generate(const std::string& model, int n, bool standard, const std::string& lambda_csv,
                 const std::string& alpha_csv, const std::string& out_path) {
    if (!standard && lambda_csv.empty())
        throw Error(Errc::ParseError, "generate needs --standard or --lambda/--alpha");
    std::vector<WeightVector> alphas;
    if (!alpha_csv.empty()) {
        std::stringstream ss(alpha_csv);
        std::string item;
        while (std::getline(ss, item, ';')) alphas.push_back(parse_csv_vector(item));
    }
    if (model == "hpn") {
        HpnParams p = standard ? standard_hpn_params(n) : HpnParams{};
        if (!standard) {
            p.n = n;
            p.lambda = parse_csv_vector(lambda_csv);
            p.alpha = std::move(alphas);
        }
        auto [g, q] = generate_hpn(p);
        save_graph_file(out_path, g, &q);
    } else {
        Gr2Params p = standard ? standard_gr2_params(n) : Gr2Params{};
        if (!standard) {
            p.n = n;
            p.lambda = parse_csv_vector(lambda_csv);
            p.alpha = std::move(alphas);
        }
        auto [g, q] = generate_gr2(p);
        save_graph_file(out_path, g, &q);
    }
    return 0;
}

int run_cohomology(const std::string& path, int max_degree, bool betti, bool exact, bool modular,
                   bool json) {
    auto lg = load_graph_file(path);
    const auto& g = lg.graph;
    const auto vrep = validate_graph(g);
    if (!vrep.ok())
        throw Error(Errc::ValidationError, "invalid graph: " + vrep.violations.front());
    const int d = max_degree >= 0 ? max_degree : default_max_degree(g);
    const RankMode mode = modular && !exact ? RankMode::Modular : RankMode::Exact;
    const auto dims = graph_cohomology_dims(g, d, mode);
    std::optional<BettiReport> brep;
    if (betti) brep = betti_numbers(g, d, mode);

    if (json) {
        Json out;
        out["max_degree"] = d;
        out["mode"] = mode == RankMode::Exact ? "exact" : "modular";
        out["h"] = dims.h;
        if (brep) {
            out["betti"] = brep->b;
            out["all_nonnegative"] = brep->all_nonnegative;
            if (brep->sum_equals_vertex_count)
                out["sum_equals_vertex_count"] = *brep->sum_equals_vertex_count;
            out["note"] = "Betti numbers assume equivariant formality (freeness over the "
                          "polynomial ring); graded dimensions h are unconditional";
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "graded dimensions h[0.." << d << "]:";
        for (long long h : dims.h) std::cout << " " << h;
        std::cout << "\n";
        if (brep) {
            std::cout << "Betti numbers (under equivariant formality) b[0.." << d << "]:";
            for (long long b : brep->b) std::cout << " " << b;
            std::cout << "\n";
            if (!brep->all_nonnegative)
                std::cout << "warning: negative values — evidence against formality\n";
            if (brep->sum_equals_vertex_count)
                std::cout << "sum equals vertex count: "
                          << (*brep->sum_equals_vertex_count ? "yes" : "no") << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations on GKM graphs with quaternionic structures"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    std::string file;
    int gkm_level = 2;
    auto* validate = app.add_subcommand("validate", "check the GKM graph axioms");
    validate->add_option("file", file)->required();
    validate->add_option("--gkm-level", gkm_level, "also require GKM_k");

    auto* connection = app.add_subcommand("connection", "compute the compatible connection");
    connection->add_option("file", file)->required();

    auto* faces = app.add_subcommand("faces", "enumerate 2-faces and their census");
    faces->add_option("file", file)->required();

    auto* qcheck = app.add_subcommand("qcheck", "verify the quaternionic structure");
    qcheck->add_option("file", file)->required();

    int face_index = -1;
    auto* sign = app.add_subcommand("sign-face", "signed structure on one complex face");
    sign->add_option("file", file)->required();
    sign->add_option("--face", face_index, "face index as listed by 'faces'")->required();

    bool verbose = false;
    auto* classify_cmd = app.add_subcommand("classify", "decide the classification theorem");
    classify_cmd->add_option("file", file)->required();
    classify_cmd->add_flag("--verbose", verbose, "also run the lemma probes");

    std::string model, lambda_csv, alpha_csv, out_path = "-";
    int n = 0;
    bool standard = false;
    auto* generate = app.add_subcommand("generate", "emit a model graph file");
    generate->add_option("model", model)->required()->check(CLI::IsMember({"hpn", "gr2"}));
    generate->add_option("--n", n, "model size")->required();
    generate->add_flag("--standard", standard, "standard torus parameters");
    generate->add_option("--lambda", lambda_csv, "lambda as comma-separated integers");
    generate->add_option("--alpha", alpha_csv, "alphas as ';'-separated integer vectors");
    generate->add_option("-o,--output", out_path, "output file (default stdout)");

    int max_degree = -1;
    bool betti = false, exact = false, modular = false;
    auto* cohomology = app.add_subcommand("cohomology", "equivariant graph cohomology");
    cohomology->add_option("file", file)->required();
    cohomology->add_option("--max-degree", max_degree, "top polynomial degree (default valence)");
    cohomology->add_flag("--betti", betti, "also extract Betti numbers");
    cohomology->add_flag("--exact", exact, "force exact rational elimination (the default)");
    cohomology->add_flag("--modular", modular, "dual-prime modular fast path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) return run_validate(file, gkm_level, json);
        if (*connection) return run_connection(file, json);
        if (*faces) return run_faces(file, json);
        if (*qcheck) return run_qcheck(file, json);
        if (*sign) return run_sign_face(file, face_index, json);
        if (*classify_cmd) return run_classify(file, verbose, json);
        if (*generate) return run_generate(model, n, standard, lambda_csv, alpha_csv, out_path);
        if (*cohomology) return run_cohomology(file, max_degree, betti, exact, modular, json);
    } catch (const qgkm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == qgkm::Errc::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
