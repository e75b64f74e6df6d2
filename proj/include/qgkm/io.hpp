// The graph file format: one JSON document with rank, vertices, edges and an
// optional quaternionic block. Labels are accepted in any representative and
// canonicalized on load, so saving is byte-stable across load/save round
// trips. Parse errors and semantic errors are kept apart (the CLI maps them
// to exit codes 2 and 1).

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qgkm/quaternionic.hpp"

namespace qgkm {

using Json = nlohmann::ordered_json;

struct LoadedGraph {
    GkmGraph graph;
    std::optional<QuaternionicStructure> structure;
};

namespace detail {

inline Int json_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw Error(Errc::ParseError, where + " must be an integer");
    return Int(j.get<long long>());
}

inline WeightVector json_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) throw Error(Errc::ParseError, where + " must be an array of integers");
    WeightVector w;
    for (const auto& x : j) w.coords.push_back(json_int(x, where));
    return w;
}

inline Json vector_json(const WeightVector& w) {
    Json a = Json::array();
    for (const auto& x : w.coords) {
        if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
            throw Error(Errc::ValidationError, "coordinate exceeds the file format range");
        a.push_back(x.convert_to<long long>());
    }
    return a;
}

}  // namespace detail

inline LoadedGraph parse_graph_json(const Json& doc) {
    if (!doc.is_object()) throw Error(Errc::ParseError, "top level must be an object");
    if (!doc.contains("rank") || !doc["rank"].is_number_integer())
        throw Error(Errc::ParseError, "missing integer field 'rank'");
    const int rank = doc["rank"].get<int>();
    if (rank <= 0) throw Error(Errc::ValidationError, "rank must be positive");

    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw Error(Errc::ParseError, "missing array field 'vertices'");
    std::vector<std::string> vertices;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string()) throw Error(Errc::ParseError, "vertex ids must be strings");
        vertices.push_back(v.get<std::string>());
    }

    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw Error(Errc::ParseError, "missing array field 'edges'");
    std::vector<EdgeSpec> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string() || !e.contains("ends") ||
            !e["ends"].is_array() || e["ends"].size() != 2 || !e.contains("label"))
            throw Error(Errc::ParseError,
                        "each edge needs 'id' (string), 'ends' ([u, v]) and 'label'");
        const std::string id = e["id"].get<std::string>();
        if (!e["ends"][0].is_string() || !e["ends"][1].is_string())
            throw Error(Errc::ParseError, "edge '" + id + "': ends must be vertex ids");
        const std::string u = e["ends"][0].get<std::string>();
        const std::string v = e["ends"][1].get<std::string>();
        if (u == v) throw Error(Errc::ValidationError, "edge '" + id + "' is a loop");
        WeightVector w = detail::json_vector(e["label"], "label of edge '" + id + "'");
        if (w.size() != static_cast<std::size_t>(rank))
            throw Error(Errc::ValidationError,
                        "label of edge '" + id + "' has length " + std::to_string(w.size()) +
                            ", expected " + std::to_string(rank));
        if (w.is_zero()) throw Error(Errc::ValidationError, "zero label on edge '" + id + "'");
        edges.push_back({id, u, v, canonicalize(std::move(w))});
    }

    GkmGraph graph(rank, std::move(vertices), edges);

    std::optional<QuaternionicStructure> structure;
    if (doc.contains("quaternionic")) {
        const Json& qj = doc["quaternionic"];
        if (!qj.is_object() || !qj.contains("weights") || !qj["weights"].is_object())
            throw Error(Errc::ParseError, "'quaternionic' needs a 'weights' object");
        QuaternionicStructure q;
        q.weights.reserve(graph.num_vertices());
        for (int v = 0; v < graph.num_vertices(); ++v) {
            const std::string& id = graph.vertex_id(v);
            if (!qj["weights"].contains(id))
                throw Error(Errc::ValidationError, "missing quaternionic weight for '" + id + "'");
            WeightVector w =
                detail::json_vector(qj["weights"][id], "quaternionic weight of '" + id + "'");
            if (w.size() != static_cast<std::size_t>(rank))
                throw Error(Errc::ValidationError,
                            "quaternionic weight of '" + id + "' has the wrong length");
            if (w.is_zero())
                throw Error(Errc::ValidationError, "zero quaternionic weight at '" + id + "'");
            q.weights.push_back(canonicalize(std::move(w)));
        }

        std::map<std::string, std::vector<OrientedEdge>> star_by_id;
        for (int v = 0; v < graph.num_vertices(); ++v)
            star_by_id[graph.vertex_id(v)] = graph.star(v);

        if (qj.contains("pairs")) {
            if (!qj["pairs"].is_object())
                throw Error(Errc::ParseError, "'pairs' must map vertex ids to edge id pairs");
            q.partner.assign(2 * graph.num_edges(), -1);
            for (int v = 0; v < graph.num_vertices(); ++v) {
                const std::string& id = graph.vertex_id(v);
                if (!qj["pairs"].contains(id))
                    throw Error(Errc::ValidationError, "missing pairs for vertex '" + id + "'");
                std::map<std::string, OrientedEdge> by_edge_id;
                for (OrientedEdge e : graph.star(v)) by_edge_id[graph.edge_id(e)] = e;
                std::set<std::string> used;
                for (const auto& pr : qj["pairs"][id]) {
                    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() ||
                        !pr[1].is_string())
                        throw Error(Errc::ParseError, "pairs at '" + id +
                                                          "' must be [edgeId, edgeId] arrays");
                    const std::string a = pr[0].get<std::string>(), b = pr[1].get<std::string>();
                    if (a == b || !by_edge_id.count(a) || !by_edge_id.count(b) ||
                        !used.insert(a).second || !used.insert(b).second)
                        throw Error(Errc::ValidationError,
                                    "pairs at '" + id + "' are not a matching of its edges");
                    q.partner[by_edge_id[a]] = by_edge_id[b];
                    q.partner[by_edge_id[b]] = by_edge_id[a];
                }
                if (used.size() != graph.star(v).size())
                    throw Error(Errc::ValidationError,
                                "pairs at '" + id + "' do not cover all incident edges");
            }
            // on GKM_3 graphs the pairs are determined by the weights: cross-check
            if (check_gkm_level(graph, 3).ok) {
                try {
                    const auto inferred = infer_pairs(graph, q.weights);
                    if (inferred != q.partner)
                        throw Error(Errc::ValidationError,
                                    "explicit pairs contradict the pairs inferred from the "
                                    "weights (unique on a GKM_3 graph)");
                } catch (const Error& err) {
                    if (err.code() == Errc::ValidationError) throw;
                    // inference failed: the explicit pairs cannot satisfy the
                    // pair-sum condition either; qcheck reports it
                }
            }
        } else {
            if (!check_gkm_level(graph, 3).ok)
                throw Error(Errc::ValidationError,
                            "explicit pairs are required: the graph is not GKM_3, so pairs "
                            "cannot be inferred uniquely");
            try {
                q.partner = infer_pairs(graph, q.weights);
            } catch (const Error& err) {
                throw Error(Errc::ValidationError, std::string(err.what()));
            }
        }
        structure = std::move(q);
    }
    return LoadedGraph{std::move(graph), std::move(structure)};
}

inline Json graph_to_json(const GkmGraph& g, const QuaternionicStructure* q = nullptr) {
    Json doc;
    doc["rank"] = g.rank();
    doc["vertices"] = Json::array();
    for (const auto& id : g.vertex_ids()) doc["vertices"].push_back(id);
    doc["edges"] = Json::array();
    for (const auto& e : g.edges()) {
        Json ej;
        ej["id"] = e.id;
        ej["ends"] = Json::array({g.vertex_id(e.u), g.vertex_id(e.v)});
        ej["label"] = detail::vector_json(e.label.rep());
        doc["edges"].push_back(std::move(ej));
    }
    if (q) {
        Json weights = Json::object(), pairs = Json::object();
        for (int v = 0; v < g.num_vertices(); ++v) {
            weights[g.vertex_id(v)] = detail::vector_json(q->weight(v).rep());
            Json plist = Json::array();
            std::vector<std::pair<std::string, std::string>> named;
            for (const auto& [e, f] : q->pairs_at(g, v)) {
                auto a = g.edge_id(e), b = g.edge_id(f);
                if (b < a) std::swap(a, b);
                named.emplace_back(a, b);
            }
            std::sort(named.begin(), named.end());
            for (const auto& [a, b] : named) plist.push_back(Json::array({a, b}));
            pairs[g.vertex_id(v)] = std::move(plist);
        }
        doc["quaternionic"] = Json::object();
        doc["quaternionic"]["weights"] = std::move(weights);
        doc["quaternionic"]["pairs"] = std::move(pairs);
    }
    return doc;
}

inline std::string save_graph_text(const GkmGraph& g, const QuaternionicStructure* q = nullptr) {
    return graph_to_json(g, q).dump(2) + "\n";
}

inline LoadedGraph load_graph_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, e.what());
    }
    return parse_graph_json(doc);
}

/// Reads a graph file; "-" reads standard input.
inline LoadedGraph load_graph_file(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
        buf << in.rdbuf();
    }
    return load_graph_text(buf.str());
}

inline void save_graph_file(const std::string& path, const GkmGraph& g,
                            const QuaternionicStructure* q = nullptr) {
    const std::string text = save_graph_text(g, q);
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(Errc::ValidationError, "cannot write '" + path + "'");
    out << text;
}

}  // namespace qgkm
