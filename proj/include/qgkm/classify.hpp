// The classification decision procedure: verify that an abstract GKM_3
// graph with quaternionic structure has only biangles and noncomplex
// triangles as quaternionic 2-faces and only triangles and quadrangles as
// complex 2-faces, then reconstruct model parameters and an explicit vertex
// bijection onto HP^n (when a quaternionic biangle exists) or Gr_2(C^n)
// (when none does). Success means exact equality with a generator output
// under the bijection: labels, multiplicities, quaternionic weights and
// pairs; anything less is a certified refusal.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgkm/models.hpp"

namespace qgkm {

enum class RefusalReason {
    None,
    NotGkm3,
    NoConnection,
    StructureInvalid,
    FaceShapeViolation,
    ReconstructionMismatch,
    OddValence,
};

inline const char* refusal_reason_name(RefusalReason r) {
    switch (r) {
        case RefusalReason::None: return "None";
        case RefusalReason::NotGkm3: return "NotGkm3";
        case RefusalReason::NoConnection: return "NoConnection";
        case RefusalReason::StructureInvalid: return "StructureInvalid";
        case RefusalReason::FaceShapeViolation: return "FaceShapeViolation";
        case RefusalReason::ReconstructionMismatch: return "ReconstructionMismatch";
        case RefusalReason::OddValence: return "OddValence";
    }
    return "Unknown";
}

struct ClassificationResult {
    enum class Kind { HPn, Gr2, NotClassified };

    Kind kind = Kind::NotClassified;
    int n = 0;
    WeightVector lambda;
    std::vector<WeightVector> alpha;  // alpha_1..alpha_n (HPn) or alpha_3..alpha_n (Gr2)
    std::map<std::string, std::string> vertex_map;  // input vertex id -> model vertex id
    RefusalReason reason = RefusalReason::None;
    std::string witness;

    bool classified() const { return kind != Kind::NotClassified; }

    std::string model_name() const {
        switch (kind) {
            case Kind::HPn: return "HPn";
            case Kind::Gr2: return "Gr2";
            case Kind::NotClassified: return "NotClassified";
        }
        return "?";
    }
};

inline std::vector<FaceClassification> classify_all_faces(const GkmGraph& g,
                                                          const QuaternionicStructure& q,
                                                          const Connection& con,
                                                          const std::vector<TwoFace>& faces) {
    std::vector<FaceClassification> out;
    out.reserve(faces.size());
    for (const auto& f : faces) out.push_back(classify_face(f, g, q, con));
    return out;
}

struct HypothesisReport {
    bool ok = true;
    std::string witness;
    std::vector<FaceClassification> faces;
};

/// The main theorem's hypotheses: the graph is GKM_3, every quaternionic
/// 2-face is a biangle or a noncomplex triangle, and every complex 2-face is
/// a triangle or a quadrangle.
inline HypothesisReport check_hypotheses(const GkmGraph& g, const QuaternionicStructure& q,
                                         const Connection& con,
                                         const std::vector<TwoFace>& faces) {
    HypothesisReport rep;
    const auto gkm3 = check_gkm_level(g, 3);
    if (!gkm3.ok) {
        rep.ok = false;
        rep.witness = "not GKM_3 at vertex '" + gkm3.witness_vertex + "'";
        return rep;
    }
    rep.faces = classify_all_faces(g, q, con, faces);
    for (const auto& fc : rep.faces) {
        const bool allowed = fc.quaternionic
                                 ? (fc.kind == FaceKind::QuaternionicBiangle ||
                                    fc.kind == FaceKind::NoncomplexTriangle)
                                 : (fc.kind == FaceKind::ComplexTriangle ||
                                    fc.kind == FaceKind::ComplexQuadrangle);
        if (!allowed) {
            rep.ok = false;
            rep.witness = std::string(face_kind_name(fc.kind)) + " face at vertex '" +
                          g.vertex_id(g.origin(fc.face.cycle[0])) + "' (edges";
            for (OrientedEdge e : fc.face.cycle) rep.witness += " '" + g.edge_id(e) + "'";
            rep.witness += ")";
            return rep;
        }
    }
    return rep;
}

namespace detail {

/// Exact equality of (graph, structure) with a model under the vertex map:
/// same rank, same edge label sets between corresponding vertex pairs, same
/// weights, same pairs (compared as label pairs; labels at a vertex are
/// pairwise distinct).
inline bool matches_model(const GkmGraph& g, const QuaternionicStructure& q,
                          const GkmGraph& mg, const QuaternionicStructure& mq,
                          const std::map<std::string, std::string>& vertex_map,
                          std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (g.rank() != mg.rank()) return fail("rank differs from the model");
    if (g.num_vertices() != mg.num_vertices() ||
        vertex_map.size() != static_cast<std::size_t>(g.num_vertices()))
        return fail("vertex counts differ from the model");
    std::map<std::string, int> model_index;
    for (int v = 0; v < mg.num_vertices(); ++v) model_index[mg.vertex_id(v)] = v;
    std::vector<int> to_model(g.num_vertices(), -1);
    std::set<int> hit;
    for (const auto& [in_id, model_id] : vertex_map) {
        auto it = model_index.find(model_id);
        if (it == model_index.end()) return fail("vertex map targets unknown '" + model_id + "'");
        to_model[g.vertex_index(in_id)] = it->second;
        if (!hit.insert(it->second).second) return fail("vertex map is not injective");
    }
    for (int v = 0; v < g.num_vertices(); ++v)
        if (to_model[v] < 0) return fail("vertex '" + g.vertex_id(v) + "' is unmapped");

    auto edge_multisets = [](const GkmGraph& gr) {
        std::map<std::pair<int, int>, std::vector<UnsignedWeight>> out;
        for (const auto& e : gr.edges()) {
            auto key = std::minmax(e.u, e.v);
            out[{key.first, key.second}].push_back(e.label);
        }
        for (auto& [k, labels] : out) std::sort(labels.begin(), labels.end());
        return out;
    };
    auto mine = edge_multisets(g);
    std::map<std::pair<int, int>, std::vector<UnsignedWeight>> mapped;
    for (auto& [key, labels] : mine) {
        auto mkey = std::minmax(to_model[key.first], to_model[key.second]);
        mapped[{mkey.first, mkey.second}] = std::move(labels);
    }
    if (mapped != edge_multisets(mg)) return fail("edge labels differ from the model");

    for (int v = 0; v < g.num_vertices(); ++v) {
        const int w = to_model[v];
        if (q.weight(v) != mq.weight(w))
            return fail("quaternionic weight at '" + g.vertex_id(v) + "' differs from the model");
        auto pair_labels = [](const GkmGraph& gr, const QuaternionicStructure& qs, int vert) {
            std::vector<std::pair<UnsignedWeight, UnsignedWeight>> out;
            for (const auto& [e, f] : qs.pairs_at(gr, vert)) {
                auto a = gr.label(e), b = gr.label(f);
                if (b < a) std::swap(a, b);
                out.emplace_back(a, b);
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        if (pair_labels(g, q, v) != pair_labels(mg, mq, w))
            return fail("quaternionic pairs at '" + g.vertex_id(v) + "' differ from the model");
    }
    return true;
}

inline int smallest_vertex(const GkmGraph& g) {
    int best = 0;
    for (int v = 1; v < g.num_vertices(); ++v)
        if (g.vertex_id(v) < g.vertex_id(best)) best = v;
    return best;
}

inline bool adjacent(const GkmGraph& g, int u, int v) {
    for (OrientedEdge e : g.star(u))
        if (g.terminus(e) == v) return true;
    return false;
}

inline ClassificationResult refuse(RefusalReason r, std::string witness) {
    ClassificationResult res;
    res.kind = ClassificationResult::Kind::NotClassified;
    res.reason = r;
    res.witness = std::move(witness);
    return res;
}

inline ClassificationResult reconstruct_hpn(const GkmGraph& g, const QuaternionicStructure& q,
                                            const Connection& con) {
    const int v0 = smallest_vertex(g);
    const int valence = static_cast<int>(g.star(v0).size());
    const int n = valence / 2;
    if (g.num_vertices() != n + 1)
        return refuse(RefusalReason::ReconstructionMismatch,
                      "vertex count does not fit a complete biangle graph");

    const LiftChart chart = lift_chart(g, q, v0, +1);
    struct Biangle {
        WeightVector alpha;
        int far;
    };
    std::vector<Biangle> biangles;
    for (const auto& [e, f] : q.pairs_at(g, v0)) {
        if (g.terminus(e) != g.terminus(f) || con.image(g, e, f) != reverse(f))
            return refuse(RefusalReason::ReconstructionMismatch,
                          "a quaternionic pair at the base vertex does not span a biangle");
        const WeightVector& le = chart.lift(g, e);
        const WeightVector& lf = chart.lift(g, f);
        biangles.push_back({std::min(le, lf), g.terminus(e)});
    }
    std::sort(biangles.begin(), biangles.end(),
              [](const Biangle& a, const Biangle& b) { return a.alpha < b.alpha; });

    ClassificationResult res;
    res.kind = ClassificationResult::Kind::HPn;
    res.n = n;
    res.lambda = chart.lambda_lift;
    res.vertex_map[g.vertex_id(v0)] = "v0";
    HpnParams params;
    params.n = n;
    params.lambda = chart.lambda_lift;
    for (int k = 0; k < n; ++k) {
        params.alpha.push_back(biangles[k].alpha);
        res.alpha.push_back(biangles[k].alpha);
        res.vertex_map[g.vertex_id(biangles[k].far)] = "v" + std::to_string(k + 1);
    }
    if (res.vertex_map.size() != static_cast<std::size_t>(n + 1))
        return refuse(RefusalReason::ReconstructionMismatch,
                      "biangles at the base vertex do not reach distinct vertices");

    std::string why;
    try {
        auto [mg, mq] = generate_hpn(params);
        if (!detail::matches_model(g, q, mg, mq, res.vertex_map, &why))
            return refuse(RefusalReason::ReconstructionMismatch, why);
    } catch (const Error& err) {
        return refuse(RefusalReason::ReconstructionMismatch, err.what());
    }
    return res;
}

inline ClassificationResult reconstruct_gr2(const GkmGraph& g, const QuaternionicStructure& q,
                                            const Connection& con,
                                            const std::vector<FaceClassification>& faces) {
    const int v12 = smallest_vertex(g);
    const int valence = static_cast<int>(g.star(v12).size());
    const int n = valence / 2 + 2;
    if (g.num_vertices() != n * (n - 1) / 2)
        return refuse(RefusalReason::ReconstructionMismatch,
                      "vertex count does not fit Gr_2(C^n)");

    const LiftChart chart = lift_chart(g, q, v12, +1);

    // each quaternionic pair at the base vertex spans a noncomplex triangle
    struct Triangle {
        WeightVector min_lift;
        OrientedEdge e, f;  // lift(e) = min_lift
    };
    std::vector<Triangle> tris;
    for (const auto& [e, f] : q.pairs_at(g, v12)) {
        const TwoFace face = face_through(g, con, f, e);
        if (face.length() != 3)
            return refuse(RefusalReason::ReconstructionMismatch,
                          "a quaternionic pair at the base vertex does not span a triangle");
        const WeightVector& le = chart.lift(g, e);
        const WeightVector& lf = chart.lift(g, f);
        if (le < lf)
            tris.push_back({le, e, f});
        else
            tris.push_back({lf, f, e});
    }
    std::sort(tris.begin(), tris.end(),
              [](const Triangle& a, const Triangle& b) { return a.min_lift < b.min_lift; });

    ClassificationResult res;
    res.kind = ClassificationResult::Kind::Gr2;
    res.n = n;
    res.lambda = chart.lambda_lift;
    res.vertex_map[g.vertex_id(v12)] = "v12";

    Gr2Params params;
    params.n = n;
    params.lambda = chart.lambda_lift;

    std::vector<int> v1(n + 1, -1), v2(n + 1, -1);  // v1[k] = index of v_{1k}
    for (int j = 0; j < n - 2; ++j) {
        const int k = j + 3;
        OrientedEdge e1 = tris[j].e, e2 = tris[j].f;
        if (j > 0) {
            // v_{1k} is the endpoint adjacent to v_{13}; v_{2k} is not
            const bool a1 = adjacent(g, g.terminus(e1), v1[3]);
            const bool a2 = adjacent(g, g.terminus(e2), v1[3]);
            if (a1 == a2)
                return refuse(RefusalReason::ReconstructionMismatch,
                              "triangle endpoints cannot be told apart by adjacency");
            if (!a1) std::swap(e1, e2);
        }
        v1[k] = g.terminus(e1);
        v2[k] = g.terminus(e2);
        if (v1[k] == v2[k])
            return refuse(RefusalReason::ReconstructionMismatch, "degenerate triangle");
        params.alpha.push_back(chart.lift(g, e1));
        res.alpha.push_back(chart.lift(g, e1));
        res.vertex_map[g.vertex_id(v1[k])] = "v1" + std::to_string(k);
        res.vertex_map[g.vertex_id(v2[k])] = "v2" + std::to_string(k);
    }

    // v_{kl} (k, l >= 3) is the common neighbor of v_{1k}, v_{2k}, v_{1l},
    // v_{2l} other than the base vertex
    for (int k = 3; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
            int found = -1;
            for (int u = 0; u < g.num_vertices(); ++u) {
                if (u == v12) continue;
                if (adjacent(g, u, v1[k]) && adjacent(g, u, v2[k]) && adjacent(g, u, v1[l]) &&
                    adjacent(g, u, v2[l])) {
                    if (found >= 0)
                        return refuse(RefusalReason::ReconstructionMismatch,
                                      "ambiguous completion of a 4-valent subgraph");
                    found = u;
                }
            }
            if (found < 0)
                return refuse(RefusalReason::ReconstructionMismatch,
                              "no completion of a 4-valent subgraph");
            res.vertex_map[g.vertex_id(found)] = "v" + std::to_string(k) + std::to_string(l);
        }
    }
    if (res.vertex_map.size() != static_cast<std::size_t>(g.num_vertices()))
        return refuse(RefusalReason::ReconstructionMismatch, "vertex naming is not a bijection");

    std::string why;
    try {
        auto [mg, mq] = generate_gr2(params);
        if (!detail::matches_model(g, q, mg, mq, res.vertex_map, &why))
            return refuse(RefusalReason::ReconstructionMismatch, why);
    } catch (const Error& err) {
        return refuse(RefusalReason::ReconstructionMismatch, err.what());
    }
    (void)faces;
    return res;
}

}  // namespace detail

/// Decides whether (g, q) is a model graph. Pipeline: validate, check GKM_3,
/// find the (unique) connection, verify the structure, check the face-shape
/// hypotheses, then reconstruct and match against a generator output. Every
/// failure is a NotClassified value with a reason code; a
/// ReconstructionMismatch on inputs that pass the hypotheses would
/// contradict the classification theorem and is kept as an internal
/// consistency alarm.
inline ClassificationResult classify(const GkmGraph& g, const QuaternionicStructure& q) {
    using detail::refuse;

    const auto vrep = validate_graph(g);
    if (!vrep.ok()) return refuse(RefusalReason::NotGkm3, vrep.violations.front());
    if (g.num_edges() == 0)
        return refuse(RefusalReason::NotGkm3, "graph has no edges");
    const int valence = static_cast<int>(g.star(0).size());
    if (valence % 2 != 0)
        return refuse(RefusalReason::OddValence,
                      "odd valence " + std::to_string(valence) + " admits no quaternionic pairs");

    if (q.weights.size() != static_cast<std::size_t>(g.num_vertices()) ||
        q.partner.size() != 2 * static_cast<std::size_t>(g.num_edges()))
        return refuse(RefusalReason::StructureInvalid, "structure does not match the graph");
    for (int v = 0; v < g.num_vertices(); ++v) {
        for (OrientedEdge e : g.star(v)) {
            const OrientedEdge f = q.partner[e];
            if (f == e || f < 0 || f >= static_cast<OrientedEdge>(q.partner.size()) ||
                g.origin(f) != v || q.partner[f] != e)
                return refuse(RefusalReason::StructureInvalid,
                              "pairs at vertex '" + g.vertex_id(v) +
                                  "' are not a perfect matching");
        }
    }

    const auto gkm3 = check_gkm_level(g, 3);
    if (!gkm3.ok)
        return refuse(RefusalReason::NotGkm3,
                      "dependent labels at vertex '" + gkm3.witness_vertex + "'");

    std::optional<Connection> con;
    try {
        con = find_connection(g);
    } catch (const Error& err) {
        return refuse(RefusalReason::NoConnection, err.what());
    }

    const auto srep = verify_structure(g, q, *con);
    if (!srep.ok()) return refuse(RefusalReason::StructureInvalid, srep.summary());

    std::vector<TwoFace> faces;
    try {
        faces = enumerate_faces(g, *con);
    } catch (const Error& err) {
        return refuse(RefusalReason::NoConnection, err.what());
    }
    const auto hyp = check_hypotheses(g, q, *con, faces);
    if (!hyp.ok) return refuse(RefusalReason::FaceShapeViolation, hyp.witness);

    const bool has_biangle =
        std::any_of(hyp.faces.begin(), hyp.faces.end(), [](const FaceClassification& fc) {
            return fc.kind == FaceKind::QuaternionicBiangle;
        });
    return has_biangle ? detail::reconstruct_hpn(g, q, *con)
                       : detail::reconstruct_gr2(g, q, *con, hyp.faces);
}

// ---------------------------------------------------------------------------
// Lemma probes (diagnostics; classification does not depend on them)

struct ProbeReport {
    bool ok = true;
    int checked = 0;
    std::vector<std::string> findings;
};

/// Biangle propagation: a complex triangle with one edge in a quaternionic
/// biangle has all three edges in quaternionic biangles.
inline ProbeReport probe_biangle_propagation(const GkmGraph& g, const QuaternionicStructure& q,
                                             const Connection& con,
                                             const std::vector<TwoFace>& faces) {
    ProbeReport rep;
    const auto classified = classify_all_faces(g, q, con, faces);
    std::set<int> in_biangle;
    for (const auto& fc : classified)
        if (fc.kind == FaceKind::QuaternionicBiangle)
            for (OrientedEdge e : fc.face.cycle) in_biangle.insert(e >> 1);
    for (const auto& fc : classified) {
        if (fc.kind != FaceKind::ComplexTriangle) continue;
        int covered = 0;
        for (OrientedEdge e : fc.face.cycle) covered += in_biangle.count(e >> 1) ? 1 : 0;
        if (covered == 0) continue;
        ++rep.checked;
        if (covered != 3) {
            rep.ok = false;
            rep.findings.push_back("complex triangle at vertex '" +
                                   g.vertex_id(g.origin(fc.face.cycle[0])) + "' has only " +
                                   std::to_string(covered) + " of 3 edges in biangles");
        }
    }
    return rep;
}

/// Quadrangle rigidity: every length-4 face carries opposite-equal labels,
/// no quaternionic biangle coexists with a quadrangle, and no edge joins
/// opposite vertices of a quadrangle.
inline ProbeReport probe_quadrangle_rigidity(const GkmGraph& g, const QuaternionicStructure& q,
                                             const Connection& con,
                                             const std::vector<TwoFace>& faces) {
    ProbeReport rep;
    const auto classified = classify_all_faces(g, q, con, faces);
    const bool any_biangle =
        std::any_of(classified.begin(), classified.end(), [](const FaceClassification& fc) {
            return fc.kind == FaceKind::QuaternionicBiangle;
        });
    for (const auto& fc : classified) {
        if (fc.length != 4) continue;
        ++rep.checked;
        const auto& cy = fc.face.cycle;
        auto describe = [&]() {
            return "quadrangle at vertex '" + g.vertex_id(g.origin(cy[0])) + "'";
        };
        if (!(g.label(cy[0]) == g.label(cy[2]) && g.label(cy[1]) == g.label(cy[3]))) {
            rep.ok = false;
            rep.findings.push_back(describe() + " has unequal opposite labels");
        }
        if (any_biangle) {
            rep.ok = false;
            rep.findings.push_back(describe() + " coexists with a quaternionic biangle");
        }
        if (detail::adjacent(g, g.origin(cy[0]), g.origin(cy[2])) ||
            detail::adjacent(g, g.origin(cy[1]), g.origin(cy[3]))) {
            rep.ok = false;
            rep.findings.push_back(describe() + " has an edge between opposite vertices");
        }
    }
    return rep;
}

}  // namespace qgkm
