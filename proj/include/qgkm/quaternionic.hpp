// Quaternionic structures on GKM graphs: a quaternionic weight per vertex
// together with a perfect matching of each edge star into quaternionic
// pairs, such that paired lifts sum to a lift of the weight and the
// connection transports weights, pairs and compatible lifts coherently.
//
// This header provides inference of the pairs from unsigned data (unique on
// GKM_3 graphs), verification of the definition, classification of 2-faces
// into quaternionic and complex ones, and construction of the compatible
// signed structure that every complex 2-face carries.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgkm/graph.hpp"
#include "qgkm/lattice.hpp"

namespace qgkm {

struct QuaternionicStructure {
    std::vector<UnsignedWeight> weights;  // per vertex, the weight lambda(v)
    std::vector<OrientedEdge> partner;    // per oriented edge, its pair at origin

    const UnsignedWeight& weight(int v) const { return weights[v]; }

    /// Pairs at v as (e, partner(e)) with e listed first in star order.
    std::vector<std::pair<OrientedEdge, OrientedEdge>> pairs_at(const GkmGraph& g, int v) const {
        std::vector<std::pair<OrientedEdge, OrientedEdge>> out;
        std::vector<bool> done(g.star(v).size(), false);
        for (std::size_t p = 0; p < g.star(v).size(); ++p) {
            if (done[p]) continue;
            const OrientedEdge e = g.star(v)[p], f = partner[e];
            done[p] = true;
            done[g.star_pos(f)] = true;
            out.emplace_back(e, f);
        }
        return out;
    }
};

namespace detail {

/// True iff there are lifts with s1*rep(a) + s2*rep(b) = ±rep(lambda).
inline bool pair_sum_admissible(const UnsignedWeight& a, const UnsignedWeight& b,
                                const UnsignedWeight& lambda) {
    for (int s1 : {+1, -1})
        for (int s2 : {+1, -1}) {
            WeightVector sum = (s1 > 0 ? a.rep() : -a.rep()) + (s2 > 0 ? b.rep() : -b.rep());
            if (sum == lambda.rep()) return true;
        }
    return false;
}

}  // namespace detail

/// Infers the quaternionic pairs from the weights alone. On a GKM_3 graph
/// the partner of each edge is unique when it exists; zero or multiple
/// admissible partners raise NoPartner/AmbiguousPartner (the latter signals
/// a GKM_3 violation or a wrong weight).
inline std::vector<OrientedEdge> infer_pairs(const GkmGraph& g,
                                             const std::vector<UnsignedWeight>& weights) {
    std::vector<OrientedEdge> partner(2 * static_cast<std::size_t>(g.num_edges()), -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& st = g.star(v);
        for (OrientedEdge e : st) {
            OrientedEdge found = -1;
            for (OrientedEdge f : st) {
                if (f == e) continue;
                if (!detail::pair_sum_admissible(g.label(e), g.label(f), weights[v])) continue;
                if (found >= 0)
                    throw Error(Errc::AmbiguousPartner,
                                "edge '" + g.edge_id(e) + "' at vertex '" + g.vertex_id(v) +
                                    "' admits several quaternionic partners");
                found = f;
            }
            if (found < 0)
                throw Error(Errc::NoPartner, "edge '" + g.edge_id(e) + "' at vertex '" +
                                                 g.vertex_id(v) +
                                                 "' has no admissible quaternionic partner");
            partner[e] = found;
        }
    }
    return partner;
}

/// The quaternionically compatible lifts at one vertex: a lift of lambda(v)
/// determined by the seed sign, and for every edge of the star the unique
/// lift solving its pair-sum equation.
struct LiftChart {
    int vertex;
    WeightVector lambda_lift;
    std::vector<WeightVector> lifts;  // aligned with g.star(vertex)

    const WeightVector& lift(const GkmGraph& g, OrientedEdge e) const {
        return lifts[g.star_pos(e)];
    }
};

/// Builds the lift chart at v. The sign assignment within each pair is
/// unique because labels at a vertex are pairwise non-proportional; if no
/// assignment solves a pair the structure is not verified at v and
/// InconsistentPair is raised.
inline LiftChart lift_chart(const GkmGraph& g, const QuaternionicStructure& q, int v, int seed) {
    LiftChart chart;
    chart.vertex = v;
    chart.lambda_lift = seed > 0 ? q.weight(v).rep() : -q.weight(v).rep();
    const auto& st = g.star(v);
    chart.lifts.assign(st.size(), WeightVector{});
    std::vector<bool> done(st.size(), false);
    for (std::size_t p = 0; p < st.size(); ++p) {
        if (done[p]) continue;
        const OrientedEdge e = st[p], f = q.partner[e];
        bool solved = false;
        for (int s1 : {+1, -1}) {
            for (int s2 : {+1, -1}) {
                WeightVector le = s1 > 0 ? g.label(e).rep() : -g.label(e).rep();
                WeightVector lf = s2 > 0 ? g.label(f).rep() : -g.label(f).rep();
                if (le + lf == chart.lambda_lift) {
                    chart.lifts[p] = std::move(le);
                    chart.lifts[g.star_pos(f)] = std::move(lf);
                    solved = true;
                    break;
                }
            }
            if (solved) break;
        }
        if (!solved)
            throw Error(Errc::InconsistentPair,
                        "pair ('" + g.edge_id(e) + "', '" + g.edge_id(f) + "') at vertex '" +
                            g.vertex_id(v) + "' has no lifts summing to the quaternionic weight");
        done[p] = true;
        done[g.star_pos(f)] = true;
    }
    return chart;
}

struct StructureReport {
    bool pair_sum_ok = true;
    bool pairs_preserved_ok = true;
    bool transport_ok = true;
    std::string pair_sum_msg;
    std::string pairs_preserved_msg;
    std::string transport_msg;

    bool ok() const { return pair_sum_ok && pairs_preserved_ok && transport_ok; }

    std::string summary() const {
        if (ok()) return "quaternionic structure verified";
        std::string s;
        if (!pair_sum_ok) s += "pair-sum: " + pair_sum_msg + "\n";
        if (!pairs_preserved_ok) s += "pairs-preserved: " + pairs_preserved_msg + "\n";
        if (!transport_ok) s += "transport: " + transport_msg + "\n";
        return s;
    }
};

/// Verifies the quaternionic structure against the definition:
/// (a) the pair-sum condition at every vertex,
/// (b) the connection maps quaternionic pairs to quaternionic pairs,
/// (c) across every oriented edge, the transported lift of the quaternionic
///     weight is compatible with -alpha(e), and the congruent lift of every
///     transported edge label lands in the chart seeded by that transported
///     weight (the commuting square of lifts).
/// Reports the first failure per category. Transport is only checked across
/// edges whose endpoint charts exist.
inline StructureReport verify_structure(const GkmGraph& g, const QuaternionicStructure& q,
                                        const Connection& con) {
    StructureReport rep;

    std::vector<std::optional<LiftChart>> charts(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        // a perfect matching needs even valence
        if (g.star(v).size() % 2 != 0) {
            if (rep.pair_sum_ok) {
                rep.pair_sum_ok = false;
                rep.pair_sum_msg = "odd valence at vertex '" + g.vertex_id(v) + "'";
            }
            continue;
        }
        try {
            charts[v] = lift_chart(g, q, v, +1);
        } catch (const Error& err) {
            if (rep.pair_sum_ok) {
                rep.pair_sum_ok = false;
                rep.pair_sum_msg = err.what();
            }
        }
    }

    for (int k = 0; k < g.num_edges() && rep.pairs_preserved_ok; ++k) {
        for (OrientedEdge e : {2 * k, 2 * k + 1}) {
            for (OrientedEdge f : g.star(g.origin(e))) {
                const OrientedEdge h = con.image(g, e, f);
                const OrientedEdge hp = con.image(g, e, q.partner[f]);
                if (q.partner[h] != hp) {
                    rep.pairs_preserved_ok = false;
                    rep.pairs_preserved_msg = "transport along " + g.oriented_name(e) +
                                              " does not respect the pair of '" + g.edge_id(f) +
                                              "'";
                    break;
                }
            }
            if (!rep.pairs_preserved_ok) break;
        }
    }

    for (int k = 0; k < g.num_edges() && rep.transport_ok; ++k) {
        for (OrientedEdge e : {2 * k, 2 * k + 1}) {
            const int vi = g.origin(e), vt = g.terminus(e);
            if (!charts[vi] || !charts[vt]) continue;
            const LiftChart& ci = *charts[vi];
            const WeightVector a = ci.lift(g, e);
            const WeightVector modulus = g.label(e).rep();

            auto fail = [&](const std::string& msg) {
                rep.transport_ok = false;
                rep.transport_msg = "across " + g.oriented_name(e) + ": " + msg;
            };

            const auto mu = congruent_lifts(q.weight(vt), ci.lambda_lift, modulus);
            if (mu.size() != 1) {
                fail(mu.empty() ? "quaternionic weight does not transport (no congruent lift)"
                                : "quaternionic weight transport is ambiguous");
                break;
            }
            const LiftChart ct = lift_chart(g, q, vt, mu[0].sign);
            if (ct.lift(g, reverse(e)) != -a) {
                fail("transported weight is not compatible with the negated edge lift");
                break;
            }
            for (OrientedEdge f : g.star(vi)) {
                if (f == e) continue;
                const OrientedEdge h = con.image(g, e, f);
                const auto bl = congruent_lifts(g.label(h), ci.lift(g, f), modulus);
                if (bl.size() != 1) {
                    fail(std::string("congruent lift of transported edge '") + g.edge_id(f) +
                         (bl.empty() ? "' does not exist" : "' is ambiguous"));
                    break;
                }
                if (bl[0].lift != ct.lift(g, h)) {
                    fail("lift of transported edge '" + g.edge_id(f) +
                         "' is not compatible with the transported weight");
                    break;
                }
            }
            if (!rep.transport_ok) break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Face classification

enum class FaceKind {
    QuaternionicBiangle,
    NoncomplexTriangle,   // quaternionic triangle, third lift returns to lambda (c = 0)
    ComplexTriangleFace,  // quaternionic triangle of complex type (c = -2)
    ComplexTriangle,
    ComplexQuadrangle,
    OtherQuaternionic,
    OtherComplex,
};

inline const char* face_kind_name(FaceKind k) {
    switch (k) {
        case FaceKind::QuaternionicBiangle: return "QuaternionicBiangle";
        case FaceKind::NoncomplexTriangle: return "NoncomplexTriangle";
        case FaceKind::ComplexTriangleFace: return "ComplexTriangleFace";
        case FaceKind::ComplexTriangle: return "ComplexTriangle";
        case FaceKind::ComplexQuadrangle: return "ComplexQuadrangle";
        case FaceKind::OtherQuaternionic: return "OtherQuaternionic";
        case FaceKind::OtherComplex: return "OtherComplex";
    }
    return "Unknown";
}

struct FaceClassification {
    TwoFace face;
    FaceKind kind;
    bool quaternionic;
    int length;
    bool opposite_equal = false;   // quadrangles: opposite edges carry equal labels
    std::optional<Int> triangle_c;  // quaternionic triangles: the transport constant
};

namespace detail {

inline void check_face_closed(const GkmGraph& g, const Connection& con, const TwoFace& face) {
    const auto& cy = face.cycle;
    const int l = face.length();
    for (int j = 0; j < l; ++j) {
        const OrientedEdge prev = cy[(j + l - 1) % l], cur = cy[j];
        if (g.terminus(prev) != g.origin(cur) ||
            con.image(g, cur, reverse(prev)) != cy[(j + 1) % l])
            throw Error(Errc::Internal, "face is not closed under the connection");
    }
}

}  // namespace detail

/// Classifies a 2-face. The face is quaternionic iff at every vertex its two
/// adjacent edges form a quaternionic pair (all-or-none for a verified
/// structure); quaternionic triangles are split into noncomplex (c = 0) and
/// complex-type (c = -2) by transporting the chart of the starting vertex.
inline FaceClassification classify_face(const TwoFace& face, const GkmGraph& g,
                                        const QuaternionicStructure& q, const Connection& con) {
    detail::check_face_closed(g, con, face);
    const auto& cy = face.cycle;
    const int l = face.length();

    int paired = 0;
    for (int j = 0; j < l; ++j) {
        const OrientedEdge into = cy[(j + l - 1) % l], out = cy[j];
        if (q.partner[out] == reverse(into)) ++paired;
    }
    if (paired != 0 && paired != l)
        throw Error(Errc::Internal,
                    "face has mixed quaternionic pairing; structure not verified");
    const bool quat = paired == l;

    FaceClassification fc{face, FaceKind::OtherComplex, quat, l, false, std::nullopt};
    if (quat) {
        if (l == 2) {
            fc.kind = FaceKind::QuaternionicBiangle;
        } else if (l == 3) {
            const int v = g.origin(cy[0]);
            const LiftChart chart = lift_chart(g, q, v, +1);
            const WeightVector a = chart.lift(g, cy[0]);
            const WeightVector& base = chart.lift(g, reverse(cy[2]));
            const auto third = congruent_lifts(g.label(cy[1]), base, g.label(cy[0]).rep());
            if (third.size() == 1) {
                if (auto c = integer_ratio(third[0].lift - chart.lambda_lift, a)) {
                    fc.triangle_c = *c;
                    if (*c == 0)
                        fc.kind = FaceKind::NoncomplexTriangle;
                    else if (*c == -2)
                        fc.kind = FaceKind::ComplexTriangleFace;
                    else
                        fc.kind = FaceKind::OtherQuaternionic;
                } else {
                    fc.kind = FaceKind::OtherQuaternionic;
                }
            } else {
                fc.kind = FaceKind::OtherQuaternionic;
            }
        } else {
            fc.kind = FaceKind::OtherQuaternionic;
        }
    } else {
        if (l == 3) {
            fc.kind = FaceKind::ComplexTriangle;
        } else if (l == 4) {
            fc.kind = FaceKind::ComplexQuadrangle;
            fc.opposite_equal =
                g.label(cy[0]) == g.label(cy[2]) && g.label(cy[1]) == g.label(cy[3]);
        } else {
            fc.kind = FaceKind::OtherComplex;
        }
    }
    return fc;
}

// ---------------------------------------------------------------------------
// Signed structures on complex faces

/// A signed structure on one complex 2-face: lifts of the axial function on
/// all of the face's oriented edges with lift(reverse(e)) = -lift(e),
/// connection-compatible along the face and quaternionically compatible with
/// the weights at every face vertex.
struct SignedFaceStructure {
    TwoFace face;
    std::map<OrientedEdge, WeightVector> lifts;
    std::vector<Int> step_constants;  // congruence constants of the construction steps

    const WeightVector& of(OrientedEdge e) const { return lifts.at(e); }
};

/// Runs the transport construction: seed a lift chart at the first face
/// vertex, walk the face propagating the quaternionic weight and the edge
/// lifts through congruences, and verify on closure that the last edge
/// returns with the seeded sign. Quaternionic faces are refused (biangles in
/// particular are never complex); a closure failure contradicts the GKM_3
/// condition and signals an inconsistent input.
inline SignedFaceStructure sign_face(const TwoFace& face, const GkmGraph& g,
                                     const QuaternionicStructure& q, const Connection& con) {
    detail::check_face_closed(g, con, face);
    const auto& cy = face.cycle;
    const int l = face.length();
    {
        int paired = 0;
        for (int j = 0; j < l; ++j)
            if (q.partner[cy[j]] == reverse(cy[(j + l - 1) % l])) ++paired;
        if (l == 2 || paired == l)
            throw Error(Errc::ValidationError,
                        l == 2 ? "a biangle does not admit a signed structure"
                               : "face is quaternionic; only complex faces carry one");
    }

    SignedFaceStructure out{face, {}, {}};
    const int v0 = g.origin(cy[0]);
    const LiftChart chart0 = lift_chart(g, q, v0, +1);
    const WeightVector beta = chart0.lift(g, reverse(cy[l - 1]));
    out.lifts[cy[0]] = chart0.lift(g, cy[0]);
    out.lifts[reverse(cy[0])] = -chart0.lift(g, cy[0]);

    WeightVector lambda = chart0.lambda_lift;
    for (int j = 0; j < l; ++j) {
        const OrientedEdge e = cy[j];
        const int w = g.terminus(e);
        const WeightVector& ae = out.lifts[e];
        const WeightVector modulus = g.label(e).rep();

        const auto mu = congruent_lifts(q.weight(w), lambda, modulus);
        if (mu.size() != 1)
            throw Error(Errc::ClosureFailure,
                        "quaternionic weight does not transport uniquely across '" +
                            g.edge_id(e) + "'");
        const LiftChart chart = lift_chart(g, q, w, mu[0].sign);
        if (chart.lift(g, reverse(e)) != -ae)
            throw Error(Errc::ClosureFailure, "transported weight at '" + g.vertex_id(w) +
                                                  "' is incompatible with the face lift of '" +
                                                  g.edge_id(e) + "'");
        lambda = chart.lambda_lift;

        if (j + 1 < l) {
            const OrientedEdge next = cy[j + 1];
            const WeightVector& prev_lift =
                j == 0 ? beta : out.lifts[reverse(cy[j - 1])];  // lift of the transported edge
            const auto step = congruent_lifts(g.label(next), prev_lift, modulus);
            if (step.size() != 1)
                throw Error(Errc::ClosureFailure, "no unique congruent lift for edge '" +
                                                      g.edge_id(next) + "' along '" +
                                                      g.edge_id(e) + "'");
            if (step[0].lift != chart.lift(g, next))
                throw Error(Errc::ClosureFailure,
                            "congruent lift of '" + g.edge_id(next) +
                                "' is not quaternionically compatible at '" + g.vertex_id(w) +
                                "'");
            out.lifts[next] = step[0].lift;
            out.lifts[reverse(next)] = -step[0].lift;
            out.step_constants.push_back(step[0].c);
        } else {
            // closing the path: the last edge must return with the seeded sign
            if (out.lifts[reverse(e)] != beta || lambda != chart0.lambda_lift)
                throw Error(Errc::ClosureFailure,
                            "signed structure does not close on face at vertex '" +
                                g.vertex_id(v0) + "'");
        }
    }
    return out;
}

}  // namespace qgkm
