// The abstract GKM graph data model: a finite labelled multigraph without
// loops carrying an axial function into Z^m / ±1, plus GKM_k validation,
// computation of compatible connections, and enumeration of 2-faces
// (connection paths).

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qgkm/lattice.hpp"

namespace qgkm {

/// Oriented edge: 2*edge_index + direction (0 = stored u->v, 1 = v->u).
using OrientedEdge = int;

inline OrientedEdge reverse(OrientedEdge e) { return e ^ 1; }

struct EdgeSpec {
    std::string id;
    std::string u;
    std::string v;
    UnsignedWeight label;
};

class GkmGraph {
public:
    struct Edge {
        std::string id;
        int u;
        int v;
        UnsignedWeight label;
    };

    GkmGraph(int rank, std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges)
        : rank_(rank), vertex_ids_(std::move(vertex_ids)) {
        if (rank_ <= 0) throw Error(Errc::ValidationError, "rank must be positive");
        for (int i = 0; i < static_cast<int>(vertex_ids_.size()); ++i) {
            if (!vertex_index_.emplace(vertex_ids_[i], i).second)
                throw Error(Errc::ValidationError, "duplicate vertex id '" + vertex_ids_[i] + "'");
        }
        std::set<std::string> edge_ids;
        for (const auto& es : edges) {
            if (!edge_ids.insert(es.id).second)
                throw Error(Errc::ValidationError, "duplicate edge id '" + es.id + "'");
            if (es.label.size() != static_cast<std::size_t>(rank_))
                throw Error(Errc::ValidationError,
                            "label of edge '" + es.id + "' has wrong length");
            edges_.push_back(Edge{es.id, vertex_index(es.u), vertex_index(es.v), es.label});
        }
        star_.resize(vertex_ids_.size());
        star_pos_.resize(2 * edges_.size());
        for (int k = 0; k < static_cast<int>(edges_.size()); ++k) {
            const OrientedEdge fwd = 2 * k, bwd = 2 * k + 1;
            star_pos_[fwd] = static_cast<int>(star_[edges_[k].u].size());
            star_[edges_[k].u].push_back(fwd);
            if (edges_[k].v != edges_[k].u) {
                star_pos_[bwd] = static_cast<int>(star_[edges_[k].v].size());
                star_[edges_[k].v].push_back(bwd);
            } else {
                star_pos_[bwd] = star_pos_[fwd];  // loop; flagged by validate_graph
            }
        }
    }

    int rank() const { return rank_; }
    int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }

    int vertex_index(const std::string& id) const {
        auto it = vertex_index_.find(id);
        if (it == vertex_index_.end())
            throw Error(Errc::ValidationError, "unknown vertex id '" + id + "'");
        return it->second;
    }

    /// Initial and terminal vertex of an oriented edge.
    int origin(OrientedEdge e) const {
        const Edge& ed = edges_[e >> 1];
        return (e & 1) ? ed.v : ed.u;
    }
    int terminus(OrientedEdge e) const { return origin(reverse(e)); }

    const UnsignedWeight& label(OrientedEdge e) const { return edges_[e >> 1].label; }
    const std::string& edge_id(OrientedEdge e) const { return edges_[e >> 1].id; }
    bool is_forward(OrientedEdge e) const { return (e & 1) == 0; }

    /// Oriented edges starting at v, in edge input order.
    const std::vector<OrientedEdge>& star(int v) const { return star_[v]; }

    /// Position of e within star(origin(e)).
    int star_pos(OrientedEdge e) const { return star_pos_[e]; }

    std::string oriented_name(OrientedEdge e) const {
        return edge_id(e) + ":" + vertex_id(origin(e)) + "->" + vertex_id(terminus(e));
    }

private:
    int rank_;
    std::vector<std::string> vertex_ids_;
    std::map<std::string, int> vertex_index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<OrientedEdge>> star_;
    std::vector<int> star_pos_;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
};

/// Checks the abstract GKM graph axioms: no loops, equal valence, and
/// pairwise linear independence of the labels at every vertex. Odd valence
/// is only a warning (it rules out quaternionic pairings downstream but not
/// the graph itself).
inline ValidationReport validate_graph(const GkmGraph& g) {
    ValidationReport rep;
    for (const auto& e : g.edges())
        if (e.u == e.v) rep.violations.push_back("loop at edge '" + e.id + "'");

    int valence = -1;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const int d = static_cast<int>(g.star(v).size());
        if (valence < 0) valence = d;
        if (d != valence)
            rep.violations.push_back("vertex '" + g.vertex_id(v) + "' has valence " +
                                     std::to_string(d) + ", expected " + std::to_string(valence));
    }
    if (valence > 0 && valence % 2 != 0)
        rep.warnings.push_back("odd valence " + std::to_string(valence) +
                               ": no quaternionic pairing is possible");

    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& st = g.star(v);
        for (std::size_t i = 0; i < st.size(); ++i)
            for (std::size_t j = i + 1; j < st.size(); ++j)
                if (proportional(g.label(st[i]).rep(), g.label(st[j]).rep()))
                    rep.violations.push_back("proportional labels at vertex '" + g.vertex_id(v) +
                                             "': edges '" + g.edge_id(st[i]) + "', '" +
                                             g.edge_id(st[j]) + "'");
    }
    return rep;
}

struct GkmLevelResult {
    bool ok = true;
    std::string witness_vertex;
    std::vector<std::string> witness_edges;
};

/// True iff at every vertex every k-subset of incident labels has rank k.
inline GkmLevelResult check_gkm_level(const GkmGraph& g, int k) {
    if (k < 2) throw Error(Errc::ValidationError, "GKM level k must be at least 2");
    GkmLevelResult res;
    std::vector<int> idx;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& st = g.star(v);
        const int d = static_cast<int>(st.size());
        if (d < k) continue;
        idx.assign(k, 0);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<WeightVector> rows;
            rows.reserve(k);
            for (int i : idx) rows.push_back(g.label(st[i]).rep());
            if (rank_over_q(std::move(rows)) < k) {
                res.ok = false;
                res.witness_vertex = g.vertex_id(v);
                for (int i : idx) res.witness_edges.push_back(g.edge_id(st[i]));
                return res;
            }
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == d - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Connections

/// A compatible connection: for each oriented edge e a bijection
/// star(origin(e)) -> star(terminus(e)) with nabla_e e = reverse(e),
/// nabla_reverse(e) = nabla_e^{-1}, and the label congruence
/// alpha(nabla_e f) = ±alpha(f) mod Z*alpha(e) for every f.
class Connection {
public:
    explicit Connection(std::size_t num_oriented_edges) : images_(num_oriented_edges) {}

    OrientedEdge image(const GkmGraph& g, OrientedEdge e, OrientedEdge f) const {
        return images_[e][g.star_pos(f)];
    }

    const std::vector<OrientedEdge>& images(OrientedEdge e) const { return images_[e]; }
    std::vector<OrientedEdge>& images(OrientedEdge e) { return images_[e]; }

private:
    // images_[e][p] = image of the p-th edge of star(origin(e)).
    std::vector<std::vector<OrientedEdge>> images_;
};

inline bool connection_is_compatible(const GkmGraph& g, const Connection& con,
                                     std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int k = 0; k < g.num_edges(); ++k) {
        for (OrientedEdge e : {2 * k, 2 * k + 1}) {
            const auto& st = g.star(g.origin(e));
            const auto& img = con.images(e);
            if (img.size() != st.size()) return fail("missing images on " + g.oriented_name(e));
            if (con.image(g, e, e) != reverse(e))
                return fail("nabla_e e != reverse(e) on " + g.oriented_name(e));
            std::set<OrientedEdge> seen;
            for (std::size_t p = 0; p < st.size(); ++p) {
                const OrientedEdge f = st[p], h = img[p];
                if (g.origin(h) != g.terminus(e) || !seen.insert(h).second)
                    return fail("images of " + g.oriented_name(e) + " are not a bijection");
                if (con.image(g, reverse(e), h) != f)
                    return fail("nabla_reverse(e) is not the inverse on " + g.oriented_name(e));
                if (!unsigned_congruence(g.label(f), g.label(h), g.label(e)))
                    return fail("congruence fails for " + g.oriented_name(e) + " on edge '" +
                                g.edge_id(f) + "'");
            }
        }
    }
    return true;
}

namespace detail {

/// DFS over bijections star(origin(e))\{e} -> star(terminus(e))\{reverse(e)}
/// obeying the congruence, in star order; invokes sink(images) for each
/// complete assignment and stops early once sink returns false.
template <typename Sink>
inline void for_each_edge_bijection(const GkmGraph& g, OrientedEdge e, Sink&& sink) {
    const auto& source = g.star(g.origin(e));
    const auto& target = g.star(g.terminus(e));
    std::vector<OrientedEdge> img(source.size(), -1);
    std::vector<bool> used(target.size(), false);
    img[g.star_pos(e)] = reverse(e);
    used[g.star_pos(reverse(e))] = true;

    auto rec = [&](auto&& self, std::size_t p) -> bool {
        if (p == source.size()) return sink(img);
        if (source[p] == e) return self(self, p + 1);
        for (std::size_t q = 0; q < target.size(); ++q) {
            if (used[q]) continue;
            const OrientedEdge h = target[q];
            if (!unsigned_congruence(g.label(source[p]), g.label(h), g.label(e))) continue;
            img[p] = h;
            used[q] = true;
            if (!self(self, p + 1)) return false;
            img[p] = -1;
            used[q] = false;
        }
        return true;
    };
    rec(rec, 0);
}

}  // namespace detail

/// Number of compatible bijections for the single oriented edge e (the
/// connection axioms couple e only with reverse(e), so per-edge counts
/// decide global uniqueness). Exhaustive with congruence pruning.
inline int count_edge_bijections(const GkmGraph& g, OrientedEdge e, int cap = 1 << 20) {
    int count = 0;
    detail::for_each_edge_bijection(g, e, [&](const std::vector<OrientedEdge>&) {
        return ++count < cap;
    });
    return count;
}

/// Computes a compatible connection. For GKM_3 graphs the connection is
/// unique and found directly: the image of f under transport along e is the
/// only edge at terminus(e) other than reverse(e) whose label lies in the
/// span of alpha(e), alpha(f) and satisfies the congruence. For graphs that
/// are only GKM_2 a per-edge backtracking returns the lexicographically
/// first compatible bijection (potentially exponential per edge star).
inline Connection find_connection(const GkmGraph& g) {
    Connection con(2 * static_cast<std::size_t>(g.num_edges()));
    const bool gkm3 = check_gkm_level(g, 3).ok;

    for (int k = 0; k < g.num_edges(); ++k) {
        for (OrientedEdge e : {2 * k, 2 * k + 1}) {
            const auto& source = g.star(g.origin(e));
            const auto& target = g.star(g.terminus(e));
            auto& img = con.images(e);
            if (!gkm3) {
                if ((e & 1) != 0) {
                    // the backward orientation is the inverse of the forward one
                    img.assign(source.size(), -1);
                    const auto& fwd = con.images(reverse(e));
                    for (std::size_t p = 0; p < fwd.size(); ++p)
                        img[g.star_pos(fwd[p])] = g.star(g.terminus(e))[p];
                    continue;
                }
                bool found = false;
                detail::for_each_edge_bijection(g, e, [&](const std::vector<OrientedEdge>& b) {
                    img = b;
                    found = true;
                    return false;  // keep the first (lexicographically least) hit
                });
                if (!found)
                    throw Error(Errc::NoConnection,
                                "no compatible bijection along " + g.oriented_name(e));
                continue;
            }

            img.assign(source.size(), -1);
            for (std::size_t p = 0; p < source.size(); ++p) {
                const OrientedEdge f = source[p];
                if (f == e) {
                    img[p] = reverse(e);
                    continue;
                }
                OrientedEdge found = -1;
                for (OrientedEdge h : target) {
                    if (h == reverse(e)) continue;
                    if (rank_over_q({g.label(e).rep(), g.label(f).rep(), g.label(h).rep()}) > 2)
                        continue;
                    if (!unsigned_congruence(g.label(f), g.label(h), g.label(e))) continue;
                    if (found >= 0)
                        throw Error(Errc::Internal, "ambiguous transport along " +
                                                        g.oriented_name(e) + " of '" +
                                                        g.edge_id(f) + "'");
                    found = h;
                }
                if (found < 0)
                    throw Error(Errc::NoConnection, "no image for edge '" + g.edge_id(f) +
                                                        "' along " + g.oriented_name(e));
                img[p] = found;
            }
        }
    }

    std::string why;
    if (!connection_is_compatible(g, con, &why)) throw Error(Errc::NoConnection, why);
    return con;
}

// ---------------------------------------------------------------------------
// 2-faces (connection paths)

/// A closed connection path: oriented edges (e_1, ..., e_l) with
/// terminus(e_j) = origin(e_{j+1}) cyclically, closed under the connection
/// and stored in canonical form (lexicographically least rotation or
/// reflection of the (edge id, direction) sequence).
struct TwoFace {
    std::vector<OrientedEdge> cycle;

    int length() const { return static_cast<int>(cycle.size()); }

    /// Vertex ids along the cycle, starting at origin(cycle[0]).
    std::vector<std::string> vertex_cycle(const GkmGraph& g) const {
        std::vector<std::string> out;
        out.reserve(cycle.size());
        for (OrientedEdge e : cycle) out.push_back(g.vertex_id(g.origin(e)));
        return out;
    }

    friend bool operator==(const TwoFace& a, const TwoFace& b) { return a.cycle == b.cycle; }
};

namespace detail {

// keyed by (edge id, origin vertex id): independent of input order and of
// the stored end order of each edge
using FaceKey = std::vector<std::pair<std::string, std::string>>;

inline FaceKey face_key(const GkmGraph& g, const std::vector<OrientedEdge>& cycle) {
    FaceKey key;
    key.reserve(cycle.size());
    for (OrientedEdge e : cycle) key.emplace_back(g.edge_id(e), g.vertex_id(g.origin(e)));
    return key;
}

}  // namespace detail

/// Canonical representative of the cyclic edge sequence among all rotations
/// of both orientations, compared by (edge id, direction). Deterministic and
/// independent of vertex/edge input order.
inline TwoFace canonical_face(const GkmGraph& g, const std::vector<OrientedEdge>& cycle) {
    std::vector<OrientedEdge> best;
    detail::FaceKey best_key;
    auto consider = [&](std::vector<OrientedEdge> cand) {
        auto key = detail::face_key(g, cand);
        if (best.empty() || key < best_key) {
            best = std::move(cand);
            best_key = std::move(key);
        }
    };
    const std::size_t l = cycle.size();
    std::vector<OrientedEdge> rev(l);
    for (std::size_t i = 0; i < l; ++i) rev[i] = reverse(cycle[l - 1 - i]);
    for (std::size_t r = 0; r < l; ++r) {
        std::vector<OrientedEdge> a(l), b(l);
        for (std::size_t i = 0; i < l; ++i) {
            a[i] = cycle[(r + i) % l];
            b[i] = rev[(r + i) % l];
        }
        consider(std::move(a));
        consider(std::move(b));
    }
    return TwoFace{std::move(best)};
}

/// The connection path through the edge pair (p, c) at a common vertex, in
/// canonical form. The walk state is (p, c) with c the current edge and p
/// the reversed previous one; a step maps it to (reverse(c), nabla_c p).
/// Raises SelfIntersectingPath if the walk revisits a vertex before closing
/// (impossible on GKM_3 inputs). The optional sink receives every state on
/// the walk.
template <typename StateSink>
inline TwoFace face_through(const GkmGraph& g, const Connection& con, OrientedEdge p,
                            OrientedEdge c, StateSink&& sink) {
    const std::pair<OrientedEdge, OrientedEdge> start{p, c};
    std::vector<OrientedEdge> cycle;
    std::set<int> visited;
    const std::size_t guard = 4 * static_cast<std::size_t>(g.num_edges()) * g.num_edges() + 8;
    while (true) {
        sink(p, c);
        if (!visited.insert(g.origin(c)).second)
            throw Error(Errc::SelfIntersectingPath,
                        "connection path through '" + g.edge_id(start.first) + "', '" +
                            g.edge_id(start.second) + "' revisits vertex '" +
                            g.vertex_id(g.origin(c)) + "'");
        cycle.push_back(c);
        const OrientedEdge next = con.image(g, c, p);
        p = reverse(c);
        c = next;
        if (std::make_pair(p, c) == start) break;
        if (cycle.size() > guard)
            throw Error(Errc::Internal, "connection path failed to close");
    }
    return canonical_face(g, cycle);
}

inline TwoFace face_through(const GkmGraph& g, const Connection& con, OrientedEdge p,
                            OrientedEdge c) {
    return face_through(g, con, p, c, [](OrientedEdge, OrientedEdge) {});
}

/// Enumerates all 2-faces: every unordered pair of distinct edges at a
/// vertex lies in exactly one returned face. Faces are deduplicated via
/// their canonical form and returned sorted by it.
inline std::vector<TwoFace> enumerate_faces(const GkmGraph& g, const Connection& con) {
    std::set<std::pair<OrientedEdge, OrientedEdge>> covered;
    std::vector<TwoFace> faces;

    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& st = g.star(v);
        for (std::size_t a = 0; a < st.size(); ++a) {
            for (std::size_t b = 0; b < st.size(); ++b) {
                if (a == b) continue;
                if (covered.count({st[a], st[b]})) continue;
                faces.push_back(face_through(g, con, st[a], st[b],
                                             [&](OrientedEdge p, OrientedEdge c) {
                                                 covered.insert({p, c});
                                                 // the reversed walk covers the swap
                                                 covered.insert({c, p});
                                             }));
            }
        }
    }

    std::sort(faces.begin(), faces.end(), [&](const TwoFace& x, const TwoFace& y) {
        return detail::face_key(g, x.cycle) < detail::face_key(g, y.cycle);
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    return faces;
}

}  // namespace qgkm
