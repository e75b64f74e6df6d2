// Generators for the two model graphs: quaternionic projective space HP^n
// (complete graph on n+1 vertices, all pairs joined by biangles) and the
// Grassmannian Gr_2(C^n) (Johnson-type graph on the 2-element index sets),
// each with its quaternionic structure. Generators accept arbitrary
// parameters subject to the pairwise-independence condition on the labels
// at every vertex of the resulting graph.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qgkm/graph.hpp"
#include "qgkm/quaternionic.hpp"

namespace qgkm {

enum class Model { hpn, gr2 };

struct HpnParams {
    int n = 1;
    WeightVector lambda;
    std::vector<WeightVector> alpha;  // alpha[k-1] is alpha_k, k = 1..n
};

struct Gr2Params {
    int n = 3;
    WeightVector lambda;
    std::vector<WeightVector> alpha;  // alpha[k-3] is alpha_k, k = 3..n
};

/// Parameters of the standard torus actions: HP^n in rank n+1 with
/// lambda = 2e_0, alpha_k = e_0 - e_k; Gr_2(C^n) in rank n with
/// lambda = e_1 - e_2, alpha_k = e_k - e_2.
inline HpnParams standard_hpn_params(int n) {
    if (n < 1) throw Error(Errc::DegenerateParams, "HP^n needs n >= 1");
    HpnParams p;
    p.n = n;
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    p.lambda = WeightVector(std::vector<Int>(m, 0));
    p.lambda.coords[0] = 2;
    for (int k = 1; k <= n; ++k) {
        WeightVector a(std::vector<Int>(m, 0));
        a.coords[0] = 1;
        a.coords[k] = -1;
        p.alpha.push_back(std::move(a));
    }
    return p;
}

inline Gr2Params standard_gr2_params(int n) {
    if (n < 3) throw Error(Errc::DegenerateParams, "Gr_2(C^n) needs n >= 3");
    Gr2Params p;
    p.n = n;
    const std::size_t m = static_cast<std::size_t>(n);
    p.lambda = WeightVector(std::vector<Int>(m, 0));
    p.lambda.coords[0] = 1;
    p.lambda.coords[1] = -1;
    for (int k = 3; k <= n; ++k) {
        WeightVector a(std::vector<Int>(m, 0));
        a.coords[k - 1] = 1;
        a.coords[1] = -1;
        p.alpha.push_back(std::move(a));
    }
    return p;
}

namespace detail {

inline UnsignedWeight model_label(const WeightVector& w, const std::string& where) {
    try {
        return canonicalize(w);
    } catch (const Error&) {
        throw Error(Errc::DegenerateParams, "zero weight arises " + where);
    }
}

inline void check_model_graph(const GkmGraph& g) {
    const auto rep = validate_graph(g);
    if (!rep.ok()) throw Error(Errc::DegenerateParams, rep.violations.front());
}

}  // namespace detail

/// The GKM graph of HP^n: vertices v0..vn, every pair {v_k, v_l} joined by a
/// biangle. Labels from v0 are {alpha_k, lambda - alpha_k}; between v_k and
/// v_l they are {alpha_k - alpha_l, lambda - alpha_k - alpha_l}. The
/// quaternionic weight is lambda at v0 and lambda - 2 alpha_k at v_k, and
/// the quaternionic pairs are the biangle partners.
inline std::pair<GkmGraph, QuaternionicStructure> generate_hpn(const HpnParams& p) {
    if (p.n < 1) throw Error(Errc::DegenerateParams, "HP^n needs n >= 1");
    if (static_cast<int>(p.alpha.size()) != p.n)
        throw Error(Errc::DegenerateParams, "expected n alpha parameters");
    const std::size_t m = p.lambda.size();
    for (const auto& a : p.alpha)
        if (a.size() != m) throw Error(Errc::DegenerateParams, "parameter length mismatch");

    auto alpha = [&](int k) -> const WeightVector& { return p.alpha[k - 1]; };
    std::vector<std::string> vertices;
    for (int k = 0; k <= p.n; ++k) vertices.push_back("v" + std::to_string(k));

    std::vector<EdgeSpec> edges;
    for (int k = 0; k <= p.n; ++k) {
        for (int l = k + 1; l <= p.n; ++l) {
            const std::string base = "e" + std::to_string(k) + "_" + std::to_string(l);
            const std::string at = "between v" + std::to_string(k) + " and v" + std::to_string(l);
            WeightVector first = k == 0 ? alpha(l) : alpha(k) - alpha(l);
            WeightVector second = k == 0 ? p.lambda - alpha(l) : p.lambda - alpha(k) - alpha(l);
            edges.push_back({base + "a", vertices[k], vertices[l],
                             detail::model_label(first, at)});
            edges.push_back({base + "b", vertices[k], vertices[l],
                             detail::model_label(second, at)});
        }
    }

    GkmGraph g(static_cast<int>(m), vertices, edges);
    detail::check_model_graph(g);

    QuaternionicStructure q;
    q.weights.push_back(detail::model_label(p.lambda, "as the weight at v0"));
    for (int k = 1; k <= p.n; ++k)
        q.weights.push_back(detail::model_label(p.lambda - alpha(k) - alpha(k),
                                                "as the weight at v" + std::to_string(k)));
    // edges of one biangle sit at consecutive indices and share endpoints,
    // so parallel oriented edges with equal direction bit are partners
    q.partner.assign(2 * edges.size(), -1);
    for (std::size_t t = 0; t + 1 < edges.size(); t += 2) {
        for (int d : {0, 1}) {
            q.partner[2 * t + d] = static_cast<OrientedEdge>(2 * (t + 1) + d);
            q.partner[2 * (t + 1) + d] = static_cast<OrientedEdge>(2 * t + d);
        }
    }
    return {std::move(g), std::move(q)};
}

/// The GKM graph of Gr_2(C^n): vertices v{i}{j} for 1 <= i < j <= n, with an
/// edge whenever the index sets share exactly one element. Writing tau_1 =
/// lambda, tau_2 = 0 and tau_k = alpha_k, the edge between v_A and v_B with
/// A\B = {a}, B\A = {b} is labelled tau_b - tau_a and the weight at v{i}{j}
/// is tau_i - tau_j; this reproduces the labels of the defining proposition.
/// Pairs are inferred from the weights and asserted unique.
inline std::pair<GkmGraph, QuaternionicStructure> generate_gr2(const Gr2Params& p) {
    if (p.n < 3) throw Error(Errc::DegenerateParams, "Gr_2(C^n) needs n >= 3");
    if (static_cast<int>(p.alpha.size()) != p.n - 2)
        throw Error(Errc::DegenerateParams, "expected n-2 alpha parameters");
    const std::size_t m = p.lambda.size();
    for (const auto& a : p.alpha)
        if (a.size() != m) throw Error(Errc::DegenerateParams, "parameter length mismatch");

    const WeightVector zero(std::vector<Int>(m, 0));
    auto tau = [&](int i) -> const WeightVector& {
        if (i == 1) return p.lambda;
        if (i == 2) return zero;
        return p.alpha[i - 3];
    };

    std::vector<std::pair<int, int>> sets;
    std::vector<std::string> vertices;
    for (int i = 1; i <= p.n; ++i)
        for (int j = i + 1; j <= p.n; ++j) {
            sets.emplace_back(i, j);
            vertices.push_back("v" + std::to_string(i) + std::to_string(j));
        }

    auto shared_index = [](std::pair<int, int> a, std::pair<int, int> b) -> int {
        int s = -1, count = 0;
        for (int x : {a.first, a.second})
            for (int y : {b.first, b.second})
                if (x == y) {
                    s = x;
                    ++count;
                }
        return count == 1 ? s : -1;
    };

    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            const int s = shared_index(sets[i], sets[j]);
            if (s < 0) continue;
            const int a = sets[i].first == s ? sets[i].second : sets[i].first;
            const int b = sets[j].first == s ? sets[j].second : sets[j].first;
            edges.push_back({"e" + vertices[i].substr(1) + "_" + vertices[j].substr(1),
                             vertices[i], vertices[j],
                             detail::model_label(tau(b) - tau(a), "between " + vertices[i] +
                                                                      " and " + vertices[j])});
        }
    }

    GkmGraph g(static_cast<int>(m), vertices, edges);
    detail::check_model_graph(g);

    QuaternionicStructure q;
    for (std::size_t i = 0; i < sets.size(); ++i)
        q.weights.push_back(detail::model_label(tau(sets[i].first) - tau(sets[i].second),
                                                "as the weight at " + vertices[i]));
    q.partner = infer_pairs(g, q.weights);
    return {std::move(g), std::move(q)};
}

}  // namespace qgkm
