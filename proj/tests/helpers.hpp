// Shared test utilities: compact constructors and independent oracles.
// The oracles deliberately take different computational routes from the
// library (minor expansion instead of elimination, pivot substitution
// instead of kernel parametrization, q-binomial counting instead of linear
// algebra) so that agreement is meaningful.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "qgkm/graph.hpp"
#include "qgkm/lattice.hpp"
#include "qgkm/models.hpp"
#include "qgkm/polynomial.hpp"

namespace qgkm::test {

inline WeightVector wv(std::vector<long long> coords) {
    WeightVector w;
    for (long long c : coords) w.coords.push_back(Int(c));
    return w;
}

inline UnsignedWeight uw(std::vector<long long> coords) { return canonicalize(wv(coords)); }

inline GkmGraph make_graph(
    int rank, std::vector<std::string> vertices,
    std::vector<std::tuple<std::string, std::string, std::string, std::vector<long long>>>
        edges) {
    std::vector<EdgeSpec> specs;
    for (auto& [id, u, v, label] : edges) specs.push_back({id, u, v, uw(label)});
    return GkmGraph(rank, std::move(vertices), specs);
}

/// Oracle: rank as the largest k with a nonzero k x k minor (Laplace
/// expansion; no elimination involved).
inline Int minor_det(const std::vector<WeightVector>& rows, std::vector<int> ri,
                     std::vector<int> ci) {
    if (ri.empty()) return 1;
    Int det = 0;
    int sign = 1;
    for (std::size_t j = 0; j < ci.size(); ++j) {
        std::vector<int> ri2(ri.begin() + 1, ri.end());
        std::vector<int> ci2;
        for (std::size_t t = 0; t < ci.size(); ++t)
            if (t != j) ci2.push_back(ci[t]);
        det += sign * rows[ri[0]].coords[ci[j]] * minor_det(rows, ri2, ci2);
        sign = -sign;
    }
    return det;
}

inline int rank_oracle(const std::vector<WeightVector>& rows) {
    if (rows.empty()) return 0;
    const int nr = static_cast<int>(rows.size());
    const int nc = static_cast<int>(rows[0].size());
    for (int k = std::min(nr, nc); k >= 1; --k) {
        std::vector<int> ri(k), ci(k);
        auto next_subset = [](std::vector<int>& idx, int n) {
            const int k2 = static_cast<int>(idx.size());
            int pos = k2 - 1;
            while (pos >= 0 && idx[pos] == n - k2 + pos) --pos;
            if (pos < 0) return false;
            ++idx[pos];
            for (int i = pos + 1; i < k2; ++i) idx[i] = idx[i - 1] + 1;
            return true;
        };
        for (int i = 0; i < k; ++i) ri[i] = i;
        do {
            for (int i = 0; i < k; ++i) ci[i] = i;
            do {
                if (minor_det(rows, ri, ci) != 0) return k;
            } while (next_subset(ci, nc));
        } while (next_subset(ri, nr));
    }
    return 0;
}

/// Oracle: divisibility by a linear form via substitution of the pivot
/// variable x_p = -(sum of the other terms)/a_p (polynomial remainder).
inline bool divides_linear_oracle(const UnsignedWeight& a, const Polynomial& p) {
    const std::size_t m = a.size();
    std::size_t pivot = 0;
    while (a.rep().coords[pivot] == 0) ++pivot;
    const Rat ap(a.rep().coords[pivot]);
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < m; ++i) {
        if (i != pivot) {
            images.push_back(Polynomial::variable(m, i));
            continue;
        }
        Polynomial sub = Polynomial::zero(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (j == pivot || a.rep().coords[j] == 0) continue;
            std::vector<int> e(m, 0);
            e[j] = 1;
            sub.add_term(e, -Rat(a.rep().coords[j]) / ap);
        }
        images.push_back(std::move(sub));
    }
    return p.substitute(images).is_zero();
}

/// Oracle: coefficients of the Gaussian binomial [n choose 2]_q, i.e. the
/// Poincare polynomial of Gr_2(C^n) in polynomial-degree grading; counted
/// by enumerating partitions inside a 2 x (n-2) box.
inline std::vector<long long> q_binomial_n_choose_2(int n) {
    std::vector<long long> coeff(2 * (n - 2) + 1, 0);
    for (int a = 0; a <= n - 2; ++a)
        for (int b = 0; b <= a; ++b) ++coeff[a + b];
    return coeff;
}

/// Poincare polynomial of HP^n in polynomial-degree grading: 1 in every
/// even degree 0..2n.
inline std::vector<long long> hpn_poincare(int n) {
    std::vector<long long> coeff(2 * n + 1, 0);
    for (int k = 0; k <= n; ++k) coeff[2 * k] = 1;
    return coeff;
}

/// Rotates the face (or its reversal) so the walk starts with the given
/// oriented edge; the face content is unchanged.
inline TwoFace orient_face(const TwoFace& face, OrientedEdge first) {
    const int l = face.length();
    for (int variant = 0; variant < 2; ++variant) {
        std::vector<OrientedEdge> cy = face.cycle;
        if (variant == 1) {
            std::vector<OrientedEdge> rev(l);
            for (int i = 0; i < l; ++i) rev[i] = reverse(cy[l - 1 - i]);
            cy = rev;
        }
        for (int r = 0; r < l; ++r) {
            if (cy[r] != first) continue;
            std::vector<OrientedEdge> out(l);
            for (int i = 0; i < l; ++i) out[i] = cy[(r + i) % l];
            return TwoFace{out};
        }
    }
    throw std::runtime_error("oriented edge not on the face");
}

inline std::mt19937& test_rng() {
    static std::mt19937 rng(20240811u);
    return rng;
}

inline WeightVector random_vector(std::size_t m, int bound = 3) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    WeightVector w(std::vector<Int>(m, 0));
    for (auto& c : w.coords) c = dist(test_rng());
    return w;
}

inline WeightVector random_nonzero_vector(std::size_t m, int bound = 3) {
    while (true) {
        WeightVector w = random_vector(m, bound);
        if (!w.is_zero()) return w;
    }
}

/// Random valid model parameters. Draws are filtered by the generator's
/// independence precondition and additionally by the GKM_3 condition of the
/// output (pairwise independence does not imply GKM_3 for exotic draws, and
/// classification is only defined on GKM_3 graphs).
inline HpnParams random_hpn_params(int n, std::mt19937& rng, int bound = 3) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    while (true) {
        HpnParams p;
        p.n = n;
        p.lambda = WeightVector(std::vector<Int>(m, 0));
        for (auto& c : p.lambda.coords) c = dist(rng);
        for (int k = 0; k < n; ++k) {
            WeightVector a(std::vector<Int>(m, 0));
            for (auto& c : a.coords) c = dist(rng);
            p.alpha.push_back(std::move(a));
        }
        try {
            const auto [g, q] = generate_hpn(p);
            if (check_gkm_level(g, 3).ok) return p;
        } catch (const Error&) {
        }
    }
}

inline Gr2Params random_gr2_params(int n, std::mt19937& rng, int bound = 3) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    const std::size_t m = static_cast<std::size_t>(n);
    while (true) {
        Gr2Params p;
        p.n = n;
        p.lambda = WeightVector(std::vector<Int>(m, 0));
        for (auto& c : p.lambda.coords) c = dist(rng);
        for (int k = 3; k <= n; ++k) {
            WeightVector a(std::vector<Int>(m, 0));
            for (auto& c : a.coords) c = dist(rng);
            p.alpha.push_back(std::move(a));
        }
        try {
            const auto [g, q] = generate_gr2(p);
            if (check_gkm_level(g, 3).ok) return p;
        } catch (const Error&) {
        }
    }
}

/// Copy of g with one edge label replaced.
inline GkmGraph with_label(const GkmGraph& g, int edge_index, const UnsignedWeight& label) {
    std::vector<EdgeSpec> specs;
    for (int k = 0; k < g.num_edges(); ++k) {
        const auto& e = g.edges()[k];
        specs.push_back({e.id, g.vertex_id(e.u), g.vertex_id(e.v),
                         k == edge_index ? label : e.label});
    }
    return GkmGraph(g.rank(), g.vertex_ids(), specs);
}

}  // namespace qgkm::test
