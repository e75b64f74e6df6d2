// Exact integer/rational arithmetic on weight vectors: canonical forms for
// unsigned weights (elements of Z^m up to sign), linear independence over Q,
// congruences modulo a weight, and integer kernel bases of linear forms.
//
// Everything here is immutable after construction and safe to share across
// threads. All arithmetic is arbitrary precision; there is no floating point
// anywhere in this library.

#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgkm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Error categories used across the library. CLI maps ParseError to exit
/// code 2 and everything else to exit code 1.
enum class Errc {
    ZeroWeight,
    NoConnection,
    SelfIntersectingPath,
    NoPartner,
    AmbiguousPartner,
    InconsistentPair,
    ClosureFailure,
    DegenerateParams,
    ParseError,
    ValidationError,
    Internal,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ZeroWeight: return "ZeroWeight";
        case Errc::NoConnection: return "NoConnection";
        case Errc::SelfIntersectingPath: return "SelfIntersectingPath";
        case Errc::NoPartner: return "NoPartner";
        case Errc::AmbiguousPartner: return "AmbiguousPartner";
        case Errc::InconsistentPair: return "InconsistentPair";
        case Errc::ClosureFailure: return "ClosureFailure";
        case Errc::DegenerateParams: return "DegenerateParams";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// An element of Z^m, holding lifts of weights and quaternionic weights.
struct WeightVector {
    std::vector<Int> coords;

    WeightVector() = default;
    explicit WeightVector(std::vector<Int> c) : coords(std::move(c)) {}
    WeightVector(std::initializer_list<Int> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const Int& x) { return x == 0; });
    }

    friend WeightVector operator+(const WeightVector& a, const WeightVector& b) {
        WeightVector r = a;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }

    friend WeightVector operator-(const WeightVector& a, const WeightVector& b) {
        WeightVector r = a;
        for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= b.coords[i];
        return r;
    }

    WeightVector operator-() const {
        WeightVector r = *this;
        for (auto& x : r.coords) x = -x;
        return r;
    }

    friend WeightVector operator*(const Int& s, const WeightVector& a) {
        WeightVector r = a;
        for (auto& x : r.coords) x *= s;
        return r;
    }

    friend bool operator==(const WeightVector& a, const WeightVector& b) {
        return a.coords == b.coords;
    }
    friend bool operator!=(const WeightVector& a, const WeightVector& b) { return !(a == b); }

    /// Lexicographic order; used only to make choices deterministic.
    friend bool operator<(const WeightVector& a, const WeightVector& b) {
        return std::lexicographical_compare(a.coords.begin(), a.coords.end(),
                                            b.coords.begin(), b.coords.end());
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) os << ",";
            os << coords[i];
        }
        os << ")";
        return os.str();
    }
};

/// An element of Z^m / ±1, stored through its canonical representative:
/// the first nonzero coordinate is positive. Two unsigned weights are equal
/// iff their representatives are equal.
class UnsignedWeight {
public:
    /// Canonicalizes w; throws ZeroWeight when w = 0.
    explicit UnsignedWeight(WeightVector w) : rep_(std::move(w)) {
        for (const auto& x : rep_.coords) {
            if (x != 0) {
                if (x < 0) rep_ = -rep_;
                return;
            }
        }
        throw Error(Errc::ZeroWeight, "the zero vector is not a weight");
    }

    const WeightVector& rep() const { return rep_; }
    std::size_t size() const { return rep_.size(); }

    friend bool operator==(const UnsignedWeight& a, const UnsignedWeight& b) {
        return a.rep_ == b.rep_;
    }
    friend bool operator!=(const UnsignedWeight& a, const UnsignedWeight& b) { return !(a == b); }
    friend bool operator<(const UnsignedWeight& a, const UnsignedWeight& b) {
        return a.rep_ < b.rep_;
    }

    std::string to_string() const { return rep_.to_string(); }

private:
    WeightVector rep_;
};

inline UnsignedWeight canonicalize(WeightVector w) { return UnsignedWeight(std::move(w)); }

/// True iff diff = c*a for an integer c; returns that c. a must be nonzero.
inline std::optional<Int> integer_ratio(const WeightVector& diff, const WeightVector& a) {
    std::optional<Int> c;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.coords[i] == 0) {
            if (diff.coords[i] != 0) return std::nullopt;
            continue;
        }
        Int q = diff.coords[i] / a.coords[i];
        if (q * a.coords[i] != diff.coords[i]) return std::nullopt;
        if (c && *c != q) return std::nullopt;
        c = q;
    }
    return c;  // nullopt only if a = 0, which callers exclude
}

inline bool proportional(const WeightVector& x, const WeightVector& y) {
    // x, y nonzero: proportional over Q iff x_i*y_j = x_j*y_i for all i < j.
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x.coords[i] * y.coords[j] != x.coords[j] * y.coords[i]) return false;
    return true;
}

/// Dimension over Q of the span of the given vectors. Fraction-free
/// elimination with per-row gcd reduction; sign choices are irrelevant.
inline int rank_over_q(std::vector<WeightVector> rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const WeightVector& r) { return r.is_zero(); }),
               rows.end());
    if (rows.empty()) return 0;
    const std::size_t m = rows[0].size();
    int rank = 0;
    std::size_t col = 0;
    for (std::size_t r = 0; r < rows.size() && col < m; ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv].coords[col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Int p = rows[r].coords[col];
        for (std::size_t j = r + 1; j < rows.size(); ++j) {
            const Int q = rows[j].coords[col];
            if (q == 0) continue;
            Int g = 0;
            for (std::size_t k = col; k < m; ++k) {
                rows[j].coords[k] = p * rows[j].coords[k] - q * rows[r].coords[k];
                g = boost::multiprecision::gcd(g, rows[j].coords[k]);
            }
            if (g > 1)
                for (std::size_t k = col; k < m; ++k) rows[j].coords[k] /= g;
        }
        ++r;
        ++rank;
    }
    return rank;
}

inline int rank_over_q(const std::vector<UnsignedWeight>& ws) {
    std::vector<WeightVector> rows;
    rows.reserve(ws.size());
    for (const auto& w : ws) rows.push_back(w.rep());
    return rank_over_q(std::move(rows));
}

struct Congruence {
    int sign;  // +1 or -1
    Int c;
};

/// Solves s*rep(y) = rep(x) + c*rep(a) for s in {+1,-1} and integer c.
/// The solution is unique when y is not proportional to a; when both signs
/// admit one (possible only for x, y, a pairwise proportional) the s = +1
/// solution is reported.
inline std::optional<Congruence> unsigned_congruence(const UnsignedWeight& x,
                                                     const UnsignedWeight& y,
                                                     const UnsignedWeight& a) {
    for (int s : {+1, -1}) {
        WeightVector lhs = s > 0 ? y.rep() : -y.rep();
        if (auto c = integer_ratio(lhs - x.rep(), a.rep())) return Congruence{s, *c};
    }
    return std::nullopt;
}

/// A lift of an unsigned weight congruent to a given base vector modulo a
/// modulus weight: lift = sign*rep(target) = base + c*modulus.
struct CongruentLift {
    WeightVector lift;
    Int c;
    int sign;
};

/// All lifts of `target` congruent to `base` modulo Z*`modulus`. At most one
/// exists unless target is proportional to the modulus, in which case there
/// may be two; callers that require uniqueness treat size > 1 as a failure.
inline std::vector<CongruentLift> congruent_lifts(const UnsignedWeight& target,
                                                  const WeightVector& base,
                                                  const WeightVector& modulus) {
    std::vector<CongruentLift> out;
    for (int s : {+1, -1}) {
        WeightVector lift = s > 0 ? target.rep() : -target.rep();
        if (auto c = integer_ratio(lift - base, modulus)) out.push_back({lift, *c, s});
    }
    return out;
}

/// Integer basis of the kernel lattice of the linear form a (m-1 vectors),
/// obtained by column reduction of the 1 x m matrix with a unimodular U:
/// a * U = (g, 0, ..., 0); the kernel basis is columns 1..m-1 of U.
inline std::vector<WeightVector> kernel_basis(const WeightVector& a) {
    const std::size_t m = a.size();
    std::vector<WeightVector> u(m, WeightVector(std::vector<Int>(m, 0)));
    for (std::size_t i = 0; i < m; ++i) u[i].coords[i] = 1;  // u[j] = j-th column
    std::vector<Int> w = a.coords;

    for (std::size_t i = 1; i < m; ++i) {
        if (w[i] == 0) continue;
        if (w[0] == 0) {
            std::swap(w[0], w[i]);
            std::swap(u[0], u[i]);
            continue;
        }
        // extended gcd of w[0], w[i]
        Int r0 = w[0], r1 = w[i], s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
            Int q = r0 / r1;
            r0 -= q * r1;
            std::swap(r0, r1);
            s0 -= q * s1;
            std::swap(s0, s1);
            t0 -= q * t1;
            std::swap(t0, t1);
        }
        // r0 = s0*w[0] + t0*w[i]; the complementary column keeps det(U) = ±1.
        const Int f0 = w[0] / r0, fi = w[i] / r0;
        WeightVector c0 = u[0], ci = u[i];
        u[0] = s0 * c0 + t0 * ci;
        u[i] = (-fi) * c0 + f0 * ci;
        w[0] = r0;
        w[i] = 0;
    }

    std::vector<WeightVector> basis;
    basis.reserve(m > 0 ? m - 1 : 0);
    for (std::size_t j = 1; j < m; ++j) basis.push_back(u[j]);
    return basis;
}

}  // namespace qgkm
