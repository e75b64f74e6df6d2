// Multivariate polynomials with rational coefficients, just enough for the
// divisibility test behind graph cohomology: monomial maps, products, linear
// substitution, and divisibility by a linear form.

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "qgkm/lattice.hpp"

namespace qgkm {

/// Exponent vectors of all degree-d monomials in n variables, ordered
/// lexicographically. (1 empty monomial for n = 0, d = 0; none for n = 0,
/// d > 0.)
inline std::vector<std::vector<int>> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(nvars, 0);
    auto rec = [&](auto&& self, std::size_t i, int rem) -> void {
        if (i + 1 == nvars) {
            cur[i] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[i] = e;
            self(self, i + 1, rem - e);
        }
    };
    if (nvars == 0) {
        if (degree == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, degree);
    return out;
}

/// Sparse polynomial in a fixed number of variables over Q.
class Polynomial {
public:
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }

    static Polynomial constant(std::size_t nvars, Rat c) {
        Polynomial p(nvars);
        p.add_term(std::vector<int>(nvars, 0), std::move(c));
        return p;
    }

    static Polynomial variable(std::size_t nvars, std::size_t i) {
        Polynomial p(nvars);
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        p.add_term(std::move(e), Rat(1));
        return p;
    }

    /// Homogeneous linear form with the given coefficients.
    static Polynomial linear_form(const WeightVector& a) {
        Polynomial p(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.coords[i] == 0) continue;
            std::vector<int> e(a.size(), 0);
            e[i] = 1;
            p.add_term(std::move(e), Rat(a.coords[i]));
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

    void add_term(const std::vector<int>& exp, const Rat& coeff) { accumulate(exp, coeff); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.accumulate(e, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.accumulate(e, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<int> e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.accumulate(e, ca * cb);
            }
        return r;
    }

    Polynomial pow(int k) const {
        Polynomial r = constant(nvars_, Rat(1));
        for (int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    /// Substitutes x_i := images[i], a polynomial in a common new variable
    /// set; returns the composite.
    Polynomial substitute(const std::vector<Polynomial>& images) const {
        const std::size_t nnew = images.empty() ? 0 : images[0].nvars();
        Polynomial r = zero(nnew);
        for (const auto& [e, c] : terms_) {
            Polynomial t = constant(nnew, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i] > 0) t = t * images[i].pow(e[i]);
            r = r + t;
        }
        return r;
    }

private:
    void accumulate(const std::vector<int>& exp, const Rat& coeff) {
        if (coeff == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::size_t nvars_;
    std::map<std::vector<int>, Rat> terms_;
};

/// True iff p lies in the ideal generated by the linear form a, i.e. p
/// vanishes on the hyperplane a = 0. Decided by substituting an integer
/// parametrization of the hyperplane (a kernel lattice basis) and checking
/// that the pullback is identically zero; the sign of a is irrelevant.
inline bool divides_linear(const UnsignedWeight& a, const Polynomial& p) {
    if (p.is_zero()) return true;
    const auto kernel = kernel_basis(a.rep());
    std::vector<Polynomial> images;
    images.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Polynomial xi(kernel.size());
        for (std::size_t j = 0; j < kernel.size(); ++j) {
            if (kernel[j].coords[i] == 0) continue;
            std::vector<int> e(kernel.size(), 0);
            e[j] = 1;
            xi.add_term(std::move(e), Rat(kernel[j].coords[i]));
        }
        images.push_back(std::move(xi));
    }
    return p.substitute(images).is_zero();
}

}  // namespace qgkm
