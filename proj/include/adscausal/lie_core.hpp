#pragma once

#include "adscausal/errors.hpp"
#include "adscausal/matrix.hpp"
#include "adscausal/report.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace adscausal {

enum class LabelKind { J1, J2, Xpp, Xpm, Xmp, Xmm, X0p, X0m, Xp0, Xm0, R };

// Name of a root-basis vector.  Slice labels carry k in 3..n, R carries 3 <= i < j <= n.
struct BasisLabel {
    LabelKind kind = LabelKind::J1;
    int i = 0;
    int j = 0;

    std::string str() const;
    static BasisLabel parse(std::string_view s);  // throws std::invalid_argument
    int alpha() const;                             // ad(J1) eigenvalue
    int beta() const;                              // ad(J2) eigenvalue
    bool is_root() const { return alpha() != 0 || beta() != 0; }
    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

enum class Subspace { H, Q, K, P, HK, HP, QK, QP };
enum class Involution { Theta, Sigma, SigmaTheta };

std::string to_string(Subspace s);

struct MatrixRealization {
    MatQ eta;
    std::vector<MatQ> gens;
    std::vector<Q> base_point;
    MatQ sigma_conjugator;
};

struct Term {
    std::size_t m;
    Q v;
};

// Immutable after build_algebra; share it through AlgebraPtr.
struct Algebra {
    int n = 0;
    std::size_t dim = 0;
    std::vector<BasisLabel> labels;
    MatrixRealization rep;
    std::vector<std::vector<Term>> brackets;  // [b_i, b_j] at i*dim + j
    MatQ killing, theta_mat, sigma_mat;
    std::map<Subspace, MatQ> proj;

    // caches
    std::vector<MatQ> ad;
    std::vector<MatD> ad_f;
    std::vector<std::vector<std::pair<std::size_t, double>>> brackets_f;
    MatD killing_f, theta_f, sigma_f;
    std::map<Subspace, MatD> proj_f;
    MatQ coord_inv;  // upper-triangle matrix coordinates -> basis coefficients
    MatD coord_inv_f;

    const std::vector<Term>& terms(std::size_t i, std::size_t j) const { return brackets[i * dim + j]; }
    std::size_t index(const BasisLabel& l) const;
    std::size_t index(std::string_view label) const;
    bool has(std::string_view label) const;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr build_algebra(int n);
// Same, but memoized per n (construction is exact and not free for large n).
AlgebraPtr algebra(int n);

template <class T>
struct Element {
    const Algebra* alg = nullptr;
    std::vector<T> c;

    Element() = default;
    explicit Element(const Algebra& a) : alg(&a), c(a.dim, T(0)) {}
    Element(const Algebra& a, std::vector<T> coeffs) : alg(&a), c(std::move(coeffs)) {}

    T& operator[](std::size_t i) { return c[i]; }
    const T& operator[](std::size_t i) const { return c[i]; }
    T& operator[](std::string_view l) { return c[alg->index(l)]; }
    const T& operator[](std::string_view l) const { return c[alg->index(l)]; }

    bool is_zero() const {
        for (const auto& x : c)
            if (!adscausal::is_zero(x)) return false;
        return true;
    }

    Element& operator+=(const Element& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Element& operator-=(const Element& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    Element& operator*=(const T& s) {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend Element operator+(Element x, const Element& y) { return x += y; }
    friend Element operator-(Element x, const Element& y) { return x -= y; }
    friend Element operator-(Element x) { return x *= T(-1); }
    friend Element operator*(Element x, const T& s) { return x *= s; }
    friend Element operator*(const T& s, Element x) { return x *= s; }
    friend bool operator==(const Element& x, const Element& y) { return x.alg == y.alg && x.c == y.c; }

    void check(const Element& o) const {
        if (alg != o.alg) throw AlgebraMismatch("elements belong to different algebras");
    }
};

using ElemQ = Element<Q>;
using ElemD = Element<double>;

ElemQ basis(const Algebra& a, std::size_t i);
ElemQ basis(const Algebra& a, std::string_view label);
ElemD lower(const ElemQ& x);
std::string to_string(const ElemQ& x);  // e.g. "2*X+0:3 - X++"
double max_abs(const ElemD& x);

template <class T>
const Mat<T>& killing_matrix(const Algebra& a) {
    if constexpr (std::is_same_v<T, Q>) return a.killing;
    else return a.killing_f;
}

template <class T>
Element<T> bracket(const Element<T>& x, const Element<T>& y) {
    x.check(y);
    const Algebra& a = *x.alg;
    Element<T> r(a);
    for (std::size_t i = 0; i < a.dim; ++i) {
        if (is_zero(x.c[i])) continue;
        for (std::size_t j = 0; j < a.dim; ++j) {
            if (is_zero(y.c[j])) continue;
            T xy = x.c[i] * y.c[j];
            if constexpr (std::is_same_v<T, Q>) {
                for (const auto& t : a.terms(i, j)) r.c[t.m] += xy * t.v;
            } else {
                for (const auto& [m, v] : a.brackets_f[i * a.dim + j]) r.c[m] += xy * v;
            }
        }
    }
    return r;
}

template <class T>
T killing(const Element<T>& x, const Element<T>& y) {
    x.check(y);
    const auto& B = killing_matrix<T>(*x.alg);
    T s(0);
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (is_zero(x.c[i])) continue;
        for (std::size_t j = 0; j < y.c.size(); ++j)
            if (!is_zero(B(i, j))) s += x.c[i] * B(i, j) * y.c[j];
    }
    return s;
}

// -B(x,x)/(2n); may be negative.
template <class T>
T norm2(const Element<T>& x) {
    return -killing(x, x) / T(2 * x.alg->n);
}

template <class T>
Element<T> apply_matrix(const Mat<T>& m, const Element<T>& x) {
    return Element<T>(*x.alg, m * x.c);
}

template <class T>
Element<T> apply_involution(Involution which, const Element<T>& x) {
    const Algebra& a = *x.alg;
    auto pick = [&](const MatQ& q, const MatD& d) -> const Mat<T>& {
        if constexpr (std::is_same_v<T, Q>) { (void)d; return q; }
        else { (void)q; return d; }
    };
    switch (which) {
        case Involution::Theta: return apply_matrix(pick(a.theta_mat, a.theta_f), x);
        case Involution::Sigma: return apply_matrix(pick(a.sigma_mat, a.sigma_f), x);
        case Involution::SigmaTheta:
            return apply_matrix(pick(a.sigma_mat, a.sigma_f), apply_matrix(pick(a.theta_mat, a.theta_f), x));
    }
    return x;
}

template <class T>
Element<T> project(Subspace s, const Element<T>& x) {
    const Algebra& a = *x.alg;
    if constexpr (std::is_same_v<T, Q>) return apply_matrix(a.proj.at(s), x);
    else return apply_matrix(a.proj_f.at(s), x);
}

// ad(x) as a dim x dim matrix over the root basis.
template <class T>
Mat<T> ad_matrix(const Element<T>& x) {
    const Algebra& a = *x.alg;
    Mat<T> m(a.dim, a.dim);
    for (std::size_t i = 0; i < a.dim; ++i) {
        if (is_zero(x.c[i])) continue;
        for (std::size_t j = 0; j < a.dim; ++j)
            if constexpr (std::is_same_v<T, Q>) {
                for (const auto& t : a.terms(i, j)) m(t.m, j) += x.c[i] * t.v;
            } else {
                for (const auto& [k, v] : a.brackets_f[i * a.dim + j]) m(k, j) += x.c[i] * v;
            }
    }
    return m;
}

// Defining representation on R^{n+2}.
MatQ to_matrix(const ElemQ& x);
MatD to_matrix(const ElemD& x);
ElemQ from_matrix(const Algebra& a, const MatQ& m);
ElemD from_matrix(const Algebra& a, const MatD& m);

Report verify_structure(const Algebra& a);
Report verify_structure(int n_max);

}  // namespace adscausal
