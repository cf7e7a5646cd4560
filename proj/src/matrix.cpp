#include "adscausal/matrix.hpp"

#include <algorithm>

namespace adscausal {

std::optional<Q> exact_sqrt(const Q& x) {
    if (sgn(x) < 0) return std::nullopt;
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Q(rn, rd);
}

MatD lower(const MatQ& m) {
    MatD r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i].get_d();
    return r;
}

std::vector<double> lower(const std::vector<Q>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
    return r;
}

double max_abs(const MatD& m) {
    double r = 0;
    for (double x : m.a) r = std::max(r, std::fabs(x));
    return r;
}

double norm1(const MatD& m) {
    double r = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < m.rows; ++i) s += std::fabs(m(i, j));
        r = std::max(r, s);
    }
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(MatQ& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && is_zero(m(p, c))) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        Q inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            Q f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::vector<std::vector<Q>> nullspace(const MatQ& m0) {
    MatQ m = m0;
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Q>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Q> v(m.cols, Q(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const MatQ& m0) {
    MatQ m = m0;
    return rref(m).size();
}

std::optional<MatQ> inverse(const MatQ& m0) {
    if (m0.rows != m0.cols) return std::nullopt;
    std::size_t n = m0.rows;
    MatQ aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m0(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    MatQ inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

std::optional<std::vector<Q>> solve(const MatQ& m0, const std::vector<Q>& b) {
    MatQ aug(m0.rows, m0.cols + 1);
    for (std::size_t i = 0; i < m0.rows; ++i) {
        for (std::size_t j = 0; j < m0.cols; ++j) aug(i, j) = m0(i, j);
        aug(i, m0.cols) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == m0.cols) return std::nullopt;
    std::vector<Q> x(m0.cols, Q(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m0.cols);
    return x;
}

}  // namespace adscausal
