#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace adscausal {

using Q = mpq_class;

inline bool is_zero(const Q& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline double to_double(const Q& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

// Exact square root of a non-negative rational, if it is one.
std::optional<Q> exact_sqrt(const Q& x);

// Small dense row-major matrix; T is Q or double.
template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, T(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (!adscausal::is_zero(x)) return false;
        return true;
    }

    Mat transpose() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }

    Mat& operator+=(const Mat& o) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (auto& x : a) x *= s;
        return *this;
    }
    friend Mat operator+(Mat x, const Mat& y) { return x += y; }
    friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
    friend Mat operator*(Mat x, const T& s) { return x *= s; }
    friend Mat operator*(const T& s, Mat x) { return x *= s; }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
        Mat r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                const T& xik = x(i, k);
                if (adscausal::is_zero(xik)) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend std::vector<T> operator*(const Mat& m, const std::vector<T>& v) {
        if (m.cols != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
        std::vector<T> r(m.rows, T(0));
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) {
                const T& mij = m(i, j);
                if (!adscausal::is_zero(mij)) r[i] += mij * v[j];
            }
        return r;
    }
};

using MatQ = Mat<Q>;
using MatD = Mat<double>;

MatD lower(const MatQ& m);
std::vector<double> lower(const std::vector<Q>& v);

double max_abs(const MatD& m);
double norm1(const MatD& m);  // max column sum

// Exact kernels.
std::vector<std::vector<Q>> nullspace(const MatQ& m);  // basis, one vector per free column
std::optional<MatQ> inverse(const MatQ& m);
std::size_t rank(const MatQ& m);
// Solve m x = b exactly; nullopt if inconsistent.
std::optional<std::vector<Q>> solve(const MatQ& m, const std::vector<Q>& b);

}  // namespace adscausal
