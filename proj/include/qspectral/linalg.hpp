#pragma once

/**
 * @file linalg.hpp
 * @brief Vectors in H^n and right H-linear operators as quaternionic matrices.
 *
 * H^n is a right H-module: scalars act from the right, (u q)_m = u_m q.
 * A matrix acts by (T u)_m = sum_k T_mk u_k, which is right H-linear.
 * The inner product is <u|v> = sum_m conj(u_m) v_m, right linear in v.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qspectral/error.hpp"
#include "qspectral/quaternion.hpp"

namespace qspectral {

class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t n) : v_(n) {}
    explicit QVector(std::vector<Quaternion> entries) : v_(std::move(entries)) {}
    QVector(std::initializer_list<Quaternion> entries) : v_(entries) {}

    /// Standard basis vector e_k of H^n.
    static QVector unit(std::size_t n, std::size_t k) {
        QVector e(n);
        e[k] = Quaternion(1.0);
        return e;
    }

    [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }
    [[nodiscard]] Quaternion& operator[](std::size_t k) { return v_[k]; }
    [[nodiscard]] const Quaternion& operator[](std::size_t k) const { return v_[k]; }
    [[nodiscard]] auto begin() noexcept { return v_.begin(); }
    [[nodiscard]] auto end() noexcept { return v_.end(); }
    [[nodiscard]] auto begin() const noexcept { return v_.begin(); }
    [[nodiscard]] auto end() const noexcept { return v_.end(); }
    [[nodiscard]] std::span<const Quaternion> entries() const noexcept { return v_; }

    QVector& operator+=(const QVector& o) {
        check_same(o);
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
        return *this;
    }
    QVector& operator-=(const QVector& o) {
        check_same(o);
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }
    /// Right scalar multiplication u -> u q.
    QVector& operator*=(const Quaternion& q) {
        for (auto& e : v_) e = e * q;
        return *this;
    }
    QVector& operator*=(double s) {
        for (auto& e : v_) e *= s;
        return *this;
    }

    friend QVector operator+(QVector a, const QVector& b) { return a += b; }
    friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
    friend QVector operator-(QVector a) { return a *= -1.0; }
    friend QVector operator*(QVector a, const Quaternion& q) { return a *= q; }
    friend QVector operator*(QVector a, double s) { return a *= s; }
    friend QVector operator*(double s, QVector a) { return a *= s; }

    friend bool operator==(const QVector&, const QVector&) = default;

private:
    void check_same(const QVector& o) const {
        if (o.size() != size()) throw dimension_error("QVector: length mismatch");
    }
    std::vector<Quaternion> v_;
};

/// <u|v> = sum conj(u_m) v_m
[[nodiscard]] inline Quaternion inner(const QVector& u, const QVector& v) {
    if (u.size() != v.size())
        throw dimension_error("inner: lengths " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
    Quaternion s;
    for (std::size_t m = 0; m < u.size(); ++m) s += conj(u[m]) * v[m];
    return s;
}

[[nodiscard]] inline double norm(const QVector& u) {
    double s = 0.0;
    for (const auto& e : u) s += norm2(e);
    return std::sqrt(s);
}

/// Dense row-major quaternionic matrix. Spectral routines require it square.
class QMatrix {
public:
    QMatrix() = default;
    explicit QMatrix(std::size_t n) : QMatrix(n, n) {}
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = Quaternion(1.0);
        return m;
    }

    static QMatrix diagonal(std::span<const Quaternion> d) {
        QMatrix m(d.size());
        for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
        return m;
    }
    static QMatrix diagonal(std::initializer_list<Quaternion> d) {
        return diagonal(std::span<const Quaternion>(d.begin(), d.size()));
    }

    /// Matrix whose k-th column is cols[k].
    static QMatrix from_columns(std::span<const QVector> cols) {
        if (cols.empty()) return {};
        QMatrix m(cols.front().size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (cols[c].size() != m.rows_) throw dimension_error("from_columns: ragged columns");
            for (std::size_t r = 0; r < m.rows_; ++r) m(r, c) = cols[c][r];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t dim() const noexcept { return rows_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    Quaternion& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Quaternion& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    [[nodiscard]] QVector column(std::size_t c) const {
        QVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    QMatrix& operator+=(const QMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    QMatrix& operator-=(const QMatrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    QMatrix& operator*=(double s) {
        for (auto& e : a_) e *= s;
        return *this;
    }

    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
    friend QMatrix operator-(QMatrix a) { return a *= -1.0; }
    friend QMatrix operator*(QMatrix a, double s) { return a *= s; }
    friend QMatrix operator*(double s, QMatrix a) { return a *= s; }

    /// Composition; zero entries of the left factor are skipped, which keeps block-sparse products cheap.
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("QMatrix product: inner dimensions differ");
        QMatrix c(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Quaternion& ark = a(r, k);
                if (ark == Quaternion{}) continue;
                for (std::size_t s = 0; s < b.cols_; ++s) c(r, s) += ark * b(k, s);
            }
        }
        return c;
    }

    friend bool operator==(const QMatrix&, const QMatrix&) = default;

private:
    void check_same(const QMatrix& o) const {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw dimension_error("QMatrix: shape mismatch");
    }

    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<Quaternion> a_;
};

/// (T u)_m = sum_k T_mk u_k; rectangular T allowed.
[[nodiscard]] inline QVector apply(const QMatrix& t, const QVector& u) {
    if (t.cols() != u.size()) throw dimension_error("apply: matrix/vector dimension mismatch");
    QVector out(t.rows());
    for (std::size_t m = 0; m < t.rows(); ++m) {
        Quaternion s;
        for (std::size_t k = 0; k < t.cols(); ++k) s += t(m, k) * u[k];
        out[m] = s;
    }
    return out;
}

/// (T*)_mk = conj(T_km)
[[nodiscard]] inline QMatrix adjoint(const QMatrix& t) {
    QMatrix a(t.cols(), t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < t.cols(); ++c) a(c, r) = conj(t(r, c));
    return a;
}

inline void require_square(const QMatrix& t, const char* who) {
    if (!t.square()) throw dimension_error(std::string(who) + ": matrix must be square");
}

[[nodiscard]] inline QMatrix power(const QMatrix& t, unsigned k) {
    require_square(t, "power");
    QMatrix result = QMatrix::identity(t.dim());
    QMatrix base = t;
    while (k != 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k != 0) base = base * base;
    }
    return result;
}

/// P(T) for real coefficients c_0 + c_1 X + ... (ascending order), by Horner.
[[nodiscard]] inline QMatrix polynomial(const QMatrix& t, std::span<const double> coeffs) {
    require_square(t, "polynomial");
    const std::size_t n = t.dim();
    QMatrix acc(n);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + QMatrix::identity(n) * *it;
    return acc;
}

[[nodiscard]] inline double frobenius_norm(const QMatrix& t) {
    double s = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < t.cols(); ++c) s += norm2(t(r, c));
    return std::sqrt(s);
}

/**
 * Index groups of the finest block-diagonal structure of a square matrix:
 * connected components of the graph with an edge (r, c) whenever T_rc != 0
 * or T_cr != 0. Each group is sorted ascending; groups are ordered by their
 * smallest index.
 */
[[nodiscard]] inline std::vector<std::vector<std::size_t>> diagonal_blocks(const QMatrix& t) {
    require_square(t, "diagonal_blocks");
    const std::size_t n = t.dim();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (r != c && t(r, c) != Quaternion{}) {
                const std::size_t a = find(r), b = find(c);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t root = find(k);
        if (slot[root] == n) {
            slot[root] = groups.size();
            groups.emplace_back();
        }
        groups[slot[root]].push_back(k);
    }
    return groups;
}

[[nodiscard]] inline QMatrix submatrix(const QMatrix& t, std::span<const std::size_t> idx) {
    QMatrix s(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) s(r, c) = t(idx[r], idx[c]);
    return s;
}

}  // namespace qspectral
