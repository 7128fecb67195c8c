#pragma once

/**
 * @file hilbert.hpp
 * @brief Hilbert bases of H^n, Gram-Schmidt over H or C_iota, left scalar
 *        multiplication and the slice subspaces H_+^{J iota}, H_-^{J iota}.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qspectral/error.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/quaternion.hpp"

namespace qspectral {

/// Scalar ring for orthonormalization: all of H, or a slice C_iota.
class Scalars {
public:
    static Scalars quaternions() noexcept { return Scalars(std::nullopt); }
    static Scalars slice(const ImaginaryUnit& iota) noexcept { return Scalars(iota); }

    [[nodiscard]] bool is_slice() const noexcept { return iota_.has_value(); }
    [[nodiscard]] const std::optional<ImaginaryUnit>& iota() const noexcept { return iota_; }

    /// Coefficient of b in v: <b|v> over H, its C_iota component over the slice.
    [[nodiscard]] Quaternion coefficient(const QVector& b, const QVector& v) const {
        const Quaternion p = inner(b, v);
        if (!iota_) return p;
        const Quaternion u = iota_->value();
        return Quaternion(p.w) + u * dot(p, u);
    }

private:
    explicit Scalars(std::optional<ImaginaryUnit> iota) noexcept : iota_(iota) {}
    std::optional<ImaginaryUnit> iota_;
};

namespace detail {

inline constexpr double degenerate_norm = 1e-12;
inline constexpr double reorth_threshold = 1e-10;
inline constexpr double rank_tol = 1e-10;

/// Subtracts the projections onto `basis`; a second pass runs when the leftover overlap exceeds 1e-10 relative.
inline void orthogonalize(QVector& v, std::span<const QVector> basis, const Scalars& scalars) {
    for (const auto& b : basis) v -= b * scalars.coefficient(b, v);
    double overlap = 0.0;
    for (const auto& b : basis) overlap = std::max(overlap, abs(scalars.coefficient(b, v)));
    if (overlap > reorth_threshold * norm(v))
        for (const auto& b : basis) v -= b * scalars.coefficient(b, v);
}

/**
 * Column-pivoted orthonormalization: repeatedly takes the candidate with the
 * largest residual (earliest on ties), until `count` vectors are found or the
 * best residual drops below drop_tol.
 */
inline std::vector<QVector> orthonormal_subset(std::vector<QVector> candidates, const Scalars& scalars,
                                               std::size_t count, double drop_tol) {
    std::vector<QVector> out;
    std::vector<bool> used(candidates.size(), false);
    while (out.size() < count) {
        std::size_t best = candidates.size();
        double best_norm = drop_tol;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (used[k]) continue;
            const double nk = norm(candidates[k]);
            if (nk > best_norm * (1.0 + 1e-9)) {
                best = k;
                best_norm = nk;
            }
        }
        if (best == candidates.size()) break;
        used[best] = true;
        QVector b = candidates[best];
        orthogonalize(b, out, scalars);
        const double nb = norm(b);
        if (nb <= drop_tol) continue;
        b *= 1.0 / nb;
        out.push_back(b);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (used[k]) continue;
            candidates[k] -= b * scalars.coefficient(b, candidates[k]);
        }
    }
    return out;
}

}  // namespace detail

/**
 * Modified Gram-Schmidt. Projection coefficients multiply basis vectors from
 * the right. Throws rank_deficiency naming the failing input when a vector
 * has norm < 1e-12 or lies in the span of its predecessors (residual below
 * 1e-10 of its norm).
 */
[[nodiscard]] inline std::vector<QVector> gram_schmidt(std::span<const QVector> vs,
                                                       const Scalars& scalars = Scalars::quaternions()) {
    std::vector<QVector> out;
    out.reserve(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) {
        if (k > 0 && vs[k].size() != vs[0].size()) throw dimension_error("gram_schmidt: vectors of different length");
        const double n0 = norm(vs[k]);
        if (n0 < detail::degenerate_norm) throw rank_deficiency(k, "gram_schmidt: degenerate input vector");
        QVector v = vs[k];
        detail::orthogonalize(v, out, scalars);
        const double n1 = norm(v);
        if (n1 < detail::rank_tol * n0) throw rank_deficiency(k, "gram_schmidt: input is linearly dependent");
        out.push_back(v * (1.0 / n1));
    }
    return out;
}

/// max |<z|z'> - delta| over pairs, with the C_iota-valued product when scalars is a slice.
[[nodiscard]] inline double gram_residual(std::span<const QVector> vs, const Scalars& scalars = Scalars::quaternions()) {
    double r = 0.0;
    if (!scalars.is_slice() && !vs.empty()) {
        const std::size_t len = vs.front().size();
        QMatrix v(len, vs.size());
        for (std::size_t c = 0; c < vs.size(); ++c) {
            if (vs[c].size() != len) throw dimension_error("gram_residual: vectors of different length");
            for (std::size_t k = 0; k < len; ++k) v(k, c) = vs[c][k];
        }
        const QMatrix g = adjoint(v) * v;
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = 0; b < vs.size(); ++b) r = std::max(r, abs(g(a, b) - Quaternion(a == b ? 1.0 : 0.0)));
        return r;
    }
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = 0; b < vs.size(); ++b) {
            const Quaternion g = scalars.coefficient(vs[a], vs[b]);
            r = std::max(r, abs(g - Quaternion(a == b ? 1.0 : 0.0)));
        }
    return r;
}

/// Finite Hilbert basis of H^n over H: n vectors, orthonormal up to gram_residual.
struct HilbertBasis {
    std::vector<QVector> vectors;
    double gram_residual{0.0};

    static HilbertBasis make(std::vector<QVector> vs) {
        HilbertBasis b{std::move(vs), 0.0};
        for (const auto& v : b.vectors)
            if (v.size() != b.vectors.size()) throw dimension_error("HilbertBasis: need n vectors of length n");
        b.gram_residual = qspectral::gram_residual(b.vectors);
        return b;
    }

    static HilbertBasis standard(std::size_t n) {
        std::vector<QVector> vs;
        for (std::size_t k = 0; k < n; ++k) vs.push_back(QVector::unit(n, k));
        return {std::move(vs), 0.0};
    }

    [[nodiscard]] std::size_t dim() const noexcept { return vectors.size(); }

    [[nodiscard]] bool valid(double tol) const noexcept {
        return std::all_of(vectors.begin(), vectors.end(), [&](const QVector& v) { return v.size() == vectors.size(); }) &&
               gram_residual <= tol;
    }

    void require_valid(double tol, const char* who) const {
        if (!valid(tol)) throw invalid_basis(std::string(who) + ": basis is not orthonormal");
    }
};

inline double basis_tol(std::size_t n) { return default_classify_tol(n); }

/// q u := sum_z z q <z|u>, the left multiplication induced by N.
[[nodiscard]] inline QVector left_mul(const Quaternion& q, const QVector& u, const HilbertBasis& basis) {
    basis.require_valid(basis_tol(basis.dim()), "left_mul");
    if (u.size() != basis.dim()) throw dimension_error("left_mul: vector/basis dimension mismatch");
    QVector out(u.size());
    for (const auto& z : basis.vectors) out += z * (q * inner(z, u));
    return out;
}

/// Matrix of L_q with respect to the standard coordinates.
[[nodiscard]] inline QMatrix left_mul_matrix(const Quaternion& q, const HilbertBasis& basis) {
    basis.require_valid(basis_tol(basis.dim()), "left_mul_matrix");
    const std::size_t n = basis.dim();
    std::vector<QVector> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(left_mul(q, QVector::unit(n, k), basis));
    return QMatrix::from_columns(cols);
}

/// Throws unless J* = -J and J* J = I within tol.
inline void require_complex_structure(const QMatrix& j, double tol, const char* who) {
    require_square(j, who);
    const QMatrix ja = adjoint(j);
    if (operator_norm(j + ja) > tol || operator_norm(ja * j - QMatrix::identity(j.dim())) > tol)
        throw structure_error(std::string(who) + ": J must be anti self-adjoint and unitary");
}

enum class Sign { plus, minus };

/// P_+ x = (x - J x iota)/2 and P_- x = (x + J x iota)/2.
[[nodiscard]] inline QVector project_pm(const QVector& x, const QMatrix& j, const ImaginaryUnit& iota, Sign sign,
                                        double tol) {
    require_complex_structure(j, tol, "project_pm");
    const QVector jx = apply(j, x) * iota.value();
    return (sign == Sign::plus ? x - jx : x + jx) * 0.5;
}

[[nodiscard]] inline QVector project_pm(const QVector& x, const QMatrix& j, const ImaginaryUnit& iota, Sign sign) {
    return project_pm(x, j, iota, sign, default_classify_tol(j.dim()));
}

/// C_iota-orthonormal basis {b} of H_+^{J iota}: J b = b iota.
struct SliceBasis {
    ImaginaryUnit iota;
    QMatrix J;
    std::vector<QVector> plus_vectors;

    /// {b jota}, a C_iota basis of H_-^{J iota}.
    [[nodiscard]] std::vector<QVector> minus_vectors() const {
        const Quaternion jota = SliceFrame(iota).jota().value();
        std::vector<QVector> out;
        for (const auto& b : plus_vectors) out.push_back(b * jota);
        return out;
    }
};

/**
 * Candidates e_1..e_n, e_1 jota..e_n jota are projected by P_+ and
 * orthonormalized over C_iota with pivoting; n of them survive.
 */
[[nodiscard]] inline SliceBasis slice_basis(const QMatrix& j, const ImaginaryUnit& iota, double tol) {
    require_complex_structure(j, tol, "slice_basis");
    const std::size_t n = j.dim();
    const Quaternion jota = SliceFrame(iota).jota().value();
    std::vector<QVector> candidates;
    for (std::size_t k = 0; k < n; ++k) candidates.push_back(QVector::unit(n, k));
    for (std::size_t k = 0; k < n; ++k) candidates.push_back(QVector::unit(n, k) * jota);
    for (auto& c : candidates) {
        const QVector jc = apply(j, c) * iota.value();
        c = (c - jc) * 0.5;
    }
    auto plus = detail::orthonormal_subset(std::move(candidates), Scalars::slice(iota), n, 1e-8);
    if (plus.size() != n)
        throw numerical_failure("slice_basis: found " + std::to_string(plus.size()) + " of " + std::to_string(n) +
                                " independent vectors");
    return {iota, j, std::move(plus)};
}

[[nodiscard]] inline SliceBasis slice_basis(const QMatrix& j, const ImaginaryUnit& iota) {
    return slice_basis(j, iota, default_classify_tol(j.dim()));
}

}  // namespace qspectral
