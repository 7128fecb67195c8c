#pragma once

/**
 * @file operator.hpp
 * @brief Operator algebra on H^n: the complex adjoint image, norms,
 *        classification, Delta_q and the operator absolute value.
 *
 * Fix a slice frame {1, iota, jota, kappa}. Every matrix splits as
 * T = A + B jota with A, B over C_iota, and
 *
 *     chi(T) = [[ A,       B      ],
 *               [ -conj B, conj A ]]
 *
 * is an injective *-homomorphism into 2n x 2n complex matrices. A vector
 * u = a + b jota is sent to [a; -conj b], so that chi(T) chi(u) = chi(T u)
 * and chi(u c) = chi(u) c for c in C_iota. All eigen and singular value
 * computations go through this image.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qspectral/error.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/quaternion.hpp"

namespace qspectral {

using cd = std::complex<double>;

struct ComplexAdjointImage {
    ImaginaryUnit iota;
    Eigen::MatrixXcd matrix;
};

[[nodiscard]] inline Eigen::MatrixXcd chi_matrix(const QMatrix& t, const SliceFrame& frame) {
    const auto r = static_cast<Eigen::Index>(t.rows());
    const auto c = static_cast<Eigen::Index>(t.cols());
    Eigen::MatrixXcd m(2 * r, 2 * c);
    for (Eigen::Index a = 0; a < r; ++a) {
        for (Eigen::Index b = 0; b < c; ++b) {
            const auto s = frame.split(t(static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
            m(a, b) = s.alpha;
            m(a, c + b) = s.beta;
            m(r + a, b) = -std::conj(s.beta);
            m(r + a, c + b) = std::conj(s.alpha);
        }
    }
    return m;
}

[[nodiscard]] inline ComplexAdjointImage chi(const QMatrix& t, const ImaginaryUnit& iota = ImaginaryUnit::i()) {
    return {iota, chi_matrix(t, SliceFrame(iota))};
}

/// Reads back A and B, averaging the two copies each block carries.
[[nodiscard]] inline QMatrix chi_inverse(const Eigen::MatrixXcd& m, const SliceFrame& frame) {
    if (m.rows() % 2 != 0 || m.cols() % 2 != 0) throw dimension_error("chi_inverse: odd block size");
    const Eigen::Index r = m.rows() / 2, c = m.cols() / 2;
    QMatrix t(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    for (Eigen::Index a = 0; a < r; ++a) {
        for (Eigen::Index b = 0; b < c; ++b) {
            const cd alpha = 0.5 * (m(a, b) + std::conj(m(r + a, c + b)));
            const cd beta = 0.5 * (m(a, c + b) - std::conj(m(r + a, b)));
            t(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = frame.join(alpha, beta);
        }
    }
    return t;
}

[[nodiscard]] inline QMatrix chi_inverse(const ComplexAdjointImage& image) {
    return chi_inverse(image.matrix, SliceFrame(image.iota));
}

/// u = a + b jota  ->  [a; -conj b]
[[nodiscard]] inline Eigen::VectorXcd chi_vector(const QVector& u, const SliceFrame& frame) {
    const auto n = static_cast<Eigen::Index>(u.size());
    Eigen::VectorXcd v(2 * n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const auto s = frame.split(u[static_cast<std::size_t>(m)]);
        v(m) = s.alpha;
        v(n + m) = -std::conj(s.beta);
    }
    return v;
}

[[nodiscard]] inline QVector chi_vector_inverse(const Eigen::VectorXcd& v, const SliceFrame& frame) {
    const Eigen::Index n = v.size() / 2;
    QVector u(static_cast<std::size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m) u[static_cast<std::size_t>(m)] = frame.join(v(m), -std::conj(v(n + m)));
    return u;
}

/// f(H) = V diag(f(h)) V^H for Hermitian H.
template <class F>
[[nodiscard]] Eigen::MatrixXcd hermitian_function(const Eigen::MatrixXcd& h, F&& f) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw numerical_failure("hermitian eigensolver did not converge");
    Eigen::VectorXcd d(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < d.size(); ++k) d(k) = f(es.eigenvalues()(k));
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

namespace detail {

inline double largest_singular_value(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() <= 16) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

}  // namespace detail

/**
 * ||T|| = sup ||T u|| / ||u||, the largest singular value of chi(T).
 * chi is isometric, so the slice used is irrelevant. Square matrices are
 * split into their diagonal blocks first.
 */
[[nodiscard]] inline double operator_norm(const QMatrix& t) {
    if (t.rows() == 0 || t.cols() == 0) return 0.0;
    const SliceFrame frame;
    if (!t.square()) return detail::largest_singular_value(chi_matrix(t, frame));
    double best = 0.0;
    for (const auto& block : diagonal_blocks(t)) {
        if (block.size() == 1) {
            best = std::max(best, abs(t(block[0], block[0])));
        } else {
            best = std::max(best, detail::largest_singular_value(chi_matrix(submatrix(t, block), frame)));
        }
    }
    return best;
}

struct OperatorClass {
    bool normal{false};
    bool self_adjoint{false};
    bool anti_self_adjoint{false};
    bool unitary{false};
    bool positive{false};
    double tol{0.0};
};

/// 1e-9 per unit of dimension.
[[nodiscard]] inline double default_classify_tol(std::size_t n) {
    return default_tol * static_cast<double>(std::max<std::size_t>(n, 1));
}

/// Smallest eigenvalue of the Hermitian chi-image of a self-adjoint T.
[[nodiscard]] inline double min_real_eigenvalue(const QMatrix& t) {
    if (t.dim() == 0) return 0.0;
    const Eigen::MatrixXcd c = chi_matrix(t, SliceFrame());
    const Eigen::MatrixXcd h = 0.5 * (c + c.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numerical_failure("hermitian eigensolver did not converge");
    return es.eigenvalues()(0);
}

[[nodiscard]] inline OperatorClass classify(const QMatrix& t, double tol) {
    require_square(t, "classify");
    const QMatrix ta = adjoint(t);
    const QMatrix i = QMatrix::identity(t.dim());
    OperatorClass c;
    c.tol = tol;
    c.normal = operator_norm(t * ta - ta * t) <= tol;
    c.self_adjoint = operator_norm(t - ta) <= tol;
    c.anti_self_adjoint = operator_norm(t + ta) <= tol;
    c.unitary = operator_norm(ta * t - i) <= tol;
    // self-adjoint spectra are real, so im <= tol holds automatically
    c.positive = c.self_adjoint && min_real_eigenvalue(t) >= -tol;
    return c;
}

[[nodiscard]] inline OperatorClass classify(const QMatrix& t) { return classify(t, default_classify_tol(t.dim())); }

/// Delta_q(T) = T^2 - T (q + conj q) + I |q|^2; both coefficients are real.
[[nodiscard]] inline QMatrix delta_q(const QMatrix& t, const Quaternion& q) {
    require_square(t, "delta_q");
    return t * t - t * (2.0 * q.w) + QMatrix::identity(t.dim()) * norm2(q);
}

/**
 * |S| = sqrt(S* S), from the eigendecomposition of the Hermitian
 * chi-image of S* S. Eigenvalues in [-tol ||S*S||, 0) are clamped to 0;
 * anything more negative means S* S was not positive and is reported.
 */
[[nodiscard]] inline QMatrix operator_abs(const QMatrix& s, double tol = default_tol) {
    require_square(s, "operator_abs");
    if (s.dim() == 0) return {};
    const SliceFrame frame;
    const QMatrix p = adjoint(s) * s;
    const Eigen::MatrixXcd c = chi_matrix(p, frame);
    const Eigen::MatrixXcd h = 0.5 * (c + c.adjoint());
    const double scale = std::max(1.0, detail::largest_singular_value(h));
    bool negative = false;
    const Eigen::MatrixXcd r = hermitian_function(h, [&](double e) {
        if (e < -tol * scale) negative = true;
        return cd(std::sqrt(std::max(e, 0.0)), 0.0);
    });
    if (negative) throw numerical_failure("operator_abs: S*S has a negative eigenvalue");
    return chi_inverse(r, frame);
}

[[nodiscard]] inline double commutator_norm(const QMatrix& a, const QMatrix& b) { return operator_norm(a * b - b * a); }

}  // namespace qspectral
