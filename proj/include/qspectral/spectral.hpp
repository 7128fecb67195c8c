#pragma once

/**
 * @file spectral.hpp
 * @brief Spherical spectra, the A + JB splitting of a normal operator, slice
 *        restriction, spectral decomposition and synthesis.
 *
 * Point spectra come from chi(T): its eigenvalues appear in conjugate pairs
 * and map onto eigenspheres (Re, |Im|). For normal T the decomposition
 * pipeline is
 *
 *   T  ->  A = (T + T*)/2,  B = |T - T*|/2,  J        (A + JB)
 *      ->  C_iota-basis {b} of H_+^{J iota}, matrix S = (<b_k|T b_m>)
 *      ->  Schur vectors of the complex normal S lifted back through {b}
 *
 * which yields an orthonormal eigenbasis N of H contained in H_+^{J iota}
 * and eigenvalues lambda_z in C_iota with T x = sum_z z lambda_z <z|x>.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qspectral/error.hpp"
#include "qspectral/hilbert.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/quaternion.hpp"

namespace qspectral {

/// In finite dimension every point is a point-spectrum point ("kind": "point").
struct SphericalSpectrum {
    CircularSet points;
    /// False means only the point spectrum is asserted, not its identification with sigma_S.
    bool normal{true};

    [[nodiscard]] const char* note() const noexcept {
        return normal ? "spherical spectrum of a normal operator"
                      : "point spectrum only; spherical spectrum classification not asserted";
    }
};

namespace detail {

/// Eigenvalues of chi(T), one CircularPoint per complex eigenvalue; 1x1 blocks are read off directly.
inline std::vector<CircularPoint> chi_eigen_points(const QMatrix& t, const SliceFrame& frame) {
    std::vector<CircularPoint> pts;
    for (const auto& block : diagonal_blocks(t)) {
        if (block.size() == 1) {
            const Quaternion& q = t(block[0], block[0]);
            pts.push_back({q.w, imag_abs(q), 2});
            continue;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(chi_matrix(submatrix(t, block), frame), false);
        if (es.info() != Eigen::Success) throw numerical_failure("point_spectrum: eigensolver did not converge");
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            const cd e = es.eigenvalues()(k);
            pts.push_back({e.real(), std::abs(e.imag()), 1});
        }
    }
    return pts;
}

/// Pairs up odd-sized clusters (closest first) so every class carries an even number of chi-eigenvalues.
inline void pair_odd_clusters(std::vector<Cluster>& cs) {
    for (;;) {
        std::size_t a = cs.size(), b = cs.size();
        double best = INFINITY;
        for (std::size_t p = 0; p < cs.size(); ++p) {
            if (cs[p].weight % 2 == 0) continue;
            for (std::size_t q = p + 1; q < cs.size(); ++q) {
                if (cs[q].weight % 2 == 0) continue;
                const double d = std::hypot(cs[p].re() - cs[q].re(), cs[p].im() - cs[q].im());
                if (d < best) {
                    best = d;
                    a = p;
                    b = q;
                }
            }
        }
        if (a == cs.size()) return;
        cs[a].re_sum += cs[b].re_sum;
        cs[a].im_sum += cs[b].im_sum;
        cs[a].weight += cs[b].weight;
        cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(b));
    }
}

inline double scale_of(const QMatrix& t) { return std::max(1.0, operator_norm(t)); }

}  // namespace detail

/**
 * Eigenvalues of chi(T) circularized: each eigensphere appears once per
 * quaternionic multiplicity (half the number of chi-eigenvalues it owns).
 * The slice only fixes the chi convention; the result is slice independent.
 */
[[nodiscard]] inline SphericalSpectrum point_spectrum(const QMatrix& t, const ImaginaryUnit& iota = ImaginaryUnit::i(),
                                                      double tol = default_tol) {
    require_square(t, "point_spectrum");
    const auto pts = detail::chi_eigen_points(t, SliceFrame(iota));
    auto clusters = detail::cluster(pts, tol);
    detail::pair_odd_clusters(clusters);
    std::vector<CircularPoint> halves;
    for (const auto& c : clusters) halves.push_back({c.re(), c.im(), c.weight / 2});
    SphericalSpectrum s;
    s.points = CircularSet::from_points(halves, tol);
    const double ctol = default_classify_tol(t.dim()) * std::max(1.0, s.points.max_modulus() * s.points.max_modulus());
    s.normal = operator_norm(t * adjoint(t) - adjoint(t) * t) <= ctol;
    return s;
}

/// r_S(T) = max |q| over the spherical spectrum.
[[nodiscard]] inline double spectral_radius(const QMatrix& t) { return point_spectrum(t).points.max_modulus(); }

/**
 * Orthonormal right-H basis of Ker Delta_q(T).
 *
 * The complex nullity of chi(Delta_q(T)) is read from its singular values
 * (threshold tol * max(1, sigma_max)) and must be even; half of it is the
 * quaternionic dimension. The basis is assembled from eigenvectors of chi(T)
 * at Re q + i|Im q| first, so for normal T each returned u satisfies
 * T u = u (Re q + iota |Im q|); remaining kernel directions (defective T)
 * are filled in from the singular vectors.
 */
[[nodiscard]] inline std::vector<QVector> eigensphere_kernel(const QMatrix& t, const Quaternion& q, double tol = default_tol,
                                                             const ImaginaryUnit& iota = ImaginaryUnit::i()) {
    require_square(t, "eigensphere_kernel");
    const std::size_t n = t.dim();
    if (n == 0) return {};
    const SliceFrame frame(iota);
    const Eigen::MatrixXcd d = chi_matrix(delta_q(t, q), frame);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thr = tol * std::max(1.0, sv(0));
    Eigen::Index nullity = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) <= thr) ++nullity;
    if (nullity == 0) return {};
    if (nullity % 2 != 0)
        throw numerical_failure("eigensphere_kernel: odd complex nullity " + std::to_string(nullity));
    const auto m = static_cast<std::size_t>(nullity / 2);

    std::vector<QVector> candidates;
    const cd qc(q.w, imag_abs(q));
    const Eigen::MatrixXcd shifted = chi_matrix(t, frame) - qc * Eigen::MatrixXcd::Identity(d.rows(), d.cols());
    Eigen::JacobiSVD<Eigen::MatrixXcd> esvd(shifted, Eigen::ComputeFullV);
    const double ethr = tol * std::max(1.0, esvd.singularValues()(0));
    for (Eigen::Index k = 0; k < esvd.singularValues().size(); ++k)
        if (esvd.singularValues()(k) <= ethr) candidates.push_back(chi_vector_inverse(esvd.matrixV().col(k), frame));
    auto basis = detail::orthonormal_subset(std::move(candidates), Scalars::quaternions(), m, 1e-6);
    if (basis.size() < m) {
        // defective directions: complete from the null singular vectors of Delta_q
        std::vector<QVector> fill = basis;
        for (Eigen::Index k = sv.size() - nullity; k < sv.size(); ++k)
            fill.push_back(chi_vector_inverse(svd.matrixV().col(k), frame));
        basis = detail::orthonormal_subset(std::move(fill), Scalars::quaternions(), m, 1e-6);
    }
    if (basis.size() != m) throw numerical_failure("eigensphere_kernel: could not pair complex null vectors");
    return basis;
}

struct AJBDecomposition {
    QMatrix A;
    QMatrix B;
    QMatrix J;
    double residual{0.0};
};

namespace detail {

/// Orthonormal eigenbasis (over H) of the self-adjoint T restricted to span(kernel).
inline std::vector<QVector> diagonalize_on(const QMatrix& a, const std::vector<QVector>& kernel, double tol) {
    const std::size_t k = kernel.size();
    if (k == 0) return {};
    QMatrix m(k);
    for (std::size_t r = 0; r < k; ++r) {
        const QVector ar = apply(a, kernel[r]);
        for (std::size_t c = 0; c < k; ++c) m(c, r) = inner(kernel[c], ar);
    }
    const SliceFrame frame;
    const Eigen::MatrixXcd c = chi_matrix(m, frame);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (c + c.adjoint()));
    if (es.info() != Eigen::Success) throw numerical_failure("ajb_decompose: kernel eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    std::vector<QVector> out;
    Eigen::Index start = 0;
    while (start < ev.size()) {
        Eigen::Index stop = start + 1;
        while (stop < ev.size() && ev(stop) - ev(stop - 1) <= tol) ++stop;
        std::vector<QVector> cands;
        for (Eigen::Index col = start; col < stop; ++col) {
            const QVector w = chi_vector_inverse(es.eigenvectors().col(col), frame);
            QVector lifted(kernel.front().size());
            for (std::size_t l = 0; l < k; ++l) lifted += kernel[l] * w[l];
            cands.push_back(lifted);
        }
        const auto want = static_cast<std::size_t>(stop - start) / 2;
        auto got = orthonormal_subset(std::move(cands), Scalars::quaternions(), want, 1e-6);
        for (auto& g : got) {
            orthogonalize(g, out, Scalars::quaternions());
            out.push_back(g * (1.0 / norm(g)));
        }
        start = stop;
    }
    if (out.size() != k) throw numerical_failure("ajb_decompose: kernel eigenbasis has wrong size");
    return out;
}

}  // namespace detail

/**
 * T = A + JB for normal T, with A = (T + T*)/2 and B = |T - T*|/2.
 *
 * |T - T*| and J = (T - T*)|T - T*|^+ are both read off one Hermitian
 * eigendecomposition of i chi(T - T*), so eigenvalues near zero keep full
 * precision. Eigenvalues below n * max(1e-12 ||T - T*||, 1e-13 ||T||) count
 * as kernel. On
 * Ker(T - T*) J is set to z -> z iota on an orthonormal eigenbasis of A
 * restricted to the kernel, which keeps J commuting with T; that extension
 * is a choice, J is only determined by T off the kernel.
 */
[[nodiscard]] inline AJBDecomposition ajb_decompose(const QMatrix& t, const ImaginaryUnit& iota, double tol) {
    require_square(t, "ajb_decompose");
    const std::size_t n = t.dim();
    const QMatrix ta = adjoint(t);
    if (operator_norm(t * ta - ta * t) > tol * std::max(1.0, operator_norm(t) * operator_norm(t)))
        throw structure_error("ajb_decompose: operator is not normal");

    AJBDecomposition out;
    out.A = (t + ta) * 0.5;
    const QMatrix s = t - ta;
    const SliceFrame frame(iota);
    const Eigen::MatrixXcd cs = chi_matrix(s, frame);
    const Eigen::MatrixXcd h = cd(0.0, 0.5) * (cs - cs.adjoint());  // i chi(S), Hermitian
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw numerical_failure("ajb_decompose: eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    const Eigen::MatrixXcd& v = es.eigenvectors();
    const double scale = ev.size() > 0 ? std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) : 0.0;
    const double thr = static_cast<double>(n) * std::max(1e-12 * scale, 1e-13 * operator_norm(t));

    Eigen::VectorXcd abs_d(ev.size()), j_d(ev.size());
    std::vector<QVector> kernel_cands;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (std::abs(ev(k)) <= thr) {
            abs_d(k) = 0.0;
            j_d(k) = 0.0;
            kernel_cands.push_back(chi_vector_inverse(v.col(k), frame));
        } else {
            abs_d(k) = std::abs(ev(k));
            // chi(S) = -i H, so S |S|^+ acts as -i sign(h)
            j_d(k) = cd(0.0, ev(k) > 0.0 ? -1.0 : 1.0);
        }
    }
    if (kernel_cands.size() % 2 != 0) throw numerical_failure("ajb_decompose: odd kernel dimension of T - T*");
    out.B = chi_inverse(v * abs_d.asDiagonal() * v.adjoint(), frame) * 0.5;
    out.J = chi_inverse(v * j_d.asDiagonal() * v.adjoint(), frame);

    const std::size_t kdim = kernel_cands.size() / 2;
    auto kernel = detail::orthonormal_subset(std::move(kernel_cands), Scalars::quaternions(), kdim, 1e-6);
    if (kernel.size() != kdim) throw numerical_failure("ajb_decompose: kernel basis incomplete");
    for (const auto& z : detail::diagonalize_on(out.A, kernel, std::max(tol, 1e-9))) {
        for (std::size_t r = 0; r < n; ++r) {
            if (z[r] == Quaternion{}) continue;
            const Quaternion zr = z[r] * iota.value();
            for (std::size_t c = 0; c < n; ++c) out.J(r, c) += zr * conj(z[c]);
        }
    }
    out.residual = operator_norm(t - (out.A + out.J * out.B));
    return out;
}

[[nodiscard]] inline AJBDecomposition ajb_decompose(const QMatrix& t, const ImaginaryUnit& iota = ImaginaryUnit::i()) {
    return ajb_decompose(t, iota, default_classify_tol(t.dim()));
}

struct SliceRestriction {
    Eigen::MatrixXcd matrix;
    SliceBasis basis;
};

/**
 * The C_iota-linear operator T restricted to H_+^{J iota}, in the slice basis:
 * s_km = <b_k | T b_m>, read as a complex number.
 */
[[nodiscard]] inline SliceRestriction complex_restriction(const QMatrix& t, const AJBDecomposition& dec,
                                                          const ImaginaryUnit& iota, double tol) {
    require_square(t, "complex_restriction");
    const QMatrix ta = adjoint(t);
    const double limit = tol * detail::scale_of(t);
    if (commutator_norm(t, dec.J) > limit || commutator_norm(ta, dec.J) > limit)
        throw structure_error("complex_restriction: J does not commute with T and T*");
    SliceBasis sb = slice_basis(dec.J, iota);
    const SliceFrame frame(iota);
    const auto n = static_cast<Eigen::Index>(t.dim());
    Eigen::MatrixXcd s(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        const QVector tb = apply(t, sb.plus_vectors[static_cast<std::size_t>(m)]);
        for (Eigen::Index k = 0; k < n; ++k) s(k, m) = frame.to_complex(inner(sb.plus_vectors[static_cast<std::size_t>(k)], tb));
    }
    return {std::move(s), std::move(sb)};
}

[[nodiscard]] inline SliceRestriction complex_restriction(const QMatrix& t, const AJBDecomposition& dec,
                                                          const ImaginaryUnit& iota = ImaginaryUnit::i()) {
    return complex_restriction(t, dec, iota, 1e-8);
}

struct SpectralDecomposition {
    HilbertBasis basis;
    std::vector<Quaternion> lambdas;
    ImaginaryUnit iota;
    double residual{0.0};
};

/// T x = sum_z z lambda_z <z|x>, assembled column by column; zero entries are skipped.
[[nodiscard]] inline QMatrix synthesize(const HilbertBasis& basis, std::span<const Quaternion> lambdas, double tol) {
    if (lambdas.size() != basis.dim()) throw dimension_error("synthesize: need one eigenvalue per basis vector");
    basis.require_valid(tol, "synthesize");
    const std::size_t n = basis.dim();
    QMatrix t(n);
    std::vector<std::size_t> nz;
    for (std::size_t z = 0; z < n; ++z) {
        const QVector& v = basis.vectors[z];
        nz.clear();
        for (std::size_t r = 0; r < n; ++r)
            if (v[r] != Quaternion{}) nz.push_back(r);
        for (std::size_t r : nz) {
            const Quaternion vl = v[r] * lambdas[z];
            for (std::size_t c : nz) t(r, c) += vl * conj(v[c]);
        }
    }
    return t;
}

[[nodiscard]] inline QMatrix synthesize(const HilbertBasis& basis, std::span<const Quaternion> lambdas) {
    return synthesize(basis, lambdas, basis_tol(basis.dim()));
}

/// J x = sum_z z iota <z|x>: anti self-adjoint, unitary, and N lies in H_+^{J iota}.
[[nodiscard]] inline QMatrix build_J_from_basis(const HilbertBasis& basis, const ImaginaryUnit& iota, double tol) {
    const std::vector<Quaternion> units(basis.dim(), iota.value());
    return synthesize(basis, units, tol);
}

[[nodiscard]] inline QMatrix build_J_from_basis(const HilbertBasis& basis, const ImaginaryUnit& iota = ImaginaryUnit::i()) {
    return build_J_from_basis(basis, iota, basis_tol(basis.dim()));
}

namespace detail {

inline SpectralDecomposition decompose_block(const QMatrix& t, const ImaginaryUnit& iota, double tol) {
    const auto dec = ajb_decompose(t, iota, tol);
    const auto res = complex_restriction(t, dec, iota, std::max(tol, 1e-8));
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(res.matrix);
    if (schur.info() != Eigen::Success) throw numerical_failure("spectral_decomposition: Schur form did not converge");
    const SliceFrame frame(iota);
    const auto& u = schur.matrixU();
    const auto& tri = schur.matrixT();
    const std::size_t n = t.dim();
    SpectralDecomposition out;
    out.iota = iota;
    std::vector<QVector> zs;
    for (std::size_t m = 0; m < n; ++m) {
        QVector z(n);
        for (std::size_t k = 0; k < n; ++k)
            z += res.basis.plus_vectors[k] *
                 frame.from_complex(u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)));
        zs.push_back(std::move(z));
        out.lambdas.push_back(frame.from_complex(tri(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m))));
    }
    out.basis = HilbertBasis::make(std::move(zs));
    return out;
}

}  // namespace detail

/**
 * Eigenbasis N in H_+^{J iota} with eigenvalues in C_iota, one diagonal block
 * at a time. The Schur form of the complex normal restriction is diagonal up
 * to rounding, and its unitary factor gives the eigenvectors. Zero eigenvalues
 * are kept.
 */
[[nodiscard]] inline SpectralDecomposition spectral_decomposition(const QMatrix& t, const ImaginaryUnit& iota, double tol) {
    require_square(t, "spectral_decomposition");
    const std::size_t n = t.dim();
    SpectralDecomposition out;
    out.iota = iota;
    std::vector<QVector> zs(n, QVector(n));
    out.lambdas.assign(n, Quaternion{});
    std::size_t slot = 0;
    for (const auto& block : diagonal_blocks(t)) {
        const auto part = detail::decompose_block(submatrix(t, block), iota, tol);
        for (std::size_t m = 0; m < block.size(); ++m, ++slot) {
            QVector z(n);
            for (std::size_t r = 0; r < block.size(); ++r) z[block[r]] = part.basis.vectors[m][r];
            zs[slot] = std::move(z);
            out.lambdas[slot] = part.lambdas[m];
        }
    }
    out.basis = HilbertBasis::make(std::move(zs));
    out.residual = operator_norm(t - synthesize(out.basis, out.lambdas, std::max(1e-8, basis_tol(n))));
    return out;
}

[[nodiscard]] inline SpectralDecomposition spectral_decomposition(const QMatrix& t,
                                                                  const ImaginaryUnit& iota = ImaginaryUnit::i()) {
    return spectral_decomposition(t, iota, default_classify_tol(t.dim()));
}

/**
 * Moves every eigenvalue to the closed upper half of C_iota: z -> z mu,
 * lambda -> mu^-1 lambda mu. For lambda in the lower half mu = jota; for
 * lambda off the slice mu is the rotation taking Im lambda to iota |Im lambda|.
 * The eigen-relation and orthonormality are preserved; N now sits in
 * H_+^{J iota} union H_-^{J iota} for the original J.
 */
[[nodiscard]] inline SpectralDecomposition canonicalize(const SpectralDecomposition& dec, const ImaginaryUnit& iota,
                                                        double tol = default_tol) {
    const SliceFrame frame(iota);
    SpectralDecomposition out = dec;
    out.iota = iota;
    for (std::size_t k = 0; k < out.lambdas.size(); ++k) {
        const Quaternion lambda = out.lambdas[k];
        const Quaternion mu = rotation_to_slice(lambda, frame, tol);
        if (mu == Quaternion(1.0)) continue;
        out.basis.vectors[k] *= mu;
        out.lambdas[k] = slice_representative(to_circular(lambda), iota, Half::upper);
    }
    out.basis.gram_residual = gram_residual(out.basis.vectors);
    return out;
}

/**
 * sigma_S(P(T)) = P(sigma_S(T)) for self-adjoint T and real P (ascending
 * coefficients). Both sides are computed independently and compared as
 * circular multisets within tol * max(1, max |P(lambda)|).
 */
[[nodiscard]] inline bool spectral_map_check(const QMatrix& t, std::span<const double> coeffs, double tol = default_tol) {
    require_square(t, "spectral_map_check");
    if (operator_norm(t - adjoint(t)) > default_classify_tol(t.dim()) * detail::scale_of(t))
        throw structure_error("spectral_map_check: operator is not self-adjoint");
    const auto spec = point_spectrum(t, ImaginaryUnit::i(), tol).points;
    std::vector<CircularPoint> mapped;
    double scale = 1.0;
    for (const auto& p : spec) {
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * p.re + *it;
        mapped.push_back({v, 0.0, p.multiplicity});
        scale = std::max(scale, std::abs(v));
    }
    const double ctol = tol * scale;
    const auto rhs = CircularSet::from_points(mapped, ctol);
    const auto lhs = point_spectrum(polynomial(t, coeffs), ImaginaryUnit::i(), ctol).points;
    return approx_equal(lhs, rhs, ctol);
}

}  // namespace qspectral
