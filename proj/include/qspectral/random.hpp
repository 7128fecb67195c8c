#pragma once

// Seeded generators for property sweeps: Gaussian quaternions, orthonormal
// bases and normal operators U D U* with a prescribed kind of diagonal.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qspectral/hilbert.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/quaternion.hpp"
#include "qspectral/spectral.hpp"

namespace qspectral {

class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    double gaussian() { return normal_(rng_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Quaternion quaternion() { return {gaussian(), gaussian(), gaussian(), gaussian()}; }

    Quaternion unit_quaternion() {
        for (;;) {
            const Quaternion q = quaternion();
            const double n = abs(q);
            if (n > 1e-3) return q / n;
        }
    }

    ImaginaryUnit imaginary_unit() {
        for (;;) {
            const Quaternion q{0.0, gaussian(), gaussian(), gaussian()};
            if (abs(q) > 1e-3) return ImaginaryUnit::normalized(q);
        }
    }

    QVector vector(std::size_t n) {
        QVector v(n);
        for (auto& e : v) e = quaternion();
        return v;
    }

    QMatrix matrix(std::size_t n) {
        QMatrix m(n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = quaternion();
        return m;
    }

    HilbertBasis orthonormal_basis(std::size_t n) {
        for (;;) {
            std::vector<QVector> vs;
            for (std::size_t k = 0; k < n; ++k) vs.push_back(vector(n));
            try {
                return HilbertBasis::make(gram_schmidt(vs));
            } catch (const rank_deficiency&) {
                // measure-zero event; draw again
            }
        }
    }

    std::mt19937_64& engine() noexcept { return rng_; }

private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_;
};

enum class DiagonalKind { generic, self_adjoint, anti_self_adjoint, unitary, anti_self_adjoint_unitary };

/// Eigenvalue drawn according to kind: generic quaternion, real, imaginary, unit, or unit imaginary.
inline Quaternion random_eigenvalue(Random& rng, DiagonalKind kind) {
    switch (kind) {
        case DiagonalKind::generic: return rng.quaternion();
        case DiagonalKind::self_adjoint: return Quaternion(rng.gaussian());
        case DiagonalKind::anti_self_adjoint: return Quaternion{0.0, rng.gaussian(), rng.gaussian(), rng.gaussian()};
        case DiagonalKind::unitary: return rng.unit_quaternion();
        case DiagonalKind::anti_self_adjoint_unitary: return rng.imaginary_unit().value();
    }
    return {};
}

struct NormalSample {
    QMatrix T;
    HilbertBasis basis;
    std::vector<Quaternion> lambdas;
};

/// T = U D U*, U with orthonormal random columns, D diagonal of the given kind.
inline NormalSample random_normal(Random& rng, std::size_t n, DiagonalKind kind = DiagonalKind::generic) {
    NormalSample s;
    s.basis = rng.orthonormal_basis(n);
    for (std::size_t k = 0; k < n; ++k) s.lambdas.push_back(random_eigenvalue(rng, kind));
    s.T = synthesize(s.basis, s.lambdas);
    return s;
}

}  // namespace qspectral
