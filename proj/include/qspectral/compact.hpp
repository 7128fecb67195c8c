#pragma once

/**
 * @file compact.hpp
 * @brief Finite sections of compact normal operators: a finite-rank normal
 *        head plus a tail of eigenvalues lambda_n -> 0 along one slice.
 *
 * The model operator is diag(head, lambda_1, lambda_2, ...). Its truncation
 * T_N keeps lambda_1..lambda_N, and since tail moduli are non-increasing
 * ||T - T_N|| = |lambda_{N+1}|.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qspectral/error.hpp"
#include "qspectral/linalg.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/quaternion.hpp"
#include "qspectral/spectral.hpp"

namespace qspectral {

enum class TailFamily { none, harmonic, geometric };

/**
 * lambda_n = c / n (harmonic) or c r^n (geometric, |r| < 1), with the complex
 * coefficient c placed in C_slice. With `rotate` set, each lambda_n is moved
 * to a seeded random point of its own eigensphere, mu_n^-1 lambda_n mu_n.
 */
struct TailRule {
    TailFamily family{TailFamily::none};
    std::complex<double> c{0.0, 1.0};
    double r{0.5};
    ImaginaryUnit slice{};
    bool rotate{false};
    std::uint64_t seed{0};

    void validate() const {
        if (family == TailFamily::geometric && !(std::abs(r) < 1.0))
            throw domain_error("geometric tail needs |r| < 1");
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw domain_error("tail coefficient is not finite");
    }

    /// |lambda_n|, n >= 1; zero for an empty tail.
    [[nodiscard]] double modulus(std::size_t n) const {
        switch (family) {
            case TailFamily::harmonic: return std::abs(c) / static_cast<double>(n);
            case TailFamily::geometric: return std::abs(c) * std::pow(std::abs(r), static_cast<double>(n));
            case TailFamily::none: break;
        }
        return 0.0;
    }

    [[nodiscard]] Quaternion value(std::size_t n) const {
        std::complex<double> v{};
        switch (family) {
            case TailFamily::harmonic: v = c / static_cast<double>(n); break;
            case TailFamily::geometric: v = c * std::pow(r, static_cast<double>(n)); break;
            case TailFamily::none: return {};
        }
        const Quaternion base = SliceFrame(slice).from_complex(v);
        if (!rotate) return base;
        const Quaternion mu = rotation(n);
        return conj(mu) * base * mu;
    }

private:
    [[nodiscard]] Quaternion rotation(std::size_t n) const {
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(n) + 1)));
        std::normal_distribution<double> g;
        Quaternion q{g(rng), g(rng), g(rng), g(rng)};
        return q / abs(q);
    }
};

struct CompactModel {
    std::optional<QMatrix> head;
    TailRule tail;
    std::size_t N{1};
};

inline constexpr std::size_t default_max_level = 2000;

[[nodiscard]] inline std::size_t tail_length(const CompactModel& m, std::size_t level) {
    return m.tail.family == TailFamily::none ? 0 : level;
}

/// sup_{n > N} |lambda_n| = |lambda_{N+1}|.
[[nodiscard]] inline double tail_norm(const CompactModel& m, std::size_t level) {
    return m.tail.modulus(level + 1);
}

/// diag(head, lambda_1, ..., lambda_N); throws for N = 0 or N above max_level.
[[nodiscard]] inline QMatrix truncate(const CompactModel& m, std::size_t max_level = default_max_level) {
    m.tail.validate();
    if (m.N < 1) throw domain_error("truncate: truncation level must be >= 1");
    if (m.N > max_level)
        throw domain_error("truncate: level " + std::to_string(m.N) + " exceeds cap " + std::to_string(max_level));
    if (m.head) require_square(*m.head, "truncate");
    const std::size_t h = m.head ? m.head->dim() : 0;
    const std::size_t len = tail_length(m, m.N);
    QMatrix t(h + len);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < h; ++c) t(r, c) = (*m.head)(r, c);
    for (std::size_t n = 1; n <= len; ++n) t(h + n - 1, h + n - 1) = m.tail.value(n);
    return t;
}

inline constexpr std::size_t lambda_eps_limit = 10'000'000;

/**
 * Lambda_eps: every eigenvalue of the full (untruncated) model with
 * |lambda| >= eps, head eigenvalues first, then lambda_1, lambda_2, ...
 */
[[nodiscard]] inline std::vector<Quaternion> lambda_eps(const CompactModel& m, double eps) {
    if (!(eps > 0.0)) throw domain_error("lambda_eps: eps must be positive");
    m.tail.validate();
    std::vector<Quaternion> out;
    if (m.head && m.head->dim() > 0) {
        for (const auto& l : spectral_decomposition(*m.head, m.tail.slice).lambdas)
            if (abs(l) >= eps) out.push_back(l);
    }
    if (m.tail.family == TailFamily::none) return out;
    for (std::size_t n = 1; m.tail.modulus(n) >= eps; ++n) {
        if (n > lambda_eps_limit) throw domain_error("lambda_eps: eps too small for an explicit list");
        out.push_back(m.tail.value(n));
    }
    return out;
}

struct TruncationReport {
    std::size_t N{0};
    double tail_norm{0.0};
    CircularSet spectrum;
    double min_modulus{0.0};
    double operator_norm{0.0};
    double max_modulus{0.0};
    /// ||T_N|| = max |lambda| within 1e-10 relative.
    bool norm_law{false};
    /// min_modulus did not increase relative to the previous level.
    bool min_modulus_monotone{true};
    /// Eigenspheres above the previous tail norm kept their multiplicity.
    bool multiplicities_stable{true};

    [[nodiscard]] bool ok() const noexcept { return norm_law && min_modulus_monotone && multiplicities_stable; }
};

/// Evaluates each finite section against the compact-operator laws; levels must increase strictly.
[[nodiscard]] inline std::vector<TruncationReport> verify_compact_laws(const CompactModel& model,
                                                                       std::span<const std::size_t> levels,
                                                                       double tol = default_tol,
                                                                       std::size_t max_level = default_max_level) {
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (levels[k] <= levels[k - 1]) throw domain_error("verify_compact_laws: levels must increase");
    std::vector<TruncationReport> out;
    for (std::size_t level : levels) {
        CompactModel m = model;
        m.N = level;
        const QMatrix t = truncate(m, max_level);
        TruncationReport r;
        r.N = level;
        r.tail_norm = tail_norm(m, level);
        r.spectrum = point_spectrum(t, m.tail.slice, tol).points;
        r.min_modulus = r.spectrum.min_modulus();
        r.max_modulus = r.spectrum.max_modulus();
        r.operator_norm = operator_norm(t);
        r.norm_law = std::abs(r.operator_norm - r.max_modulus) <= 1e-10 * std::max(1.0, r.operator_norm);
        if (!out.empty()) {
            const auto& prev = out.back();
            r.min_modulus_monotone = r.min_modulus <= prev.min_modulus;
            for (const auto& p : prev.spectrum) {
                if (p.modulus() <= prev.tail_norm + tol) continue;
                const auto it = std::find_if(r.spectrum.begin(), r.spectrum.end(), [&](const CircularPoint& c) {
                    return std::abs(c.re - p.re) <= tol && std::abs(c.im - p.im) <= tol;
                });
                if (it == r.spectrum.end() || it->multiplicity != p.multiplicity) r.multiplicities_stable = false;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace qspectral
