#pragma once

/**
 * @file verify.hpp
 * @brief Invariant suite behind `qspectral verify`.
 *
 * Each check yields a line
 *
 *   PASS <case> <check> value=<v> limit=<l>
 *
 * (FAIL when v > l or the check threw) and the report ends with
 * `SUMMARY checks=.. pass=.. fail=..`. Limits scale with the run tolerance:
 * 10 tol for identities, 100 tol for eigen-relations, 1000 tol for the
 * Gelfand limit, all relative to max(1, ||T||).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "qspectral/linalg.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/quaternion.hpp"
#include "qspectral/random.hpp"
#include "qspectral/spectral.hpp"

namespace qspectral {

struct Check {
    std::string subject;
    std::string name;
    double value{0.0};
    double limit{0.0};
    bool pass{false};
    std::string detail;
};

class VerifyReport {
public:
    void add(std::string subject, std::string name, double value, double limit) {
        const bool ok = std::isfinite(value) && value <= limit;
        checks_.push_back({std::move(subject), std::move(name), value, limit, ok, {}});
    }

    void add_failure(std::string subject, std::string name, std::string detail) {
        checks_.push_back({std::move(subject), std::move(name), INFINITY, 0.0, false, std::move(detail)});
    }

    [[nodiscard]] const std::vector<Check>& checks() const noexcept { return checks_; }

    [[nodiscard]] std::size_t failures() const noexcept {
        return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.pass; }));
    }

    [[nodiscard]] bool ok() const noexcept { return failures() == 0; }

    void write(std::ostream& os) const {
        char buf[64];
        for (const auto& c : checks_) {
            os << (c.pass ? "PASS " : "FAIL ") << c.subject << ' ' << c.name;
            if (c.detail.empty()) {
                std::snprintf(buf, sizeof buf, " value=%.3e limit=%.3e", c.value, c.limit);
                os << buf;
            } else {
                os << " error=\"" << c.detail << '"';
            }
            os << '\n';
        }
        os << "SUMMARY checks=" << checks_.size() << " pass=" << checks_.size() - failures() << " fail=" << failures()
           << '\n';
    }

private:
    std::vector<Check> checks_;
};

namespace detail {

template <class F>
void guarded(VerifyReport& report, const std::string& subject, const std::string& name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report.add_failure(subject, name, e.what());
    }
}

inline double max_kernel_relation(const QMatrix& t, const CircularSet& spec, const ImaginaryUnit& iota, double tol,
                                  int& missing) {
    double worst = 0.0;
    missing = 0;
    for (const auto& p : spec) {
        const Quaternion q = slice_representative(p, iota, Half::upper);
        const auto kernel = eigensphere_kernel(t, q, tol, iota);
        if (static_cast<int>(kernel.size()) != p.multiplicity) ++missing;
        for (const auto& u : kernel) worst = std::max(worst, norm(apply(t, u) - u * q));
    }
    return worst;
}

}  // namespace detail

/**
 * Checks one operator. Spectral symmetry under the adjoint is checked for
 * every input; the remaining identities need normality and are reported as
 * skipped (no line) otherwise.
 */
inline void verify_operator(VerifyReport& report, const std::string& subject, const QMatrix& t,
                            const ImaginaryUnit& iota, double tol) {
    require_square(t, "verify");
    const double scale = std::max(1.0, operator_norm(t));
    const double lim = 10.0 * tol * scale;
    const OperatorClass cls = classify(t, std::max(default_classify_tol(t.dim()), lim));

    CircularSet spec;
    detail::guarded(report, subject, "adjoint_spectrum", [&] {
        spec = point_spectrum(t, iota, tol).points;
        const auto spec_adj = point_spectrum(adjoint(t), iota, tol).points;
        const double limit = cls.normal ? lim : std::sqrt(tol) * scale;
        report.add(subject, "adjoint_spectrum", max_mismatch(spec, spec_adj), limit);
    });
    if (!cls.normal) return;

    report.add(subject, "norm_law", std::abs(spec.max_modulus() - operator_norm(t)), lim);

    detail::guarded(report, subject, "decomposition", [&] {
        const auto dec = spectral_decomposition(t, iota, std::max(default_classify_tol(t.dim()), lim));
        report.add(subject, "decomposition_residual", dec.residual, lim);
        report.add(subject, "decomposition_orthonormal", dec.basis.gram_residual, lim);
        const SliceFrame frame(iota);
        double off = 0.0;
        for (const auto& l : dec.lambdas) off = std::max(off, frame.off_slice(l));
        report.add(subject, "eigenvalues_in_slice", off, lim);
        report.add(subject, "eigenvalues_circularize",
                   max_mismatch(circularize(dec.lambdas, tol).without_zero(lim), spec.without_zero(lim)), lim);
        const QMatrix j = build_J_from_basis(dec.basis, iota, std::max(lim, basis_tol(t.dim())));
        double jz = 0.0;
        for (const auto& z : dec.basis.vectors) jz = std::max(jz, norm(apply(j, z) - z * iota.value()));
        report.add(subject, "basis_in_plus_space", jz, lim);

        const auto canon = canonicalize(dec, iota, tol);
        const QMatrix rebuilt = synthesize(canon.basis, canon.lambdas, std::max(lim, basis_tol(t.dim())));
        report.add(subject, "canonical_residual", operator_norm(t - rebuilt), lim);
        double below = 0.0;
        for (const auto& l : canon.lambdas) below = std::max(below, -dot(l, iota.value()));
        report.add(subject, "canonical_upper_half", below, lim);
    });

    detail::guarded(report, subject, "ajb", [&] {
        const auto d = ajb_decompose(t, iota, std::max(default_classify_tol(t.dim()), lim));
        const std::size_t n = t.dim();
        report.add(subject, "ajb_residual", d.residual, lim);
        report.add(subject, "ajb_A_self_adjoint", operator_norm(d.A - adjoint(d.A)), lim);
        report.add(subject, "ajb_B_positive", std::max(operator_norm(d.B - adjoint(d.B)), -min_real_eigenvalue(d.B)), lim);
        report.add(subject, "ajb_J_anti_self_adjoint", operator_norm(d.J + adjoint(d.J)), lim);
        report.add(subject, "ajb_J_unitary", operator_norm(adjoint(d.J) * d.J - QMatrix::identity(n)), lim);
        report.add(subject, "ajb_commute_AB", commutator_norm(d.A, d.B), lim * scale);
        report.add(subject, "ajb_commute_AJ", commutator_norm(d.A, d.J), lim);
        report.add(subject, "ajb_commute_BJ", commutator_norm(d.B, d.J), lim);
        const QMatrix ta = adjoint(t);
        report.add(subject, "ajb_A_unique", operator_norm(d.A - (t + ta) * 0.5), lim);
        report.add(subject, "ajb_B_unique", operator_norm(d.B - operator_abs(t - ta, tol) * 0.5), lim);
    });

    detail::guarded(report, subject, "eigensphere_kernel", [&] {
        int missing = 0;
        const double worst = detail::max_kernel_relation(t, spec, iota, tol, missing);
        report.add(subject, "eigensphere_kernel_dim", static_cast<double>(missing), 0.0);
        report.add(subject, "eigensphere_relation", worst, 10.0 * lim);
    });

    detail::guarded(report, subject, "gelfand", [&] {
        const double base = operator_norm(t);
        double worst = 0.0;
        QMatrix p = t;
        for (int k = 1; k <= 4; ++k) {
            p = p * p;
            const double r = std::pow(operator_norm(p), 1.0 / std::pow(2.0, k));
            worst = std::max(worst, std::abs(r - base));
        }
        report.add(subject, "gelfand_limit", worst, 100.0 * lim);
    });
}

/// Random normal operators U D U*, cycling through the diagonal kinds; deterministic given seed.
inline VerifyReport verify_random(std::size_t n, std::size_t count, std::uint64_t seed, const ImaginaryUnit& iota,
                                  double tol) {
    static constexpr DiagonalKind kinds[] = {DiagonalKind::generic, DiagonalKind::self_adjoint,
                                             DiagonalKind::anti_self_adjoint, DiagonalKind::unitary,
                                             DiagonalKind::anti_self_adjoint_unitary};
    VerifyReport report;
    Random rng(seed);
    for (std::size_t c = 0; c < count; ++c) {
        const auto sample = random_normal(rng, n, kinds[c % std::size(kinds)]);
        verify_operator(report, "random[" + std::to_string(c) + "]", sample.T, iota, tol);
    }
    return report;
}

}  // namespace qspectral
