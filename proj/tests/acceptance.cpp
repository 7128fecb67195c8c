// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qspectral/qspectral.hpp"

using namespace qspectral;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
    int id;
    bool pass;
    std::string text;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& text) {
    lines.push_back({id, pass, text});
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Worst {
    double value{0.0};
    void see(double v) {
        if (!(v <= value)) value = v;  // NaN sticks
    }
    [[nodiscard]] bool within(double limit) const { return value <= limit; }
    [[nodiscard]] std::string str() const { return fmt("%.2e", value); }
};

constexpr std::size_t per_n = 200;
constexpr std::size_t max_n = 8;

struct Case {
    QMatrix T;
    std::vector<Quaternion> lambdas;
};

std::vector<Case> normal_corpus(std::uint64_t seed) {
    Random rng(seed);
    std::vector<Case> out;
    for (std::size_t n = 1; n <= max_n; ++n)
        for (std::size_t c = 0; c < per_n; ++c) {
            auto s = random_normal(rng, n);
            out.push_back({std::move(s.T), std::move(s.lambdas)});
        }
    return out;
}

/// Random orthonormal basis with eigenvalues on random eigenspheres; every fourth case gets a zero eigenvalue.
std::vector<Case> synthesis_corpus(std::uint64_t seed, std::size_t count) {
    Random rng(seed);
    std::vector<Case> out;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t n = 1 + c % max_n;
        const auto basis = rng.orthonormal_basis(n);
        std::vector<Quaternion> l;
        for (std::size_t k = 0; k < n; ++k) {
            const CircularPoint sphere{rng.gaussian(), std::abs(rng.gaussian()), 1};
            l.push_back(slice_representative(sphere, rng.imaginary_unit(), Half::upper));
        }
        if (c % 4 == 3) l[0] = Quaternion{};
        out.push_back({synthesize(basis, l), l});
    }
    return out;
}

double normality_defect(const QMatrix& t) {
    const QMatrix ta = adjoint(t);
    return operator_norm(t * ta - ta * t);
}

struct Criterion1 {
    Worst gap;
    double time{0.0};
    std::vector<CircularSet> spectra;
};

Criterion1 run_criterion1(const std::vector<Case>& corpus, const ImaginaryUnit& iota) {
    Criterion1 r;
    const auto t0 = Clock::now();
    for (const auto& c : corpus) {
        auto s = point_spectrum(c.T, iota).points;
        r.gap.see(std::abs(s.max_modulus() - operator_norm(c.T)));
        r.spectra.push_back(std::move(s));
    }
    r.time = seconds_since(t0);
    return r;
}

struct Criterion2 {
    Worst residual, off_slice, circular, plus_space;
    std::vector<CircularSet> lambda_sets;
};

Criterion2 run_criterion2(const std::vector<Case>& corpus, const std::vector<CircularSet>& spectra,
                          const ImaginaryUnit& iota) {
    Criterion2 r;
    const SliceFrame frame(iota);
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const auto& t = corpus[k].T;
        try {
            const auto d = spectral_decomposition(t, iota);
            r.residual.see(d.residual);
            for (const auto& l : d.lambdas) r.off_slice.see(frame.off_slice(l));
            auto ls = circularize(d.lambdas).without_zero(1e-8);
            r.circular.see(approx_equal(ls, spectra[k].without_zero(1e-8), 1e-8) ? max_mismatch(ls, spectra[k].without_zero(1e-8))
                                                                                  : INFINITY);
            const QMatrix j = build_J_from_basis(d.basis, iota, 1e-8);
            for (const auto& z : d.basis.vectors) r.plus_space.see(norm(apply(j, z) - z * iota.value()));
            r.lambda_sets.push_back(std::move(ls));
        } catch (const std::exception&) {
            r.residual.see(INFINITY);
            r.lambda_sets.emplace_back();
        }
    }
    return r;
}

struct Criterion3 {
    Worst normality, circular;
    std::vector<CircularSet> spectra;
};

Criterion3 run_criterion3(const std::vector<Case>& corpus, const ImaginaryUnit& iota) {
    Criterion3 r;
    for (const auto& c : corpus) {
        r.normality.see(normality_defect(c.T));
        auto s = point_spectrum(c.T, iota).points.without_zero(1e-8);
        const auto omega = circularize(c.lambdas).without_zero(1e-8);
        r.circular.see(approx_equal(s, omega, 1e-8) ? max_mismatch(s, omega) : INFINITY);
        r.spectra.push_back(std::move(s));
    }
    return r;
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const auto corpus = normal_corpus(20261);
    const auto synth = synthesis_corpus(20263, 200);
    const ImaginaryUnit iota = ImaginaryUnit::i();

    // 1. norm equals the largest eigensphere modulus
    const auto c1 = run_criterion1(corpus, iota);
    report(1, c1.gap.within(1e-8) && c1.time < 30.0,
           "max|q| = ||T|| on " + std::to_string(corpus.size()) + " normal matrices, n = 1..8: worst " + c1.gap.str() +
               " (limit 1e-8), " + fmt("%.2f", c1.time) + " s (limit 30 s)");

    // 2. spectral decomposition
    const auto c2 = run_criterion2(corpus, c1.spectra, iota);
    report(2,
           c2.residual.within(1e-8) && c2.off_slice.within(1e-8) && c2.circular.within(1e-8) &&
               c2.plus_space.within(1e-8),
           "decomposition residual " + c2.residual.str() + ", off-slice " + c2.off_slice.str() + ", circularization " +
               c2.circular.str() + ", |Jz - z iota| " + c2.plus_space.str() + " (limits 1e-8)");

    // 3. synthesis
    const auto c3 = run_criterion3(synth, iota);
    report(3, c3.normality.within(1e-9) && c3.circular.within(1e-8),
           "synthesis of " + std::to_string(synth.size()) + " operators: ||TT* - T*T|| " + c3.normality.str() +
               " (limit 1e-9), sigma minus 0 vs Omega minus 0 " + c3.circular.str() + " (limit 1e-8)");

    // 4. A + JB
    {
        Worst residual, a_sa, b_pos, j_asa, j_unit, ab, aj, bj, a_unique, b_unique;
        for (const auto& c : corpus) {
            const auto& t = c.T;
            const std::size_t n = t.dim();
            try {
                const auto d = ajb_decompose(t, iota);
                const QMatrix ta = adjoint(t);
                residual.see(d.residual);
                a_sa.see(operator_norm(d.A - adjoint(d.A)));
                b_pos.see(std::max(operator_norm(d.B - adjoint(d.B)), -min_real_eigenvalue(d.B)));
                j_asa.see(operator_norm(d.J + adjoint(d.J)));
                j_unit.see(operator_norm(adjoint(d.J) * d.J - QMatrix::identity(n)));
                ab.see(commutator_norm(d.A, d.B));
                aj.see(commutator_norm(d.A, d.J));
                bj.see(commutator_norm(d.B, d.J));
                a_unique.see(operator_norm(d.A - (t + ta) * 0.5));
                b_unique.see(operator_norm(d.B - operator_abs(t - ta) * 0.5));
            } catch (const std::exception&) {
                residual.see(INFINITY);
            }
        }
        const bool ok = residual.within(1e-8) && a_sa.within(1e-8) && b_pos.within(1e-8) && j_asa.within(1e-8) &&
                        j_unit.within(1e-8) && ab.within(1e-8) && aj.within(1e-8) && bj.within(1e-8) &&
                        a_unique.within(1e-8) && b_unique.within(1e-8);
        report(4, ok,
               "T = A + JB " + residual.str() + "; A self-adjoint " + a_sa.str() + ", B positive " + b_pos.str() +
                   "; J anti self-adjoint " + j_asa.str() + ", unitary " + j_unit.str() + "; [A,B] " + ab.str() +
                   ", [A,J] " + aj.str() + ", [B,J] " + bj.str() + "; A unique " + a_unique.str() + ", B unique " +
                   b_unique.str() + " (limits 1e-8)");
    }

    // 5. classification shapes the spectrum; sigma(T) = sigma(T*)
    {
        Random rng(20265);
        Worst sa_im, asa_re, unit_mod, asu_gap, adj;
        bool asu_single = true;
        for (std::size_t c = 0; c < per_n; ++c) {
            const std::size_t n = 1 + c % max_n;
            for (const auto& p : point_spectrum(random_normal(rng, n, DiagonalKind::self_adjoint).T).points) sa_im.see(p.im);
            for (const auto& p : point_spectrum(random_normal(rng, n, DiagonalKind::anti_self_adjoint).T).points)
                asa_re.see(std::abs(p.re));
            for (const auto& p : point_spectrum(random_normal(rng, n, DiagonalKind::unitary).T).points)
                unit_mod.see(std::abs(p.modulus() - 1.0));
            const auto asu = point_spectrum(random_normal(rng, n, DiagonalKind::anti_self_adjoint_unitary).T).points;
            asu_single = asu_single && asu.size() == 1 && asu[0].multiplicity == static_cast<int>(n);
            for (const auto& p : asu) asu_gap.see(std::max(std::abs(p.re), std::abs(p.im - 1.0)));
            const QMatrix g = rng.matrix(n);
            adj.see(max_mismatch(point_spectrum(g).points, point_spectrum(adjoint(g)).points));
        }
        report(5,
               sa_im.within(1e-9) && asa_re.within(1e-9) && unit_mod.within(1e-8) && asu_single &&
                   asu_gap.within(1e-9) && adj.within(1e-8),
               "self-adjoint im " + sa_im.str() + " (limit 1e-9), anti self-adjoint re " + asa_re.str() +
                   " (limit 1e-9), unitary ||q| - 1| " + unit_mod.str() + " (limit 1e-8), anti self-adjoint unitary " +
                   (asu_single ? "single sphere" : "NOT a single sphere") + " (0,1) off by " + asu_gap.str() +
                   " (limit 1e-9), sigma(T) vs sigma(T*) on 200 general matrices " + adj.str() + " (limit 1e-8)");
    }

    // 6. eigensphere kernels against the elimination oracle
    {
        Worst relation;
        std::size_t empty_kernels = 0, oracle_mismatch = 0, off_nonempty = 0, off_oracle = 0, off_count = 0;
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            const auto& t = corpus[k].T;
            for (const auto& p : c1.spectra[k]) {
                const Quaternion q = slice_representative(p, iota, Half::upper);
                const auto kernel = eigensphere_kernel(t, q);
                if (kernel.empty()) ++empty_kernels;
                if (2 * kernel.size() != oracle::chi_nullity(delta_q(t, q), 1e-9, oracle::delta_scale(operator_norm(t), q))) ++oracle_mismatch;
                for (const auto& u : kernel) {
                    // T u = u q for the upper or the lower representative
                    const Quaternion lo = slice_representative(p, iota, Half::lower);
                    relation.see(std::min(norm(apply(t, u) - u * q), norm(apply(t, u) - u * lo)));
                }
            }
        }
        Random rng(20266);
        for (std::size_t n = 1; n <= max_n; ++n) {
            const auto& c = corpus[(n - 1) * per_n];
            const auto& spec = c1.spectra[(n - 1) * per_n];
            for (int s = 0; s < 50;) {
                const Quaternion q = rng.quaternion() * 2.0;
                if (spec.distance_to(q) < 0.1) continue;
                ++s;
                ++off_count;
                if (!eigensphere_kernel(c.T, q).empty()) ++off_nonempty;
                if (oracle::chi_nullity(delta_q(c.T, q), 1e-9, oracle::delta_scale(operator_norm(c.T), q)) != 0) ++off_oracle;
            }
        }
        report(6, empty_kernels == 0 && oracle_mismatch == 0 && relation.within(1e-7) && off_nonempty == 0 && off_oracle == 0,
               std::to_string(empty_kernels) + " empty kernels on spectrum points, " + std::to_string(oracle_mismatch) +
                   " nullity disagreements with the elimination oracle, Tu = uq worst " + relation.str() +
                   " (limit 1e-7); " + std::to_string(off_nonempty) + " nonempty kernels and " + std::to_string(off_oracle) +
                   " oracle nullities at " + std::to_string(off_count) + " non-spectral q");
    }

    // 7. Gelfand formula and the polynomial spectral map
    {
        Worst drift;
        for (const auto& c : corpus) {
            std::vector<double> r;
            QMatrix p = c.T;
            r.push_back(operator_norm(p));
            for (int k = 1; k <= 4; ++k) {
                p = p * p;
                r.push_back(std::pow(operator_norm(p), 1.0 / std::pow(2.0, k)));
            }
            const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
            drift.see(*hi - *lo);
        }
        Random rng(20267);
        std::size_t map_failures = 0;
        for (std::size_t c = 0; c < 100; ++c) {
            const auto t = random_normal(rng, 1 + c % max_n, DiagonalKind::self_adjoint).T;
            const std::vector<double> cubic{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
            if (!spectral_map_check(t, cubic)) ++map_failures;
        }
        report(7, drift.within(1e-6) && map_failures == 0,
               "||T^(2^k)||^(1/2^k), k <= 4, spread " + drift.str() + " (limit 1e-6); spectral map failures " +
                   std::to_string(map_failures) + " of 100");
    }

    // 8. compact simulator
    {
        const auto t0 = Clock::now();
        CompactModel m;
        m.tail.family = TailFamily::harmonic;
        m.tail.c = {0.0, 1.0};
        const std::vector<std::size_t> levels{10, 100, 1000};
        const auto reports = verify_compact_laws(m, levels);
        bool norm_one = true, min_exact = true, laws = true;
        for (const auto& r : reports) {
            norm_one = norm_one && r.operator_norm == 1.0 && r.max_modulus == 1.0;
            min_exact = min_exact && r.min_modulus == 1.0 / static_cast<double>(r.N);
            laws = laws && r.ok();
        }
        const std::size_t eps_count = lambda_eps(m, 0.1).size();

        CompactModel rot = m;
        rot.tail.rotate = true;
        rot.tail.seed = 20268;
        Worst normality, circular, residual;
        bool rotated_in_upper = true;
        for (std::size_t level : levels) {
            rot.N = level;
            const QMatrix t = truncate(rot);
            const auto canon = canonicalize(spectral_decomposition(t, ImaginaryUnit::i()), ImaginaryUnit::i());
            for (const auto& l : canon.lambdas) rotated_in_upper = rotated_in_upper && l.x >= 0.0 && l.y == 0.0 && l.z == 0.0;
            const QMatrix s = synthesize(canon.basis, canon.lambdas, 1e-9);
            residual.see(operator_norm(t - s));
            normality.see(normality_defect(s));
            const auto sigma = point_spectrum(s).points.without_zero(1e-8);
            const auto omega = circularize(canon.lambdas).without_zero(1e-8);
            const auto truth = circularize(lambda_eps(rot, 1.0 / (static_cast<double>(level) + 0.5))).without_zero(1e-8);
            circular.see(approx_equal(sigma, omega, 1e-8) && approx_equal(sigma, truth, 1e-8) ? max_mismatch(sigma, omega) : INFINITY);
        }
        const double time = seconds_since(t0);
        report(8,
               norm_one && min_exact && laws && eps_count == 10 && normality.within(1e-9) && circular.within(1e-8) &&
                   residual.within(1e-8) && rotated_in_upper && time < 20.0,
               std::string("harmonic tail at N = 10, 100, 1000: norm ") + (norm_one ? "== 1" : "!= 1") +
                   ", min_modulus " + (min_exact ? "== 1/N exactly" : "!= 1/N") + ", compact laws " +
                   (laws ? "hold" : "violated") + ", |Lambda_0.1| = " + std::to_string(eps_count) +
                   "; rotated tail after canonicalize: upper half slice " + (rotated_in_upper ? "yes" : "NO") +
                   ", normality " + normality.str() + " (limit 1e-9), sigma vs Omega " + circular.str() +
                   " (limit 1e-8), reconstruction " + residual.str() + "; " + fmt("%.2f", time) + " s (limit 20 s)");
    }

    // 9. slice independence
    {
        const auto tilted = ImaginaryUnit::normalized(Quaternion(0, 1, 1, 1));
        const auto t1 = run_criterion1(corpus, tilted);
        const auto t2 = run_criterion2(corpus, t1.spectra, tilted);
        const auto t3 = run_criterion3(synth, tilted);
        Worst s1, s2, s3;
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            s1.see(approx_equal(t1.spectra[k], c1.spectra[k], 1e-8) ? max_mismatch(t1.spectra[k], c1.spectra[k]) : INFINITY);
            s2.see(approx_equal(t2.lambda_sets[k], c2.lambda_sets[k], 1e-8) ? max_mismatch(t2.lambda_sets[k], c2.lambda_sets[k])
                                                                            : INFINITY);
        }
        for (std::size_t k = 0; k < synth.size(); ++k)
            s3.see(approx_equal(t3.spectra[k], c3.spectra[k], 1e-8) ? max_mismatch(t3.spectra[k], c3.spectra[k]) : INFINITY);
        const bool rerun_ok = t1.gap.within(1e-8) && t1.time < 30.0 && t2.residual.within(1e-8) &&
                              t2.off_slice.within(1e-8) && t2.circular.within(1e-8) && t2.plus_space.within(1e-8) &&
                              t3.normality.within(1e-9) && t3.circular.within(1e-8);
        report(9, rerun_ok && s1.within(1e-8) && s2.within(1e-8) && s3.within(1e-8),
               std::string("iota = (i+j+k)/sqrt 3: criteria 1-3 ") + (rerun_ok ? "pass" : "FAIL") +
                   "; CircularSet differences vs iota = i: spectra " + s1.str() + ", eigenvalues " + s2.str() +
                   ", synthesized " + s3.str() + " (limit 1e-8)");
    }

    std::size_t failed = 0;
    for (const auto& l : lines) failed += !l.pass;
    std::printf("%zu of %zu criteria passed in %.1f s\n", lines.size() - failed, lines.size(), seconds_since(start));
    return failed == 0 ? 0 : 1;
}
