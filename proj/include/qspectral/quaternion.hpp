#pragma once

/**
 * @file quaternion.hpp
 * @brief Hamilton quaternions, imaginary units, slices C_iota and eigenspheres.
 *
 * q = w + x i + y j + z k with i^2 = j^2 = k^2 = ijk = -1. Multiplication is
 * not commutative, so every formula in this library keeps track of which side
 * a scalar sits on. Vectors are right modules: coefficients multiply on the right.
 *
 * A conjugation class {l^-1 q l : l != 0} (an "eigensphere") is determined by
 * the pair (Re q, |Im q|) and is stored that way, see CircularPoint.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "qspectral/error.hpp"

namespace qspectral {

/// Default absolute tolerance used for similarity and spectrum clustering.
inline constexpr double default_tol = 1e-9;

struct Quaternion {
    double w{0.0};
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Quaternion() noexcept = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0) noexcept
        : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion i() noexcept { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() noexcept { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() noexcept { return {0.0, 0.0, 0.0, 1.0}; }

    [[nodiscard]] constexpr double real() const noexcept { return w; }
    [[nodiscard]] constexpr Quaternion imag() const noexcept { return {0.0, x, y, z}; }

    constexpr Quaternion& operator+=(const Quaternion& o) noexcept {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) noexcept {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) noexcept {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }
    constexpr Quaternion& operator/=(double s) noexcept {
        w /= s; x /= s; y /= s; z /= s;
        return *this;
    }

    friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) noexcept { return a += b; }
    friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) noexcept { return a -= b; }
    friend constexpr Quaternion operator-(const Quaternion& a) noexcept { return {-a.w, -a.x, -a.y, -a.z}; }
    friend constexpr Quaternion operator*(Quaternion a, double s) noexcept { return a *= s; }
    friend constexpr Quaternion operator*(double s, Quaternion a) noexcept { return a *= s; }
    friend constexpr Quaternion operator/(Quaternion a, double s) noexcept { return a /= s; }

    // Hamilton product
    friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) noexcept {
        return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
    }
    constexpr Quaternion& operator*=(const Quaternion& o) noexcept { return *this = *this * o; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) noexcept = default;
};

[[nodiscard]] constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) noexcept { return p * q; }

[[nodiscard]] constexpr Quaternion conj(const Quaternion& q) noexcept { return {q.w, -q.x, -q.y, -q.z}; }

[[nodiscard]] constexpr double norm2(const Quaternion& q) noexcept {
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

[[nodiscard]] inline double abs(const Quaternion& q) noexcept { return std::sqrt(norm2(q)); }

/// |Im q|, computed without intermediate overflow so that |Im(t i)| == |t| exactly.
[[nodiscard]] inline double imag_abs(const Quaternion& q) noexcept { return std::hypot(q.x, q.y, q.z); }

/// Euclidean inner product on R^4.
[[nodiscard]] constexpr double dot(const Quaternion& p, const Quaternion& q) noexcept {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

[[nodiscard]] inline Quaternion inverse(const Quaternion& q) {
    const double n2 = norm2(q);
    if (n2 == 0.0) throw domain_error("quaternion inverse: zero has no inverse");
    return conj(q) / n2;
}

[[nodiscard]] inline double distance(const Quaternion& p, const Quaternion& q) noexcept { return abs(p - q); }

struct UnaryAlgebra {
    Quaternion conj;
    double norm;
    Quaternion inverse;
};

/// Conjugate, norm and inverse in one call; throws domain_error for q = 0.
[[nodiscard]] inline UnaryAlgebra unary_algebra(const Quaternion& q) {
    return {qspectral::conj(q), qspectral::abs(q), qspectral::inverse(q)};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ' ' << std::showpos << q.x << "i " << q.y << "j " << q.z << 'k'
              << std::noshowpos << ')';
}

/// An element of the sphere S = {q : q^2 = -1} of imaginary units.
class ImaginaryUnit {
public:
    /// Defaults to i.
    constexpr ImaginaryUnit() noexcept : q_(Quaternion::i()) {}

    /// Validates that q is a unit imaginary within tol.
    static ImaginaryUnit from(const Quaternion& q, double tol = default_tol) {
        if (std::abs(q.w) > tol || std::abs(abs(q) - 1.0) > tol)
            throw domain_error("imaginary unit must satisfy Re q = 0 and |q| = 1");
        return ImaginaryUnit(Quaternion{0.0, q.x, q.y, q.z} / imag_abs(q));
    }

    /// Normalizes the imaginary part of q; throws if it vanishes.
    static ImaginaryUnit normalized(const Quaternion& q) {
        const double n = imag_abs(q);
        if (n == 0.0) throw domain_error("imaginary unit: imaginary part is zero");
        return ImaginaryUnit(Quaternion{0.0, q.x, q.y, q.z} / n);
    }

    static constexpr ImaginaryUnit i() noexcept { return ImaginaryUnit(Quaternion::i()); }
    static constexpr ImaginaryUnit j() noexcept { return ImaginaryUnit(Quaternion::j()); }
    static constexpr ImaginaryUnit k() noexcept { return ImaginaryUnit(Quaternion::k()); }

    [[nodiscard]] constexpr const Quaternion& value() const noexcept { return q_; }
    constexpr operator Quaternion() const noexcept { return q_; }  // NOLINT(google-explicit-constructor)

    friend constexpr bool operator==(const ImaginaryUnit&, const ImaginaryUnit&) noexcept = default;

private:
    constexpr explicit ImaginaryUnit(const Quaternion& q) noexcept : q_(q) {}
    Quaternion q_;
};

/**
 * Orthonormal frame {1, iota, jota, kappa = iota jota} attached to a slice.
 *
 * jota is the first of i, j, k whose component orthogonal to iota is not
 * negligible, orthonormalized against iota. Every q then splits uniquely as
 * q = alpha + beta jota with alpha, beta in C_iota; this split is what the
 * complex adjoint representation is built from.
 */
class SliceFrame {
public:
    explicit SliceFrame(ImaginaryUnit iota = ImaginaryUnit::i()) : iota_(iota) {
        const Quaternion u = iota.value();
        for (const Quaternion& c : {Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
            const Quaternion r = c - u * dot(c, u);
            if (abs(r) > 0.5) {
                jota_ = ImaginaryUnit::normalized(r);
                break;
            }
        }
        kappa_ = u * jota_.value();
    }

    [[nodiscard]] const ImaginaryUnit& iota() const noexcept { return iota_; }
    [[nodiscard]] const ImaginaryUnit& jota() const noexcept { return jota_; }
    [[nodiscard]] const Quaternion& kappa() const noexcept { return kappa_; }

    /// alpha + iota beta  ->  the complex number alpha + i beta.
    [[nodiscard]] std::complex<double> to_complex(const Quaternion& q) const noexcept {
        return {q.w, dot(q, iota_.value())};
    }
    /// Inverse of to_complex on C_iota.
    [[nodiscard]] Quaternion from_complex(std::complex<double> c) const noexcept {
        return Quaternion(c.real()) + iota_.value() * c.imag();
    }

    struct Split {
        std::complex<double> alpha;
        std::complex<double> beta;
    };

    /// q = alpha + beta jota with alpha, beta read as complex numbers.
    [[nodiscard]] Split split(const Quaternion& q) const noexcept {
        return {{q.w, dot(q, iota_.value())}, {dot(q, jota_.value()), dot(q, kappa_)}};
    }
    [[nodiscard]] Quaternion join(std::complex<double> alpha, std::complex<double> beta) const noexcept {
        return from_complex(alpha) + from_complex(beta) * jota_.value();
    }

    /// Distance from q to the slice C_iota.
    [[nodiscard]] double off_slice(const Quaternion& q) const noexcept {
        return std::hypot(dot(q, jota_.value()), dot(q, kappa_));
    }

private:
    ImaginaryUnit iota_;
    ImaginaryUnit jota_{};
    Quaternion kappa_{};
};

/// Same conjugation class within tol: Re and |Im| agree separately.
[[nodiscard]] inline bool is_similar(const Quaternion& p, const Quaternion& q, double tol = default_tol) noexcept {
    return std::abs(p.w - q.w) <= tol && std::abs(imag_abs(p) - imag_abs(q)) <= tol;
}

/**
 * Unit quaternion mu with mu^-1 q mu = Re q + iota |Im q|.
 *
 * Real q gives mu = 1. q already in the lower half of C_iota gives mu = jota,
 * which anticommutes with iota.
 */
[[nodiscard]] inline Quaternion rotation_to_slice(const Quaternion& q, const SliceFrame& frame,
                                                  double tol = default_tol) {
    const double im = imag_abs(q);
    if (im <= tol) return Quaternion(1.0);
    const Quaternion iota = frame.iota().value();
    const Quaternion jota = frame.jota().value();
    if (frame.off_slice(q) <= tol * std::max(1.0, abs(q))) {
        // q already in C_iota: either upper (mu = 1) or lower (mu = jota).
        return dot(q, iota) >= 0.0 ? Quaternion(1.0) : jota;
    }
    Quaternion v = q.imag() / im;
    Quaternion pre(1.0);
    if (dot(v, iota) < 0.0) {
        // conjugation by jota flips iota, so afterwards 1 - v iota has real part >= 1
        pre = jota;
        v = conj(jota) * v * jota;
    }
    // v mu = mu iota is solved by mu ~ 1 - v iota.
    const Quaternion s = Quaternion(1.0) - v * iota;
    return pre * (s / abs(s));
}

struct CircularPoint {
    double re{0.0};
    double im{0.0};
    int multiplicity{1};

    [[nodiscard]] double modulus() const noexcept { return std::hypot(re, im); }
    friend bool operator==(const CircularPoint&, const CircularPoint&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const CircularPoint& c) {
    return os << "{re=" << c.re << ", im=" << c.im << ", x" << c.multiplicity << '}';
}

[[nodiscard]] inline CircularPoint to_circular(const Quaternion& q) noexcept { return {q.w, imag_abs(q), 1}; }

enum class Half { upper, lower };

/// re + iota im (upper) or re - iota im (lower): a point of the eigensphere inside C_iota.
[[nodiscard]] inline Quaternion slice_representative(const CircularPoint& c, const ImaginaryUnit& iota,
                                                     Half half = Half::upper) noexcept {
    const double s = half == Half::upper ? c.im : -c.im;
    return Quaternion(c.re) + iota.value() * s;
}

namespace detail {

struct Cluster {
    double re_sum{0.0};
    double im_sum{0.0};
    int weight{0};
    [[nodiscard]] double re() const noexcept { return re_sum / weight; }
    [[nodiscard]] double im() const noexcept { return im_sum / weight; }
};

/// Greedy agglomeration: a point joins the first cluster whose centroid is within tol in both coordinates.
inline std::vector<Cluster> cluster(std::span<const CircularPoint> pts, double tol) {
    std::vector<Cluster> out;
    for (const auto& p : pts) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Cluster& c) {
            return std::abs(c.re() - p.re) <= tol && std::abs(c.im() - p.im) <= tol;
        });
        if (it == out.end()) {
            out.push_back({p.re * p.multiplicity, p.im * p.multiplicity, p.multiplicity});
        } else {
            it->re_sum += p.re * p.multiplicity;
            it->im_sum += p.im * p.multiplicity;
            it->weight += p.multiplicity;
        }
    }
    return out;
}

}  // namespace detail

/**
 * Finite union of eigenspheres with multiplicities, sorted by (re, im).
 *
 * Points closer than the construction tolerance are merged; classes with
 * im <= tol are snapped to the real axis.
 */
class CircularSet {
public:
    CircularSet() = default;

    static CircularSet from_points(std::span<const CircularPoint> pts, double tol = default_tol) {
        CircularSet s;
        for (const auto& c : detail::cluster(pts, tol)) {
            double im = c.im();
            if (im <= tol) im = 0.0;
            s.points_.push_back({c.re(), im, c.weight});
        }
        s.sort();
        return s;
    }

    [[nodiscard]] const std::vector<CircularPoint>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return points_.begin(); }
    [[nodiscard]] auto end() const noexcept { return points_.end(); }
    [[nodiscard]] const CircularPoint& operator[](std::size_t k) const { return points_[k]; }

    [[nodiscard]] int total_multiplicity() const noexcept {
        int m = 0;
        for (const auto& p : points_) m += p.multiplicity;
        return m;
    }

    [[nodiscard]] double max_modulus() const noexcept {
        double r = 0.0;
        for (const auto& p : points_) r = std::max(r, p.modulus());
        return r;
    }

    [[nodiscard]] double min_modulus() const noexcept {
        if (points_.empty()) return 0.0;
        double r = points_.front().modulus();
        for (const auto& p : points_) r = std::min(r, p.modulus());
        return r;
    }

    /// Drops the class of 0 (points with modulus <= tol).
    [[nodiscard]] CircularSet without_zero(double tol = default_tol) const {
        CircularSet s;
        for (const auto& p : points_)
            if (p.modulus() > tol) s.points_.push_back(p);
        return s;
    }

    [[nodiscard]] bool contains(const Quaternion& q, double tol = default_tol) const noexcept {
        return std::any_of(points_.begin(), points_.end(), [&](const CircularPoint& p) {
            return std::abs(p.re - q.w) <= tol && std::abs(p.im - imag_abs(q)) <= tol;
        });
    }

    /// Smallest distance in H from q to any eigensphere of the set.
    [[nodiscard]] double distance_to(const Quaternion& q) const noexcept {
        double d = INFINITY;
        for (const auto& p : points_) d = std::min(d, std::hypot(p.re - q.w, p.im - imag_abs(q)));
        return d;
    }

private:
    void sort() {
        std::sort(points_.begin(), points_.end(), [](const CircularPoint& a, const CircularPoint& b) {
            return a.re != b.re ? a.re < b.re : a.im < b.im;
        });
    }

    std::vector<CircularPoint> points_;
};

/// Omega_K: every q becomes its class (Re q, |Im q|); duplicates within tol merge.
[[nodiscard]] inline CircularSet circularize(std::span<const Quaternion> values, double tol = default_tol) {
    std::vector<CircularPoint> pts;
    pts.reserve(values.size());
    for (const auto& q : values) pts.push_back(to_circular(q));
    return CircularSet::from_points(pts, tol);
}

/**
 * Multiset equality up to tol: both sides expanded by multiplicity and
 * matched greedily point for point.
 */
[[nodiscard]] inline bool approx_equal(const CircularSet& a, const CircularSet& b, double tol = default_tol) {
    if (a.total_multiplicity() != b.total_multiplicity()) return false;
    std::vector<CircularPoint> rest;
    for (const auto& p : b)
        for (int m = 0; m < p.multiplicity; ++m) rest.push_back({p.re, p.im, 1});
    for (const auto& p : a) {
        for (int m = 0; m < p.multiplicity; ++m) {
            auto best = rest.end();
            double best_d = INFINITY;
            for (auto it = rest.begin(); it != rest.end(); ++it) {
                const double d = std::max(std::abs(it->re - p.re), std::abs(it->im - p.im));
                if (d <= tol && d < best_d) {
                    best = it;
                    best_d = d;
                }
            }
            if (best == rest.end()) return false;
            rest.erase(best);
        }
    }
    return rest.empty();
}

/// Largest coordinate gap between matched points, or infinity if the multisets differ in size.
[[nodiscard]] inline double max_mismatch(const CircularSet& a, const CircularSet& b) {
    if (a.total_multiplicity() != b.total_multiplicity()) return INFINITY;
    std::vector<CircularPoint> rest;
    for (const auto& p : b)
        for (int m = 0; m < p.multiplicity; ++m) rest.push_back({p.re, p.im, 1});
    double worst = 0.0;
    for (const auto& p : a) {
        for (int m = 0; m < p.multiplicity; ++m) {
            auto best = rest.begin();
            double best_d = INFINITY;
            for (auto it = rest.begin(); it != rest.end(); ++it) {
                const double d = std::max(std::abs(it->re - p.re), std::abs(it->im - p.im));
                if (d < best_d) {
                    best = it;
                    best_d = d;
                }
            }
            worst = std::max(worst, best_d);
            rest.erase(best);
        }
    }
    return worst;
}

}  // namespace qspectral
