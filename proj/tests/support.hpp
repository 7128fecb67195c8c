#pragma once

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <string>

#include "qspectral/linalg.hpp"
#include "qspectral/operator.hpp"
#include "qspectral/quaternion.hpp"

namespace test {

using qspectral::QMatrix;
using qspectral::Quaternion;
using qspectral::QVector;

inline double gap(const Quaternion& a, const Quaternion& b) { return qspectral::abs(a - b); }

inline double gap(const QVector& a, const QVector& b) { return qspectral::norm(a - b); }

inline double gap(const QMatrix& a, const QMatrix& b) { return qspectral::frobenius_norm(a - b); }

template <class T>
class CloseTo : public Catch::Matchers::MatcherBase<T> {
public:
    CloseTo(T target, double tol) : target_(std::move(target)), tol_(tol) {}
    bool match(const T& v) const override { return gap(v, target_) <= tol_; }
    std::string describe() const override {
        std::ostringstream os;
        os << "is within " << tol_ << " of the target";
        return os.str();
    }

private:
    T target_;
    double tol_;
};

inline CloseTo<Quaternion> close_to(const Quaternion& q, double tol = 1e-12) { return {q, tol}; }
inline CloseTo<QVector> close_to(const QVector& v, double tol = 1e-12) { return {v, tol}; }
inline CloseTo<QMatrix> close_to(const QMatrix& m, double tol = 1e-12) { return {m, tol}; }


constexpr Quaternion I{0, 1, 0, 0};
constexpr Quaternion J{0, 0, 1, 0};
constexpr Quaternion K{0, 0, 0, 1};

}  // namespace test

namespace Catch {
template <>
struct StringMaker<qspectral::Quaternion> {
    static std::string convert(const qspectral::Quaternion& q) {
        std::ostringstream os;
        os << q;
        return os.str();
    }
};
}  // namespace Catch
