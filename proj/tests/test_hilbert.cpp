#include "support.hpp"

#include "oracles.hpp"
#include "qspectral/hilbert.hpp"
#include "qspectral/random.hpp"

using namespace qspectral;
using test::close_to;
using test::I;
using test::J;
using test::K;

namespace {
const double r2 = std::sqrt(0.5);
}

TEST_CASE("inner product examples") {
    CHECK(inner(QVector::unit(2, 0), QVector::unit(2, 1)) == Quaternion{});
    CHECK(inner(QVector{I, Quaternion(1.0)}, QVector{Quaternion(1.0), K}) == Quaternion(0, -1, 0, 1));
    CHECK(inner(QVector::unit(1, 0), QVector::unit(1, 0) * J) == J);
    CHECK_THROWS_AS(inner(QVector(2), QVector(3)), dimension_error);
}

TEST_CASE("inner product is right linear and hermitian") {
    Random rng(1);
    for (int s = 0; s < 100; ++s) {
        const QVector u = rng.vector(4), v = rng.vector(4);
        const Quaternion p = rng.quaternion();
        CHECK_THAT(inner(u, v * p), close_to(inner(u, v) * p, 1e-12));
        CHECK_THAT(inner(u, v), close_to(conj(inner(v, u)), 1e-12));
        CHECK(inner(u, u).x == 0.0);
        CHECK(inner(u, u).w == Catch::Approx(norm(u) * norm(u)));
    }
}

TEST_CASE("apply and adjoint") {
    const QMatrix d = QMatrix::diagonal({I, Quaternion(1, 0, 1, 0)});
    CHECK(apply(d, QVector::unit(2, 1)) == QVector{Quaternion{}, Quaternion(1, 0, 1, 0)});
    CHECK(adjoint(QMatrix::diagonal({I})) == QMatrix::diagonal({-I}));
    QMatrix a(2);
    a(0, 1) = J;
    QMatrix b(2);
    b(1, 0) = -J;
    CHECK(adjoint(a) == b);
    CHECK_THROWS_AS(apply(a, QVector(3)), dimension_error);

    Random rng(2);
    for (int s = 0; s < 30; ++s) {
        const QMatrix t = rng.matrix(3), r = rng.matrix(3);
        const QVector u = rng.vector(3), v = rng.vector(3);
        const Quaternion k = rng.quaternion();
        CHECK_THAT(apply(t, u * k), close_to(apply(t, u) * k, 1e-12));
        CHECK_THAT(apply(t, QVector::unit(3, 0) * K), close_to(apply(t, QVector::unit(3, 0)) * K, 1e-14));
        CHECK_THAT(apply(QMatrix::identity(3), u), close_to(u, 0.0));
        CHECK_THAT(inner(apply(adjoint(t), u), v), close_to(inner(u, apply(t, v)), 1e-11));
        CHECK(adjoint(adjoint(t)) == t);
        CHECK_THAT(adjoint(t * r), close_to(adjoint(r) * adjoint(t), 1e-12));
    }
}

TEST_CASE("apply accepts rectangular matrices") {
    QMatrix r(2, 3);
    r(0, 2) = I;
    r(1, 0) = J;
    const QVector out = apply(r, QVector{Quaternion(1.0), Quaternion{}, K});
    CHECK(out == QVector{I * K, J});
}

TEST_CASE("power and polynomial") {
    const QMatrix d = QMatrix::diagonal({Quaternion(2.0), I});
    CHECK(power(d, 0) == QMatrix::identity(2));
    CHECK(power(d, 3) == QMatrix::diagonal({Quaternion(8.0), -I}));
    const std::vector<double> c{1.0, 0.0, 1.0};  // 1 + X^2
    CHECK(polynomial(d, c) == QMatrix::diagonal({Quaternion(5.0), Quaternion{}}));
}

TEST_CASE("diagonal_blocks finds the block structure") {
    QMatrix t(4);
    t(0, 0) = I;
    t(1, 3) = J;
    t(3, 1) = K;
    t(2, 2) = Quaternion(1.0);
    const auto blocks = diagonal_blocks(t);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0] == std::vector<std::size_t>{0});
    CHECK(blocks[1] == std::vector<std::size_t>{1, 3});
    CHECK(blocks[2] == std::vector<std::size_t>{2});
    CHECK(submatrix(t, blocks[1])(0, 1) == J);
}

TEST_CASE("gram_schmidt examples") {
    const std::vector<QVector> a{QVector{Quaternion(1.0), Quaternion{}}, QVector{Quaternion(1.0), Quaternion(1.0)}};
    const auto oa = gram_schmidt(a);
    CHECK_THAT(oa[0], close_to(QVector::unit(2, 0)));
    CHECK_THAT(oa[1], close_to(QVector::unit(2, 1)));
    const std::vector<QVector> b{QVector{Quaternion(2.0), Quaternion{}}};
    CHECK_THAT(gram_schmidt(b)[0], close_to(QVector::unit(2, 0)));

    const QVector b1{Quaternion(r2, 0, 0, r2), Quaternion{}};
    CHECK(inner(b1, b1).w == Catch::Approx(1.0));
    const std::vector<QVector> c{b1, QVector::unit(2, 1)};
    const auto oc = gram_schmidt(c, Scalars::slice(ImaginaryUnit::i()));
    CHECK_THAT(oc[0], close_to(b1, 1e-15));
    CHECK_THAT(oc[1], close_to(QVector::unit(2, 1), 1e-15));
}

TEST_CASE("gram_schmidt reports the failing index") {
    const std::vector<QVector> dep{QVector::unit(3, 0), QVector::unit(3, 1), QVector::unit(3, 0) * J + QVector::unit(3, 1) * K};
    try {
        (void)gram_schmidt(dep);
        FAIL("expected rank_deficiency");
    } catch (const rank_deficiency& e) {
        CHECK(e.index() == 2);
    }
    const std::vector<QVector> tiny{QVector::unit(2, 0), QVector::unit(2, 1) * 1e-13};
    try {
        (void)gram_schmidt(tiny);
        FAIL("expected rank_deficiency");
    } catch (const rank_deficiency& e) {
        CHECK(e.index() == 1);
    }
    // e1 and e1 j are independent over C_i but not over H
    const std::vector<QVector> slice_pair{QVector::unit(1, 0), QVector::unit(1, 0) * J};
    CHECK_THROWS_AS(gram_schmidt(slice_pair), rank_deficiency);
    CHECK(gram_schmidt(slice_pair, Scalars::slice(ImaginaryUnit::i())).size() == 2);
}

TEST_CASE("gram_schmidt output is orthonormal and spans the input") {
    Random rng(3);
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<QVector> vs;
        for (std::size_t k = 0; k < n; ++k) vs.push_back(rng.vector(n));
        const auto o = gram_schmidt(vs);
        CHECK(gram_residual(o) < 1e-13);
        for (const auto& v : vs) {
            QVector rebuilt(n);
            for (const auto& z : o) rebuilt += z * inner(z, v);
            CHECK_THAT(rebuilt, close_to(v, 1e-12 * norm(v)));
        }
    }
}

TEST_CASE("gram_schmidt on nearly dependent input keeps orthogonality") {
    QVector a = QVector::unit(3, 0) + QVector::unit(3, 1) * 1e-8;
    QVector b = QVector::unit(3, 0) + QVector::unit(3, 2) * 1e-8;
    const std::vector<QVector> vs{a, b, QVector::unit(3, 1)};
    CHECK(gram_residual(gram_schmidt(vs)) < 1e-12);
}

TEST_CASE("Parseval expansion in random Hilbert bases") {
    Random rng(4);
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto basis = rng.orthonormal_basis(n);
        CHECK(basis.valid(1e-12));
        const QVector x = rng.vector(n);
        QVector sum(n);
        for (const auto& z : basis.vectors) sum += z * inner(z, x);
        CHECK(norm(x - sum) <= 1e-9);
    }
}

TEST_CASE("left_mul examples") {
    const auto one = HilbertBasis::standard(1);
    CHECK(left_mul(J, QVector{I}, one) == QVector{-K});
    Random rng(5);
    const auto basis = rng.orthonormal_basis(3);
    const QVector u = rng.vector(3);
    CHECK_THAT(left_mul(Quaternion(1.0), u, basis), close_to(u, 1e-12));
    CHECK(left_mul(I, QVector::unit(2, 1), HilbertBasis::standard(2)) == QVector{Quaternion{}, I});
    HilbertBasis bad = HilbertBasis::make({QVector{Quaternion(1.0), Quaternion(1.0)}, QVector::unit(2, 1)});
    CHECK_THROWS_AS(left_mul(I, u, bad), invalid_basis);
}

TEST_CASE("L is a norm-preserving real algebra homomorphism") {
    Random rng(6);
    for (int s = 0; s < 20; ++s) {
        const auto basis = rng.orthonormal_basis(4);
        const Quaternion p = rng.quaternion(), q = rng.quaternion();
        const QMatrix lp = left_mul_matrix(p, basis), lq = left_mul_matrix(q, basis);
        CHECK_THAT(lp * lq, close_to(left_mul_matrix(p * q, basis), 1e-11));
        CHECK_THAT(left_mul_matrix(Quaternion(1.0), basis), close_to(QMatrix::identity(4), 1e-12));
        CHECK(operator_norm(lp) == Catch::Approx(abs(p)).epsilon(1e-12));
        const QVector u = rng.vector(4);
        CHECK(norm(left_mul(p, u, basis)) == Catch::Approx(abs(p) * norm(u)).epsilon(1e-12));
        const Quaternion k = rng.quaternion();
        CHECK_THAT(left_mul(p, u * k, basis), close_to(left_mul(p, u, basis) * k, 1e-11));
    }
}

TEST_CASE("project_pm examples") {
    const QMatrix li = QMatrix::diagonal({I});
    const auto iota = ImaginaryUnit::i();
    const QVector one{Quaternion(1.0)}, jv{J};
    CHECK_THAT(project_pm(one, li, iota, Sign::plus), close_to(one));
    CHECK_THAT(project_pm(one, li, iota, Sign::minus), close_to(QVector(1)));
    CHECK_THAT(project_pm(jv, li, iota, Sign::plus), close_to(QVector(1)));
    CHECK_THAT(project_pm(jv, li, iota, Sign::minus), close_to(jv));
    // J = L_iota entrywise: P_+ keeps the C_iota part alpha, P_- the beta jota part
    Random rng(7);
    const auto u = rng.imaginary_unit();
    const SliceFrame f(u);
    const QMatrix lu = QMatrix::diagonal({u.value(), u.value(), u.value()});
    const QVector x = rng.vector(3);
    QVector alpha(3), beta(3);
    for (std::size_t m = 0; m < 3; ++m) {
        const auto sp = f.split(x[m]);
        alpha[m] = f.from_complex(sp.alpha);
        beta[m] = f.from_complex(sp.beta) * f.jota().value();
    }
    CHECK_THAT(project_pm(x, lu, u, Sign::plus), close_to(alpha, 1e-14));
    CHECK_THAT(project_pm(x, lu, u, Sign::minus), close_to(beta, 1e-14));
    CHECK_THROWS_AS(project_pm(one, QMatrix::diagonal({Quaternion(2.0)}), iota, Sign::plus), structure_error);
}

TEST_CASE("P_+ and P_- split every vector into eigen-halves of J") {
    Random rng(8);
    for (int s = 0; s < 20; ++s) {
        const auto basis = rng.orthonormal_basis(4);
        const auto iota = rng.imaginary_unit();
        std::vector<Quaternion> units;
        for (int k = 0; k < 4; ++k) units.push_back(rng.imaginary_unit().value());
        const QMatrix j = synthesize(basis, units);
        const QVector x = rng.vector(4);
        const QVector p = project_pm(x, j, iota, Sign::plus), m = project_pm(x, j, iota, Sign::minus);
        CHECK_THAT(p + m, close_to(x, 1e-12));
        CHECK_THAT(apply(j, p), close_to(p * iota.value(), 1e-11));
        CHECK_THAT(apply(j, m), close_to(m * -iota.value(), 1e-11));
        CHECK_THAT(project_pm(p, j, iota, Sign::plus), close_to(p, 1e-11));
        CHECK(abs(Scalars::slice(iota).coefficient(p, m)) < 1e-9);
    }
}

TEST_CASE("slice_basis examples") {
    const auto iota = ImaginaryUnit::i();
    const auto sb = slice_basis(QMatrix::diagonal({I, I, I}), iota);
    for (std::size_t k = 0; k < 3; ++k) CHECK_THAT(sb.plus_vectors[k], close_to(QVector::unit(3, k)));

    const QMatrix j = QMatrix::diagonal({I, J});
    const auto s2 = slice_basis(j, iota);
    REQUIRE(s2.plus_vectors.size() == 2);
    CHECK_THAT(s2.plus_vectors[0], close_to(QVector::unit(2, 0), 1e-15));
    CHECK_THAT(s2.plus_vectors[1], close_to(QVector{Quaternion{}, Quaternion(r2, 0, 0, r2)}, 1e-15));
    const auto minus = s2.minus_vectors();
    CHECK_THAT(minus[0], close_to(QVector{J, Quaternion{}}, 1e-15));
    CHECK_THAT(minus[1], close_to(QVector{Quaternion{}, Quaternion(r2, 0, 0, r2) * J}, 1e-15));
    for (const auto& b : minus) CHECK_THAT(apply(j, b), close_to(b * -I, 1e-15));
    CHECK_THROWS_AS(slice_basis(QMatrix::identity(2), iota), structure_error);
}

TEST_CASE("slice_basis spans H_+ with n vectors for random J") {
    Random rng(9);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto basis = rng.orthonormal_basis(n);
        std::vector<Quaternion> units;
        for (std::size_t k = 0; k < n; ++k) units.push_back(rng.imaginary_unit().value());
        const QMatrix j = synthesize(basis, units);
        const auto iota = rng.imaginary_unit();
        const auto sb = slice_basis(j, iota);
        CHECK(sb.plus_vectors.size() == n);
        CHECK(gram_residual(sb.plus_vectors, Scalars::slice(iota)) < 1e-10);
        CHECK(gram_residual(sb.plus_vectors) < 1e-10);
        for (const auto& b : sb.plus_vectors) CHECK_THAT(apply(j, b), close_to(b * iota.value(), 1e-10));
    }
}
