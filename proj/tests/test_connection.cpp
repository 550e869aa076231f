#include <doctest.h>

#include <cmath>

#include "ellconn/automorphism.hpp"
#include "ellconn/connection.hpp"
#include "ellconn/errors.hpp"

using namespace ellconn;

namespace {

ConnectionMatrix sample_connection() {
    ConnectionMatrix c;
    c.F = {{{z1() * z2(), quotient(constant(1.0), z1() + constant(3.0))}, {power(z2(), 2), z1() - z2()}}};
    c.G = {{{constant(0.5) * z1(), z2()}, {z1() * z1(), quotient(z2(), z1() + constant(4.0))}}};
    return c;
}

const SampleDomain kDomain{};

double max_diff(const ExprMat2& a, const ExprMat2& b) {
    return sampled_difference(flatten(a), flatten(b), kDomain, 40, 11, nullptr).max_residual;
}

SurfaceAutomorphism moebius_map() {
    Mat2c m{{{1.2, 0.3}, {0.1, 0.9}}};
    return SurfaceAutomorphism::moebius("m", m, 1.5, z1() * z1());
}

SurfaceAutomorphism affine_map() { return SurfaceAutomorphism::affine("a", {0.8, 0.2}, {0.1, -0.3}, 0.7, z1()); }

}  // namespace

TEST_CASE("matrix helpers") {
    ExprMat2 a{{{z1(), constant(1.0)}, {constant(2.0), z2()}}};
    ExprMat2 inv = mat_inverse(a);
    CHECK(max_diff(mat_mul(a, inv), ExprMat2{{{constant(1.0), constant(0.0)}, {constant(0.0), constant(1.0)}}}) <
          1e-12);
    CHECK(max_diff(mat_sub(mat_add(a, a), mat_scale(constant(2.0), a)), zero_mat()) == 0.0);
}

TEST_CASE("jacobian of an automorphism") {
    SurfaceAutomorphism m = moebius_map();
    ExprMat2 J = jacobian(m);
    // h' = 1 / (c z + d)^2 for a unit-determinant-free matrix: det / (cz+d)^2
    const cplx z{0.3, 0.4};
    const cplx det = 1.2 * 0.9 - 0.3 * 0.1;
    CHECK(std::abs(evaluate(J[0][0], {z, 0.0}).value - det / std::pow(0.1 * z + 0.9, 2)) < 1e-13);
    CHECK(std::abs(evaluate(J[1][0], {z, 0.0}).value - 2.0 * z) < 1e-13);
    CHECK(std::abs(evaluate(J[1][1], {z, 0.0}).value - 1.5) < 1e-15);
}

TEST_CASE("pullback along a composite is the composite of pullbacks") {
    const ConnectionMatrix c = sample_connection();
    const SurfaceAutomorphism a = affine_map(), b = moebius_map();
    for (PullbackKind k : {PullbackKind::affine, PullbackKind::tensor}) {
        ConnectionMatrix lhs = pullback(c, compose(a, b), k);
        ConnectionMatrix rhs = pullback(pullback(c, a, k), b, k);
        CHECK(max_diff(lhs.F, rhs.F) < 1e-10);
        CHECK(max_diff(lhs.G, rhs.G) < 1e-10);
    }
}

TEST_CASE("composition acts on points in order") {
    const SurfaceAutomorphism a = affine_map(), b = moebius_map();
    const Point p{{0.3, 0.2}, {-0.4, 0.1}};
    Point q = compose(a, b).apply(p);
    Point r = a.apply(b.apply(p));
    CHECK(std::abs(q.z1 - r.z1) < 1e-13);
    CHECK(std::abs(q.z2 - r.z2) < 1e-13);
}

TEST_CASE("identity pullback is trivial and J^-1 dJ is flat") {
    const ConnectionMatrix c = sample_connection();
    ConnectionMatrix p = pullback(c, SurfaceAutomorphism::identity());
    CHECK(max_diff(p.F, c.F) < 1e-14);
    CHECK(max_diff(p.G, c.G) < 1e-14);
    // a pure gauge connection has zero curvature
    ConnectionMatrix zero;
    zero.F = zero_mat();
    zero.G = zero_mat();
    ConnectionMatrix gauge = pullback(zero, moebius_map());
    CHECK(max_diff(curvature(gauge), zero_mat()) < 1e-10);
}

TEST_CASE("curvature transforms as a tensor twisted by the base area factor") {
    // R(p*A) = det(D phi) J^-1 (R(A) o phi) J with det(D phi) = h' mu
    const ConnectionMatrix c = sample_connection();
    const SurfaceAutomorphism m = moebius_map();
    const ExprMat2 J = jacobian(m);
    const ExprMat2 Rphi = mat_map(curvature(c), [&](const Expr& e) { return compose_automorphism(e, m); });
    const ExprMat2 want = mat_scale(J[0][0] * J[1][1], mat_mul(mat_inverse(J), mat_mul(Rphi, J)));
    CHECK(max_diff(curvature(pullback(c, m)), want) < 1e-9);
}

TEST_CASE("curvature and torsion of a hand computed example") {
    ConnectionMatrix c;
    c.F = zero_mat();
    c.G = zero_mat();
    c.F[1][0] = z1() * z2();  // dF/dz2 = z1 in slot (2,1)
    c.G[0][0] = z2();
    ExprMat2 R = curvature(c);
    // R21 = -z1 + (F G - G F)_21 = -z1 + F21 G11 = -z1 + z1 z2^2
    CHECK(max_diff(R, ExprMat2{{{constant(0.0), constant(0.0)},
                                {-z1() + z1() * z2() * z2(), constant(0.0)}}}) < 1e-13);
    auto T = torsion(c);
    CHECK(std::abs(evaluate(T[0], {0.1, 0.7}).value + 0.7) < 1e-15);
}

TEST_CASE("invariance residual detects non-invariant connections") {
    // (z1, z2) -> (z1 + 1, z2): constant coefficients are invariant, z1 is not
    SurfaceAutomorphism t = SurfaceAutomorphism::affine("t", 1.0, 1.0, 1.0, constant(0.0));
    ConnectionMatrix c;
    c.F = {{{constant(2.0), constant(0.0)}, {constant(1.0), constant(3.0)}}};
    c.G = zero_mat();
    CHECK(invariance_residual(c, t, kDomain, 30, 1).max_residual < 1e-15);
    c.F[0][0] = z1();
    CHECK(invariance_residual(c, t, kDomain, 30, 1).max_residual == doctest::Approx(1.0));
}

TEST_CASE("sampled residuals reject all-pole inputs and bad counts") {
    CHECK_THROWS_AS(sampled_max({quotient(constant(1.0), raw::sum({z1(), -z1()}))}, kDomain, 10, 1, nullptr),
                    UnableToSample);
    CHECK_THROWS_AS(sampled_max({z1()}, kDomain, 0, 1, nullptr), InputError);
}

TEST_CASE("connection JSON round trip") {
    const ConnectionMatrix c = sample_connection();
    ConnectionMatrix back = connection_from_json(to_json(c));
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            CHECK(structurally_equal(back.F[i][k], c.F[i][k]));
            CHECK(structurally_equal(back.G[i][k], c.G[i][k]));
        }
    CHECK_FALSE(back.ctx.has_value());
}
