#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ellconn/elliptic.hpp"
#include "ellconn/errors.hpp"

using namespace ellconn;

namespace {

// Symmetric lattice sum of 1/(z-l)^2 - 1/l^2 over |m|, |n| <= R.
cplx wp_brute(cplx z, cplx tau, int R) {
    cplx s = 1.0 / (z * z);
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            const cplx l = double(m) + double(n) * tau;
            s += 1.0 / ((z - l) * (z - l)) - 1.0 / (l * l);
        }
    return s;
}

// sum' l^{-k} over the square box of radius R
cplx eisenstein_brute(cplx tau, int k, int R) {
    cplx s = 0.0;
    for (int m = -R; m <= R; ++m)
        for (int n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            s += std::pow(double(m) + double(n) * tau, -k);
        }
    return s;
}

// Box truncations converge like 1/R^2 (wp) and 1/R^2 (G4) / 1/R^4 (G6); extrapolate in 1/R^2.
template <class F>
cplx richardson(F f, int R) {
    const cplx a = f(R), b = f(2 * R);
    return (4.0 * b - a) / 3.0;
}

const cplx kTaus[] = {{0.0, 1.0}, {0.5, std::sqrt(3.0) / 2.0}, {0.3, 1.1}};

}  // namespace

TEST_CASE("wp matches an extrapolated brute-force lattice sum") {
    for (cplx tau : kTaus) {
        EllipticContext ctx(tau);
        for (cplx z : {cplx{0.23, 0.17}, cplx{-0.4, 0.31}, cplx{0.11, -0.45}}) {
            const cplx oracle = richardson([&](int R) { return wp_brute(z, tau, R); }, 150);
            const cplx got = eval_elliptic(EllipticKind::wp, z, ctx).value;
            CHECK(std::abs(got - oracle) < 1e-6 * (1.0 + std::abs(oracle)));
        }
    }
}

TEST_CASE("invariants match extrapolated Eisenstein sums") {
    for (cplx tau : kTaus) {
        EllipticContext ctx(tau);
        const cplx g2 = 60.0 * richardson([&](int R) { return eisenstein_brute(tau, 4, R); }, 100);
        const cplx g3 = 140.0 * eisenstein_brute(tau, 6, 200);
        CHECK(std::abs(ctx.g2() - g2) < 1e-5 * (1.0 + std::abs(g2)));
        CHECK(std::abs(ctx.g3() - g3) < 1e-5);
    }
}

TEST_CASE("square and hexagonal lattices kill g3 and g2") {
    CHECK(std::abs(EllipticContext({0.0, 1.0}).g3()) < 1e-10);
    CHECK(std::abs(EllipticContext(std::polar(1.0, std::numbers::pi / 3.0)).g2()) < 1e-10);
    // lemniscatic value g2 = Gamma(1/4)^8 / (16 pi^2) for Z + iZ
    const double gq = std::tgamma(0.25);
    CHECK(std::abs(EllipticContext({0.0, 1.0}).g2() - std::pow(gq, 8) / (16.0 * std::pow(std::numbers::pi, 2))) <
          1e-9);
}

TEST_CASE("differential equation, parity and periodicity") {
    for (cplx tau : kTaus) {
        EllipticContext ctx(tau);
        for (cplx z : {cplx{0.23, 0.17}, cplx{-0.4, 0.31}, cplx{0.61, -0.2}}) {
            const cplx p = eval_elliptic(EllipticKind::wp, z, ctx).value;
            const cplx d = eval_elliptic(EllipticKind::wp_prime, z, ctx).value;
            CHECK(std::abs(d * d - (4.0 * p * p * p - ctx.g2() * p - ctx.g3())) < 1e-9);
            CHECK(std::abs(eval_elliptic(EllipticKind::wp, -z, ctx).value - p) < 1e-10);
            CHECK(std::abs(eval_elliptic(EllipticKind::wp_prime, -z, ctx).value + d) < 1e-9);
            CHECK(std::abs(eval_elliptic(EllipticKind::wp, z + 3.0 - 2.0 * tau, ctx).value - p) < 1e-10);
        }
    }
}

TEST_CASE("zeta: derivative is -wp and increments are the quasi-periods") {
    for (cplx tau : kTaus) {
        EllipticContext ctx(tau);
        const cplx z{0.21, 0.13};
        const double h = 1e-5;
        const cplx dz = (eval_elliptic(EllipticKind::zeta, z + h, ctx).value -
                         eval_elliptic(EllipticKind::zeta, z - h, ctx).value) /
                        (2.0 * h);
        CHECK(std::abs(dz + eval_elliptic(EllipticKind::wp, z, ctx).value) < 1e-6);
        const cplx zz = eval_elliptic(EllipticKind::zeta, z, ctx).value;
        CHECK(std::abs(eval_elliptic(EllipticKind::zeta, z + 1.0, ctx).value - zz - ctx.eta1()) < 1e-10);
        CHECK(std::abs(eval_elliptic(EllipticKind::zeta, z + 2.0 - tau, ctx).value - zz -
                       (2.0 * ctx.eta1() - ctx.eta2())) < 1e-9);
        CHECK(std::abs(eval_elliptic(EllipticKind::zeta, -z, ctx).value + zz) < 1e-10);
        // Legendre relation
        CHECK(std::abs(ctx.eta1() * tau - ctx.eta2() - cplx{0.0, 2.0 * std::numbers::pi}) < 1e-8);
    }
}

TEST_CASE("wp' derivative agrees with a finite difference of wp") {
    EllipticContext ctx({0.3, 1.1});
    const cplx z{0.37, 0.22};
    const double h = 1e-5;
    const cplx fd = (eval_elliptic(EllipticKind::wp, z + h, ctx).value -
                     eval_elliptic(EllipticKind::wp, z - h, ctx).value) /
                    (2.0 * h);
    CHECK(std::abs(fd - eval_elliptic(EllipticKind::wp_prime, z, ctx).value) < 1e-5);
}

TEST_CASE("poles are reported at lattice points") {
    EllipticContext ctx({0.0, 1.0});
    CHECK(eval_elliptic(EllipticKind::wp, {1.0, 1.0}, ctx).is_pole());
    CHECK(eval_elliptic(EllipticKind::zeta, {-2.0, 0.0}, ctx).is_pole());
    EvalResult near = eval_elliptic(EllipticKind::wp, {1e-5, 0.0}, ctx);
    CHECK(near.kind == EvalResult::Kind::near_pole);
    CHECK(eval_elliptic(EllipticKind::wp, {0.5, 0.5}, ctx).is_value());
}

TEST_CASE("lattice reduction and distance") {
    const cplx tau{0.3, 1.1};
    Reduced r = reduce_to_cell(cplx{3.4, 0.2} + 2.0 * tau, tau);
    CHECK(std::abs(r.w + r.m + r.n * tau - (cplx{3.4, 0.2} + 2.0 * tau)) < 1e-12);
    CHECK(std::abs(r.w.imag()) <= tau.imag() / 2 + 1e-12);
    CHECK(lattice_distance(cplx{2.0, 0.0} + tau + cplx{0.1, 0.0}, tau) == doctest::Approx(0.1));
}

TEST_CASE("conjugation character sends lambda to its conjugate") {
    EllipticContext ctx({0.3, 1.1});
    E1Character ch = conjugation_character(ctx);
    CHECK(std::abs(character_value(ch, 1, 0, ctx) - 1.0) < 1e-12);
    CHECK(std::abs(character_value(ch, 0, 1, ctx) - std::conj(ctx.tau())) < 1e-12);
    CHECK(std::abs(character_value(ch, 2, -3, ctx) - std::conj(2.0 - 3.0 * ctx.tau())) < 1e-11);
}

TEST_CASE("invalid tau is a domain error and contexts serialise") {
    CHECK_THROWS_AS(EllipticContext({0.2, -1.0}), DomainError);
    CHECK_THROWS_AS(EllipticContext({0.2, 0.0}), DomainError);
    EllipticContext ctx({0.3, 1.1});
    EllipticContext back = EllipticContext::from_json(ctx.to_json());
    CHECK(std::abs(back.g2() - ctx.g2()) < 1e-14);
    CHECK(std::abs(back.eta2() - ctx.eta2()) < 1e-14);
}
