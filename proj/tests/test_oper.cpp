#include <doctest.h>

#include <cmath>

#include "ellconn/errors.hpp"
#include "ellconn/oper.hpp"
#include "ellconn/verifier.hpp"

using namespace ellconn;

namespace {

const RealMat2 kG{{{2.0, 1.0}, {1.0, 1.0}}};
const RealMat2 kH{{{1.0, 1.0}, {1.0, 2.0}}};

HyperbolicModel model() { return {{kG}, {0.0, 1.0}, {}}; }

SampleDomain dom() { return default_domain(model()); }

OperMatrix synth() { return synthesize_equivariant_oper(kG, {{{0.3, 0.1}, {0.2, -0.1}, {-0.4, 0.2}, {0.1, 0.1}, 0.5, {0.0, 0.3}}}); }

}  // namespace

TEST_CASE("jet factor A2 satisfies the cocycle identity; the printed one does not") {
    const RealMat2 pairs[][2] = {{kG, kH}, {kH, kG}, {{{{0.5, 0.0}, {0.3, 2.0}}}, kG}};
    for (const auto& gh : pairs) {
        CHECK(cocycle_residual(gh[0], gh[1], dom(), 40, 1).max_residual < 1e-10);
        CHECK(cocycle_residual(gh[0], gh[1], dom(), 40, 1, Variant::printed).max_residual > 1e-3);
        CHECK(cocycle_residual_swapped(gh[0], gh[1], dom(), 40, 1, Variant::printed).max_residual > 1e-3);
    }
}

TEST_CASE("A1 inverse really is the inverse of the lower block") {
    AutomorphyFactors f = oper_automorphy(kH);
    ExprMat2 prod = mat_mul(f.A1, f.A1_inverse);
    CHECK(sampled_difference(flatten(prod), {constant(1.0), constant(0.0), constant(0.0), constant(1.0)}, dom(), 20,
                             1, nullptr)
              .max_residual < 1e-12);
}

TEST_CASE("A2 is the action on 2-jets of weight-one transforms") {
    // U(z) = u(gz) / j(z) gives (U'', U', U)(z) = A2(z) (u'', u', u)(gz) for any u.
    const Expr u = power(z1(), 3) + constant(0.5) * z1() + quotient(constant(1.0), z1() + constant(3.0));
    const Expr j = constant(kG[1][0]) * z1() + constant(kG[1][1]);
    const Expr gz = quotient(constant(kG[0][0]) * z1() + constant(kG[0][1]), j);
    auto at_gz = [&](const Expr& e) { return substitute(e, gz, z2()); };
    const Expr U = at_gz(u) * power(j, -1);
    const Expr U1 = differentiate(U, Coord::z1), U2 = differentiate(U1, Coord::z1);
    const Expr u1 = differentiate(u, Coord::z1), u2 = differentiate(u1, Coord::z1);
    const std::array<Expr, 3> jet{at_gz(u2), at_gz(u1), at_gz(u)};
    const std::array<Expr, 3> lhs{U2, U1, U};
    for (Variant v : {Variant::derived, Variant::printed}) {
        AutomorphyFactors f = oper_automorphy(kG, v);
        std::vector<Expr> rhs, want;
        for (int i = 0; i < 3; ++i) {
            rhs.push_back(sum({f.A2[i][0] * jet[0], f.A2[i][1] * jet[1], f.A2[i][2] * jet[2]}));
            want.push_back(lhs[i]);
        }
        const double r = sampled_difference(rhs, want, dom(), 30, 1, nullptr).max_residual;
        if (v == Variant::derived)
            CHECK(r < 1e-10);
        else
            CHECK(r > 1e-3);
    }
}

TEST_CASE("fixed points of a hyperbolic element") {
    auto [x1, x2] = fixed_points(kG);
    for (double x : {x1, x2}) CHECK(std::abs((2.0 * x + 1.0) / (x + 1.0) - x) < 1e-13);
    CHECK_THROWS_AS(fixed_points({{{1.0, 1.0}, {0.0, 1.0}}}), InvalidModel);
    CHECK_THROWS_AS(fixed_points({{{0.0, -1.0}, {1.0, 0.0}}}), InvalidModel);
}

TEST_CASE("synthesised opers are equivariant; perturbed ones are not") {
    OperMatrix d = synth();
    EquivarianceResult r = oper_equivariance(d, kG, dom(), 50, 2, 1e-9);
    REQUIRE(r.in_plus_plus);
    CHECK(r.residual->max_residual < 1e-10);
    CHECK(oper_equivariance(d, kG, dom(), 50, 2, 1e-9, Variant::printed).residual->max_residual > 1e-3);
    d.b = d.b + constant(0.1);
    CHECK(oper_equivariance(d, kG, dom(), 50, 2, 1e-9).residual->max_residual > 1e-3);
    OperMatrix off = synth();
    off.mu = constant(1.0);
    CHECK_FALSE(oper_equivariance(off, kG, dom(), 50, 2, 1e-9).in_plus_plus);
}

TEST_CASE("membership flags") {
    OperMatrix d = synth();
    Membership m = classify_oper(d, dom(), 30, 1, 1e-9);
    CHECK(m.plus);
    CHECK(m.plus_plus);
    CHECK(m.zero);
    d.nu = d.mu = z1();
    m = classify_oper(d, dom(), 30, 1, 1e-9);
    CHECK(m.plus_plus);
    CHECK_FALSE(m.zero);
    d.mu = z1() + constant(1.0);
    m = classify_oper(d, dom(), 30, 1, 1e-9);
    CHECK(m.plus);
    CHECK_FALSE(m.plus_plus);
    CHECK_FALSE(m.zero);
}

TEST_CASE("connection <-> oper transfer") {
    OperMatrix d = synth();
    ConnectionMatrix c = connection_from_oper(constant(0.0), d, dom());
    CHECK(max_generator_residual(c, model(), {60, 1e-8, 1}) < 1e-9);
    OperPair back = oper_from_connection(c, dom());
    CHECK(structurally_equal(back.delta.a, d.a));
    CHECK(structurally_equal(back.delta.nu, d.nu));
    // g21 off zero leaves the subspace
    ConnectionMatrix out = c;
    out.G[1][0] = z1();
    CHECK_THROWS_AS(oper_from_connection(out, dom()), NotInSubspace);
    OperMatrix off = d;
    off.mu = constant(1.0);
    CHECK_THROWS_AS(connection_from_oper(constant(0.0), off, dom()), NotInSubspace);
    // the printed factor -3 breaks invariance
    CHECK(max_generator_residual(connection_from_oper(constant(0.0), d, dom(), Variant::printed), model(),
                                 {60, 1e-8, 1}) > 1e-3);
}

TEST_CASE("oper family reports both discrepancies") {
    FamilyMember fm = oper_family(model(), constant(0.0), synth());
    VerificationReport r = verify_family(fm, model(), {60, 1e-8, 0});
    CHECK(r.pass);
    REQUIRE(r.discrepancies.size() == 2);
    CHECK(*r.discrepancies[0].printed_residual > 1e-3);
    CHECK(*r.discrepancies[0].derived_residual < 1e-10);
    CHECK(*r.discrepancies[1].printed_residual > 1e-3);
}

TEST_CASE("oper JSON round trip") {
    OperMatrix d = synth();
    OperMatrix back = oper_from_json(to_json(d));
    CHECK(structurally_equal(back.c, d.c));
    CHECK_THROWS_AS(oper_from_json(nlohmann::json::array()), InputError);
}
