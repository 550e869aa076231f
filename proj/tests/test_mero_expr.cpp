#include <doctest.h>

#include <cmath>

#include "ellconn/elliptic.hpp"
#include "ellconn/errors.hpp"
#include "ellconn/mero_expr.hpp"

using namespace ellconn;

namespace {

cplx at(const Expr& e, cplx a, cplx b, const EllipticContext* ctx = nullptr) {
    EvalResult r = evaluate(e, {a, b}, ctx);
    REQUIRE(r.is_value());
    return r.value;
}

// central difference in one coordinate
cplx fd(const Expr& e, Coord c, cplx a, cplx b, const EllipticContext* ctx = nullptr) {
    const double h = 1e-5;
    if (c == Coord::z1) return (at(e, a + h, b, ctx) - at(e, a - h, b, ctx)) / (2.0 * h);
    return (at(e, a, b + h, ctx) - at(e, a, b - h, ctx)) / (2.0 * h);
}

}  // namespace

TEST_CASE("builders fold constants and collect like terms") {
    CHECK(structurally_equal(constant(2.0) + constant(3.0), constant(5.0)));
    CHECK((z1() - z1()).is_zero());
    CHECK(structurally_equal(z1() * z1(), power(z1(), 2)));
    CHECK((constant(0.0) * wp()).is_zero());
    CHECK(structurally_equal(constant(1.0) * z2(), z2()));
    CHECK(depends_on(z1() * wp(), Coord::z1));
    CHECK_FALSE(depends_on(z1() * wp(), Coord::z2));
    CHECK(depends_on(quotient(constant(1.0), z2()), Coord::z2));
}

TEST_CASE("raw builders keep the given structure") {
    const Expr s = raw::sum({constant(1.0), constant(2.0)});
    CHECK(s.node().op == Op::sum);
    CHECK(s.node().args.size() == 2);
    CHECK_FALSE(structurally_equal(s, constant(3.0)));
    CHECK(at(s, 0.0, 0.0) == cplx{3.0, 0.0});
}

TEST_CASE("evaluation of rational expressions and poles") {
    const Expr e = quotient(z1() * z1() + constant(1.0), z2() - constant(2.0));
    CHECK(std::abs(at(e, {1.0, 1.0}, 3.0) - cplx{1.0, 2.0}) < 1e-14);
    CHECK(evaluate(e, {0.5, 2.0}).is_pole());
    CHECK(evaluate(power(z1(), -3), {0.0, 0.0}).is_pole());
}

TEST_CASE("derivatives agree with finite differences") {
    EllipticContext ctx({0.3, 1.1});
    const Expr exprs[] = {
        power(z1(), 3) * z2() - quotient(z2(), z1() + constant(2.0)),
        wp() * zeta() + power(wp_prime(), 2),
        exp_of(z1() * z2()) + log_of(z1() + constant(3.0)),
        wp(constant(2.0) * z1() + z2()),
        quotient(wp_prime(), wp() - constant(1.0)),
    };
    for (const Expr& e : exprs) {
        for (Coord c : {Coord::z1, Coord::z2}) {
            const Expr d = differentiate(e, c);
            for (cplx a : {cplx{0.31, 0.22}, cplx{-0.27, 0.41}}) {
                const cplx b{0.13, -0.08};
                const cplx want = fd(e, c, a, b, &ctx);
                CHECK(std::abs(at(d, a, b, &ctx) - want) < 1e-5 * (1.0 + std::abs(want)));
            }
        }
    }
}

TEST_CASE("second derivative of wp closes through g2") {
    EllipticContext ctx({0.0, 1.2});
    const Expr d2 = differentiate(differentiate(wp(), Coord::z1), Coord::z1);
    const cplx z{0.3, 0.2};
    const cplx p = eval_elliptic(EllipticKind::wp, z, ctx).value;
    CHECK(std::abs(at(d2, z, 0.0, &ctx) - (6.0 * p * p - ctx.g2() / 2.0)) < 1e-9);
    CHECK(structurally_equal(differentiate(zeta(), Coord::z1), -wp()));
}

TEST_CASE("substitution composes") {
    const Expr e = z1() * z1() + z2();
    const Expr s = substitute(e, z1() + constant(1.0), constant(2.0) * z2());
    CHECK(std::abs(at(s, 2.0, 5.0) - cplx{19.0, 0.0}) < 1e-14);
    const Expr id = substitute(e, z1(), z2());
    CHECK(std::abs(at(id, 1.5, 0.5) - at(e, 1.5, 0.5)) < 1e-15);
}

TEST_CASE("JSON round trip preserves structure") {
    const Expr exprs[] = {
        raw::sum({constant(cplx{1.0, -2.0}), z1(), raw::product({z2(), wp()})}),
        quotient(wp_prime(z1() + constant(0.5)), power(z2(), -2)),
        exp_of(log_of(z1())) + g2_invariant() * g3_invariant(),
        zeta(constant(2.0) * z1()),
    };
    for (const Expr& e : exprs) {
        Expr back = expr_from_json(to_json(e));
        CHECK(structurally_equal(back, e));
        CHECK(to_json(back) == to_json(e));
    }
}

TEST_CASE("JSON parser rejects malformed input") {
    CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"op": "nope"})")), InputError);
    CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"op": "sum", "args": []})")), InputError);
    CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"op": "pow", "base": {"op": "z1"}, "exp": 1.5})")),
                    InputError);
    CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse(R"({"op": "gen", "name": "unregistered"})")), InputError);
    CHECK_THROWS_AS(expr_from_json(nlohmann::json::parse("[1, 2, 3]")), InputError);
    CHECK(complex_from_json(nlohmann::json::parse("[1.5, -2]")) == cplx{1.5, -2.0});
}

TEST_CASE("nesting depth is capped") {
    Expr e = z1();
    for (int i = 0; i < kMaxNesting; ++i) e = exp_of(e);
    CHECK(e.node().nesting == kMaxNesting);
    CHECK_THROWS_AS(exp_of(e), ExpressionTooDeep);
}

TEST_CASE("user generators: evaluation, derivative and missing derivative") {
    GeneratorRule sq;
    sq.evaluate = [](cplx x, const EllipticContext*) { return EvalResult::of(x * x); };
    sq.derivative = [](const Expr& x) { return constant(2.0) * x; };
    register_generator("sq_test", sq);
    const Expr g = generator("sq_test", z1() + z2());
    CHECK(std::abs(at(g, 1.0, 2.0) - 9.0) < 1e-14);
    CHECK(std::abs(at(differentiate(g, Coord::z1), 1.0, 2.0) - 6.0) < 1e-14);
    CHECK(structurally_equal(expr_from_json(to_json(g)), g));

    GeneratorRule nod;
    nod.evaluate = [](cplx x, const EllipticContext*) { return EvalResult::of(std::sin(x)); };
    register_generator("sin_test", nod);
    CHECK_THROWS_AS(differentiate(generator("sin_test"), Coord::z1), DerivativeUnavailable);
    unregister_generator("sin_test");
    unregister_generator("sq_test");
    CHECK_FALSE(has_generator("sq_test"));
}

TEST_CASE("numeric equality by sampling") {
    SampleDomain d;
    const Expr a = power(z1() + z2(), 2);
    const Expr b = z1() * z1() + constant(2.0) * z1() * z2() + z2() * z2();
    NumericEqualResult r = numeric_equal(a, b, d, 40, 1e-12, 3);
    CHECK(r.equal);
    CHECK(r.accepted == 40);
    CHECK_FALSE(numeric_equal(a, b + constant(1e-6), d, 40, 1e-9, 3).equal);
    // every point is a pole of 1/(z1 - z1')
    CHECK_THROWS_AS(numeric_equal(quotient(constant(1.0), raw::sum({z1(), -z1()})), constant(0.0), d, 10, 1e-9, 3),
                    UnableToSample);
}

TEST_CASE("elliptic leaves need a context") {
    CHECK_THROWS_AS(evaluate(wp(), {0.3, 0.0}), InputError);
}

TEST_CASE("display strings mention the pieces") {
    const std::string s = to_string(wp() * z2() + zeta());
    CHECK(s.find("wp") != std::string::npos);
    CHECK(s.find("z2") != std::string::npos);
}
