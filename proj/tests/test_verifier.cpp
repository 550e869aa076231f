#include <doctest.h>

#include "ellconn/errors.hpp"
#include "ellconn/verifier.hpp"

using namespace ellconn;

namespace {

HopfModel hopf(int d = 1) { return {0.5, d}; }

ConnectionMatrix hopf_p21(int d = 1) {
    HopfParams p;
    for (auto& row : p.P)
        for (auto& r : row) r = RationalFunction::constant(0.0);
    p.Q = p.P;
    p.P[1][0] = RationalFunction::constant(1.0);
    return hopf_connection(hopf(d), p);
}

}  // namespace

TEST_CASE("report fields and schema") {
    VerificationReport r = verify(hopf_p21(), hopf(), {50, 1e-8, 4});
    CHECK(r.pass);
    CHECK(r.generators.size() == 1);
    CHECK(r.generators[0].samples == 50);
    REQUIRE(r.curvature_max);
    CHECK(*r.curvature_max > 0.1);
    nlohmann::json j = to_json(r);
    for (const char* k : {"verdict", "generators", "curvature", "discrepancies", "seed", "tol"}) CHECK(j.contains(k));
    CHECK(j["verdict"] == "pass");
    for (const char* k : {"name", "residual", "samples"}) CHECK(j["generators"][0].contains(k));
    CHECK(j["curvature"]["flat"] == false);
    CHECK(to_text(r).find("verdict: pass") == 0);
}

TEST_CASE("identical seeds give identical reports, different seeds different samples") {
    ConnectionMatrix c = perturb(hopf_p21(), PerturbationKind::add_z2);
    auto a = to_json(verify(c, hopf(), {40, 1e-8, 9})).dump();
    auto b = to_json(verify(c, hopf(), {40, 1e-8, 9})).dump();
    auto d = to_json(verify(c, hopf(), {40, 1e-8, 10})).dump();
    CHECK(a == b);
    CHECK(a != d);
}

TEST_CASE("monotone in sample count for clear failures") {
    ConnectionMatrix c = perturb(hopf_p21(), PerturbationKind::add_z1);
    double prev = 0.0;
    for (int n : {10, 20, 40, 80, 160}) {
        VerificationReport r = verify(c, hopf(), {n, 1e-8, 0});
        CHECK_FALSE(r.pass);
        // the first n samples are shared, so the maximum can only grow
        CHECK(r.max_residual() >= prev);
        prev = r.max_residual();
    }
}

TEST_CASE("perturbed members are rejected well above tolerance") {
    // at d = 1 every entry has the same homogeneity, so use d = 2
    for (PerturbationKind k : {PerturbationKind::multiply_z2, PerturbationKind::add_z2, PerturbationKind::swap_entries,
                               PerturbationKind::add_inverse_z2, PerturbationKind::add_z1})
        CHECK(max_generator_residual(perturb(hopf_p21(2), k), hopf(2), {50, 1e-8, 0}) >= 1e-6);
}

TEST_CASE("flatness check") {
    ConnectionMatrix zero;
    zero.F = zero_mat();
    zero.G = zero_mat();
    FlatnessResult f = flatness_check(zero, SampleDomain{}, {});
    CHECK(f.flat);
    CHECK(f.max_abs == 0.0);
    CHECK_FALSE(flatness_check(hopf_p21(), default_domain(hopf()), {}).flat);
}

TEST_CASE("membership entries for Kodaira and hyperbolic models") {
    PrimaryKodairaModel m{{0.3, 1.1}, {0.1, 1.2}, {}, {}};
    ConnectionMatrix c = kodaira_form_II(m, kodaira_constant_flat(0.3, 0.1));
    VerificationReport r = verify(c, m, {30, 1e-8, 0});
    REQUIRE(r.membership.size() == 1);
    CHECK(r.membership[0].member);
}

TEST_CASE("bad configuration is an input error") {
    CHECK_THROWS_AS(verify(hopf_p21(), hopf(), {0, 1e-8, 0}), InputError);
    CHECK_THROWS_AS(verify(hopf_p21(), hopf(), {10, -1.0, 0}), InputError);
}

TEST_CASE("numbers are rounded to 15 significant digits") {
    nlohmann::json j = round_numbers({{"x", 0.1 + 0.2}, {"v", {1.0 / 3.0, 2}}, {"s", "t"}});
    CHECK(j["x"].dump() == "0.3");
    CHECK(j["v"][0].dump() == "0.333333333333333");
    CHECK(j["v"][1] == 2);
    CHECK(j["s"] == "t");
}
