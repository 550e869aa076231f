#include <doctest.h>

#include <cmath>

#include "ellconn/errors.hpp"
#include "ellconn/surface_atlas.hpp"

using namespace ellconn;

namespace {

std::vector<std::string> names(const SurfaceModel& m) {
    std::vector<std::string> out;
    for (const auto& g : deck_generators(m)) out.push_back(g.name);
    return out;
}

PrimaryKodairaModel kodaira() { return {{0.3, 1.1}, {0.1, 1.2}, {0.2, 0.1}, {-0.3, 0.4}}; }

}  // namespace

TEST_CASE("deck generators per class") {
    CHECK(names(HopfModel{0.5, 2}) == std::vector<std::string>{"gamma_d"});
    CHECK(names(kodaira()) == std::vector<std::string>{"psi1", "psi2", "phi1", "phitau"});
    CHECK(names(TwoTorusModel{}) == std::vector<std::string>{"psi1", "psi2", "t1", "ttau"});
    SecondaryKodairaModel s;
    s.underlying = kodaira();
    CHECK(names(s).back() == "Psi");
    CHECK(names(s).size() == 5);
    HyperbolicModel h{{{{{2.0, 1.0}, {1.0, 1.0}}}, {{{1.0, 1.0}, {0.0, 1.0}}}}, {0.0, 1.0}, {}};
    CHECK(names(h) == std::vector<std::string>{"psi1", "psi2", "phi1", "phi2"});
}

TEST_CASE("Hopf generator: d-th power scales both coordinates by lambda") {
    HopfModel m{{0.5, 0.1}, 3};
    SurfaceAutomorphism g = deck_generators(m).front();
    Point p{{0.7, 0.2}, {-0.3, 0.9}};
    Point q = p;
    for (int i = 0; i < 3; ++i) q = g.apply(q);
    CHECK(std::abs(q.z2 - m.lambda * p.z2) < 1e-14);
    CHECK(std::abs(q.z1 - m.lambda * m.lambda * m.lambda * p.z1) < 1e-14);
}

TEST_CASE("Kodaira translations compose up to a fiber constant") {
    const PrimaryKodairaModel m = kodaira();
    SurfaceAutomorphism ab = compose(kodaira_translation(m, 1, 0), kodaira_translation(m, 0, 1));
    SurfaceAutomorphism direct = kodaira_translation(m, 1, 1);
    for (cplx z : {cplx{0.1, 0.2}, cplx{-0.5, 0.7}}) {
        Point p{z, {0.3, -0.2}};
        Point a = ab.apply(p), b = direct.apply(p);
        CHECK(std::abs(a.z1 - b.z1) < 1e-14);
        // conj(1) * tau from moving z1 by tau before the shift by conj(1) z1
        CHECK(std::abs(a.z2 - b.z2 - m.tau) < 1e-14);
    }
}

TEST_CASE("hyperbolic generator shifts the fiber by log(cz + d)") {
    SurfaceAutomorphism g = hyperbolic_generator({{{2.0, 1.0}, {1.0, 1.0}}}, 1);
    Point p{{0.3, 0.8}, {0.1, 0.0}};
    Point q = g.apply(p);
    CHECK(std::abs(q.z1 - (2.0 * p.z1 + 1.0) / (p.z1 + 1.0)) < 1e-14);
    CHECK(std::abs(q.z2 - (p.z2 + std::log(p.z1 + 1.0) + cplx{0.0, 2.0 * M_PI})) < 1e-14);
}

TEST_CASE("invalid models are rejected") {
    CHECK_THROWS_AS(validate(HopfModel{1.0, 1}), InvalidModel);
    CHECK_THROWS_AS(validate(HopfModel{0.0, 1}), InvalidModel);
    CHECK_THROWS_AS(validate(HopfModel{0.5, 0}), InvalidModel);
    CHECK_THROWS_AS(validate(PrimaryKodairaModel{{0.3, -1.0}}), InvalidModel);
    SecondaryKodairaModel s;
    s.underlying = kodaira();
    s.nu = {0.0, 1.0};  // order 4 does not preserve Z + (0.3 + 1.1i) Z
    CHECK_THROWS_AS(validate(s), InvalidModel);
    s.nu = -1.0;
    s.mu = -1.0;
    CHECK_THROWS_AS(validate(s), InvalidModel);
    s.mu = 1.0;
    s.nu = 2.0;
    CHECK_THROWS_AS(validate(s), InvalidModel);
    s.nu = -1.0;
    CHECK_NOTHROW(validate(s));
    SecondaryKodairaModel sq;
    sq.underlying = TwoTorusModel{{0.0, 1.0}, {0.0, 1.0}, {}, {}};
    sq.nu = {0.0, 1.0};
    sq.mu = -1.0;
    CHECK_NOTHROW(validate(sq));
    HyperbolicModel bad{{{{{2.0, 1.0}, {1.0, 2.0}}}}, {0.0, 1.0}, {}};
    CHECK_THROWS_AS(validate(bad), InvalidModel);
    CHECK_THROWS_AS(validate(HyperbolicModel{}), InvalidModel);
}

TEST_CASE("model JSON round trip and errors") {
    SecondaryKodairaModel s;
    s.underlying = kodaira();
    s.shear = 0.5;
    s.offset = 0.25;
    const SurfaceModel models[] = {HopfModel{{0.5, 0.2}, 3}, kodaira(), TwoTorusModel{{0.1, 0.9}, {0.0, 1.0}, 0.2, 0.3},
                                   s, HyperbolicModel{{{{{2.0, 1.0}, {1.0, 1.0}}}}, {0.0, 1.0}, {2}}};
    for (const auto& m : models) {
        const nlohmann::json j = to_json(m);
        CHECK(to_json(model_from_json(j)) == j);
        CHECK(class_name(model_from_json(j)) == class_name(m));
    }
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"class": "k3"})")), InputError);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"class": "hopf", "lambda": 2, "d": 1})")),
                    InvalidModel);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"class": "hopf", "lambda": 0.5})")), InputError);
}

TEST_CASE("pullback kind and lattice context per class") {
    CHECK(pullback_kind(HyperbolicModel{{{{{2.0, 1.0}, {1.0, 1.0}}}}, {0.0, 1.0}, {}}) == PullbackKind::tensor);
    CHECK(pullback_kind(kodaira()) == PullbackKind::affine);
    CHECK(model_context(kodaira()).has_value());
    CHECK_FALSE(model_context(HopfModel{}).has_value());
}
