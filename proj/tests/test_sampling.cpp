#include <doctest.h>

#include <cmath>

#include "ellconn/elliptic.hpp"
#include "ellconn/sampling.hpp"

using namespace ellconn;

TEST_CASE("sampler is reproducible per seed") {
    SampleDomain d;
    Sampler a(d, 42), b(d, 42), c(d, 43);
    bool differs = false;
    for (int i = 0; i < 50; ++i) {
        Point p = a.next(), q = b.next(), r = c.next();
        CHECK(p.z1 == q.z1);
        CHECK(p.z2 == q.z2);
        differs = differs || p.z1 != r.z1;
    }
    CHECK(differs);
}

TEST_CASE("sampler stays inside its regions") {
    SampleDomain d;
    d.z1 = Region::annulus(0.3, 3.0);
    d.z2 = Region::box({-1, 0.5}, {2, 1});
    Sampler s(d, 1);
    for (int i = 0; i < 500; ++i) {
        Point p = s.next();
        CHECK(std::abs(p.z1) >= 0.3 - 1e-12);
        CHECK(std::abs(p.z1) <= 3.0 + 1e-12);
        CHECK(p.z2.real() >= -1.0);
        CHECK(p.z2.real() <= 2.0);
        CHECK(p.z2.imag() >= 0.5);
        CHECK(p.z2.imag() <= 1.0);
    }
}

TEST_CASE("parallelogram sampling respects the lattice clearance") {
    const cplx tau{0.3, 1.1};
    SampleDomain d;
    d.z1 = Region::parallelogram(tau, 1.0, 0.2);
    Sampler s(d, 9);
    for (int i = 0; i < 500; ++i) CHECK(lattice_distance(s.next().z1, tau) >= 0.2 - 1e-12);
}

TEST_CASE("uniform draws lie in [0, 1) and derived seeds separate streams") {
    Sampler s(SampleDomain{}, 5);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 2000; ++i) {
        double u = s.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo >= 0.0);
    CHECK(hi < 1.0);
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
    CHECK(derive_seed(7, 1) != derive_seed(7, 2));
    CHECK(derive_seed(7, 1) == derive_seed(7, 1));
}
