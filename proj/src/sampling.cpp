#include "ellconn/sampling.hpp"

#include <cmath>
#include <numbers>

namespace ellconn {

Region Region::box(cplx lo, cplx hi) {
    Region r;
    r.shape = Shape::box;
    r.lo = lo;
    r.hi = hi;
    return r;
}

Region Region::annulus(double rmin, double rmax) {
    Region r;
    r.shape = Shape::annulus;
    r.lo = rmin;
    r.hi = rmax;
    return r;
}

Region Region::parallelogram(cplx tau, double half_width, double clearance) {
    Region r;
    r.shape = Shape::parallelogram;
    r.lo = {-half_width, -half_width};
    r.hi = {half_width, half_width};
    r.tau = tau;
    r.lattice_clearance = clearance;
    return r;
}

Sampler::Sampler(SampleDomain domain, std::uint64_t seed) : domain_(domain), rng_(seed) {}

double Sampler::uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

static double lerp(double a, double b, double t) { return a + (b - a) * t; }

static double distance_to_lattice(cplx z, cplx tau) {
    // coordinates of z in the basis (1, tau)
    double t = z.imag() / tau.imag();
    double s = z.real() - t * tau.real();
    double best = INFINITY;
    double s0 = std::floor(s), t0 = std::floor(t);
    for (int dm = 0; dm <= 1; ++dm)
        for (int dn = 0; dn <= 1; ++dn) {
            cplx w = z - (s0 + dm) - (t0 + dn) * tau;
            best = std::min(best, std::abs(w));
        }
    return best;
}

cplx Sampler::draw(const Region& r) {
    switch (r.shape) {
        case Region::Shape::box:
            return {lerp(r.lo.real(), r.hi.real(), uniform()), lerp(r.lo.imag(), r.hi.imag(), uniform())};
        case Region::Shape::annulus: {
            // uniform in log-radius keeps small and large moduli equally represented
            double rad = std::exp(lerp(std::log(r.lo.real()), std::log(r.hi.real()), uniform()));
            double ang = 2.0 * std::numbers::pi * uniform();
            return std::polar(rad, ang);
        }
        case Region::Shape::parallelogram:
            for (;;) {
                double s = lerp(r.lo.real(), r.hi.real(), uniform());
                double t = lerp(r.lo.imag(), r.hi.imag(), uniform());
                cplx z = s + t * r.tau;
                if (distance_to_lattice(z, r.tau) >= r.lattice_clearance) return z;
            }
    }
    return {};
}

Point Sampler::next() {
    Point p;
    p.z1 = draw(domain_.z1);
    p.z2 = draw(domain_.z2);
    return p;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finaliser over the pair
    std::uint64_t x = seed * 0x9E3779B97F4A7C15ULL + stream + 0x632BE59BD9B4E019ULL;
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

}  // namespace ellconn
