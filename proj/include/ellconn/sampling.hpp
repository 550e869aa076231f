#pragma once

#include <cstdint>
#include <random>

#include "ellconn/eval_result.hpp"

namespace ellconn {

struct Point {
    cplx z1{};
    cplx z2{};
};

// A region of the complex plane to draw one coordinate from.
struct Region {
    enum class Shape { box, annulus, parallelogram };
    Shape shape = Shape::box;
    // box: [lo.real, hi.real] x [lo.imag, hi.imag]
    // annulus: lo.real <= |z| <= hi.real
    // parallelogram: s + t*tau, s in [lo.real, hi.real], t in [lo.imag, hi.imag]
    cplx lo{-1.0, -1.0};
    cplx hi{1.0, 1.0};
    cplx tau{0.0, 1.0};
    // parallelogram only: reject points closer than this to Z + tau Z
    double lattice_clearance = 0.0;

    static Region box(cplx lo, cplx hi);
    static Region annulus(double rmin, double rmax);
    static Region parallelogram(cplx tau, double half_width, double clearance);
};

struct SampleDomain {
    Region z1 = Region::box({-1, -1}, {1, 1});
    Region z2 = Region::box({-1, -1}, {1, 1});
};

// Deterministic point stream; independent of the standard library's
// distribution implementations so that seeds reproduce across toolchains.
class Sampler {
public:
    Sampler(SampleDomain domain, std::uint64_t seed);
    Point next();
    double uniform();  // [0, 1)

private:
    cplx draw(const Region& r);
    SampleDomain domain_;
    std::mt19937_64 rng_;
};

// Mix a base seed with a stream index.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Samples where any evaluated value, intermediate ones included, exceeds this are discarded.
inline constexpr double kMagnitudeCap = 1e6;

}  // namespace ellconn
