#pragma once

#include <complex>

namespace ellconn {

using cplx = std::complex<double>;

struct EvalResult {
    enum class Kind { value, pole, near_pole };

    Kind kind = Kind::value;
    cplx value{};
    // Distance-like magnitude of the offending denominator for near_pole.
    double distance = 0.0;

    static EvalResult of(cplx v) { return {Kind::value, v, 0.0}; }
    static EvalResult pole() { return {Kind::pole, cplx{}, 0.0}; }
    static EvalResult near(cplx v, double d) { return {Kind::near_pole, v, d}; }

    bool is_pole() const { return kind == Kind::pole; }
    bool is_value() const { return kind == Kind::value; }
};

// |den| below this fraction of (1 + |num|) counts as a pole.
inline constexpr double kPoleThreshold = 1e-12;
// Below this fraction the value is still returned but flagged.
inline constexpr double kNearPoleThreshold = 1e-8;

}  // namespace ellconn
