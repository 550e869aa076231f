#pragma once

#include <json.hpp>

#include "ellconn/eval_result.hpp"

namespace ellconn {

// Lattice Z + tau Z with its invariants and quasi-periods.
class EllipticContext {
public:
    explicit EllipticContext(cplx tau);

    cplx tau() const { return tau_; }
    cplx g2() const { return g2_; }
    cplx g3() const { return g3_; }
    cplx eta1() const { return eta1_; }  // zeta(z+1) - zeta(z)
    cplx eta2() const { return eta2_; }  // zeta(z+tau) - zeta(z)

    // Number of lattice rows summed for an argument with |Im| <= im_bound.
    int rows_for(double im_bound) const;

    nlohmann::json to_json() const;
    static EllipticContext from_json(const nlohmann::json& j);

private:
    cplx tau_;
    cplx g2_, g3_, eta1_, eta2_;
};

EllipticContext make_context(cplx tau);

enum class EllipticKind { wp, wp_prime, zeta };

EvalResult eval_elliptic(EllipticKind kind, cplx z, const EllipticContext& ctx);

// Euclidean distance from z to the nearest lattice point.
double lattice_distance(cplx z, cplx tau);

// Writes z = w + m + n tau with w near the origin.
struct Reduced {
    cplx w;
    double m;
    double n;
};
Reduced reduce_to_cell(cplx z, cplx tau);

// E1 = alpha * zeta + beta * z; translation by m + n tau adds this value.
struct E1Character {
    cplx alpha{};
    cplx beta{};
};

cplx character_value(const E1Character& ch, int m, int n, const EllipticContext& ctx);

// The unique character with lambda -> conj(lambda).
E1Character conjugation_character(const EllipticContext& ctx);

}  // namespace ellconn
