#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "ellconn/connection.hpp"
#include "ellconn/family_catalog.hpp"
#include "ellconn/surface_atlas.hpp"

namespace ellconn {

// Delta = [[b, c], [nu, a], [0, mu]]
struct OperMatrix {
    Expr b, c, nu, a, mu;
};

nlohmann::json to_json(const OperMatrix& m);
OperMatrix oper_from_json(const nlohmann::json& j);

struct Membership {
    bool plus = true;         // every 3x2 matrix of the shape
    bool plus_plus = false;   // mu == nu
    bool zero = false;        // mu == nu == 0
    double mu_minus_nu = 0.0; // sampled max |mu - nu|
};

Membership classify_oper(const OperMatrix& m, const SampleDomain& domain, int samples, std::uint64_t seed,
                         double tol);

using ExprMat3 = std::array<std::array<Expr, 3>, 3>;

struct AutomorphyFactors {
    ExprMat2 A1;
    ExprMat2 A1_inverse;
    ExprMat3 A2;
};

// Jet automorphy factors of gamma; the printed variant differs in A2(1,2).
AutomorphyFactors oper_automorphy(const RealMat2& g, Variant v = Variant::derived);

// Max deviation of A^{g h}(z) from A^{h}(z) A^{g}(h z) for A2.
ResidualResult cocycle_residual(const RealMat2& g, const RealMat2& h, const SampleDomain& domain, int samples,
                                std::uint64_t seed, Variant v = Variant::derived);
// Same with the factors multiplied in the opposite order.
ResidualResult cocycle_residual_swapped(const RealMat2& g, const RealMat2& h, const SampleDomain& domain,
                                        int samples, std::uint64_t seed, Variant v = Variant::derived);

struct EquivarianceResult {
    bool in_plus_plus = false;
    std::optional<ResidualResult> residual;  // absent when not in P++
};

// max |A2(z) Delta(g z) A1(z)^{-1} - Delta(z)|
EquivarianceResult oper_equivariance(const OperMatrix& m, const RealMat2& g, const SampleDomain& domain,
                                     int samples, std::uint64_t seed, double tol, Variant v = Variant::derived);

// f11 = kappa * a with kappa = 4 (derived) or -3 (printed).
double oper_kappa(Variant v);

ConnectionMatrix connection_from_oper(const Expr& g11, const OperMatrix& m, const SampleDomain& domain,
                                      Variant v = Variant::derived);

struct OperPair {
    Expr g11;
    OperMatrix delta;
};

OperPair oper_from_connection(const ConnectionMatrix& c, const SampleDomain& domain, Variant v = Variant::derived);

// Real fixed points of a hyperbolic element with c != 0.
std::array<double, 2> fixed_points(const RealMat2& g);

// An equivariant Delta with nu = mu = 0, built from the invariant function
// exp(2 pi i log(w)/log(kappa)), w = (z - x1)/(z - x2).
// coeffs = a0, a1, b0, b1, c0, c1.
OperMatrix synthesize_equivariant_oper(const RealMat2& g, const std::array<cplx, 6>& coeffs);

FamilyMember oper_family(const HyperbolicModel& m, const Expr& g11, const OperMatrix& delta,
                         Variant v = Variant::derived);

}  // namespace ellconn
