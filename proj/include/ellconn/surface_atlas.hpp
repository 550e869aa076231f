#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ellconn/automorphism.hpp"
#include "ellconn/connection.hpp"
#include "ellconn/elliptic.hpp"

namespace ellconn {

// Quotient of C^2 minus 0 by (z1, z2) -> (lambda z1, lambda^{1/d} z2).
struct HopfModel {
    cplx lambda{0.5, 0.0};
    int d = 1;
};

// Base lattice Z + tau Z, fiber lattice Z + fiber_tau Z, and
// phi_{l}(z1, z2) = (z1 + l, z2 + conj(l) z1 + beta_l) on the base generators.
struct PrimaryKodairaModel {
    cplx tau{0.0, 1.0};
    cplx fiber_tau{0.0, 1.0};
    cplx beta1{};
    cplx beta_tau{};
};

// Rank-four translation lattice; base generators may carry fiber offsets.
struct TwoTorusModel {
    cplx tau{0.0, 1.0};
    cplx fiber_tau{0.0, 1.0};
    cplx shift1{};
    cplx shift_tau{};
};

// Adds Psi(z1, z2) = (nu z1 + theta, mu z2 + shear z1 + offset).
struct SecondaryKodairaModel {
    std::variant<PrimaryKodairaModel, TwoTorusModel> underlying;
    cplx nu{-1.0, 0.0};
    cplx theta{};
    cplx mu{1.0, 0.0};
    cplx shear{};
    cplx offset{};
};

using RealMat2 = std::array<std::array<double, 2>, 2>;

// Upper half-plane times C, phi_g(z1, z2) = (g z1, z2 + log(c z1 + d)).
struct HyperbolicModel {
    std::vector<RealMat2> generators;
    cplx fiber_tau{0.0, 1.0};
    std::vector<int> log_branch;  // extra 2 pi i k per generator
};

using SurfaceModel =
    std::variant<HopfModel, PrimaryKodairaModel, TwoTorusModel, SecondaryKodairaModel, HyperbolicModel>;

std::string class_name(const SurfaceModel& m);
void validate(const SurfaceModel& m);  // throws InvalidModel
std::vector<SurfaceAutomorphism> deck_generators(const SurfaceModel& m);
SampleDomain default_domain(const SurfaceModel& m);
std::optional<EllipticContext> model_context(const SurfaceModel& m);
PullbackKind pullback_kind(const SurfaceModel& m);

// phi_{m + n tau} for a primary Kodaira model, with beta additive on generators.
SurfaceAutomorphism kodaira_translation(const PrimaryKodairaModel& m, int a, int b);

// (a z + b)/(c z + d) with fiber shift log(c z + d) + 2 pi i k.
SurfaceAutomorphism hyperbolic_generator(const RealMat2& g, int branch = 0, const std::string& name = "phi");

nlohmann::json to_json(const SurfaceModel& m);
SurfaceModel model_from_json(const nlohmann::json& j);

}  // namespace ellconn
