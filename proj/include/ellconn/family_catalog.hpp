#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellconn/connection.hpp"
#include "ellconn/surface_atlas.hpp"

namespace ellconn {

// num(X)/den(X), coefficients in ascending degree.
struct RationalFunction {
    std::vector<cplx> num{cplx{0.0, 0.0}};
    std::vector<cplx> den{cplx{1.0, 0.0}};

    static RationalFunction constant(cplx c);
    Expr in(const Expr& x) const;
    bool is_zero() const;
};

nlohmann::json to_json(const RationalFunction& r);
RationalFunction rational_from_json(const nlohmann::json& j);

// A place where the printed classification and the derived one diverge.
struct Discrepancy {
    std::string id;
    std::string printed;
    std::string derived;
    std::string note;
    std::optional<double> printed_residual;
    std::optional<double> derived_residual;
    // Residuals are filled in by comparing FamilyMember::printed with the connection.
    bool compare_printed = false;
};

nlohmann::json to_json(const Discrepancy& d);

struct FamilyMember {
    std::string family;
    ConnectionMatrix connection;
    std::vector<Discrepancy> discrepancies;
    // The printed matrix for the same parameters, where it differs.
    std::optional<ConnectionMatrix> printed;
};

enum class Variant { derived, printed };

// ---------------------------------------------------------------- Hopf

using RationalMat2 = std::array<std::array<RationalFunction, 2>, 2>;

struct HopfParams {
    RationalMat2 P;  // dz1 block
    RationalMat2 Q;  // dz2 block
};

// Exponents (a, b) of the monomial z1^a z2^b multiplying each entry.
struct MonomialTable {
    std::array<std::array<std::array<int, 2>, 2>, 2> F;
    std::array<std::array<std::array<int, 2>, 2>, 2> G;
};

MonomialTable hopf_monomials(int d, Variant v = Variant::derived);
ConnectionMatrix hopf_connection(const HopfModel& m, const HopfParams& p, Variant v = Variant::derived);
FamilyMember hopf_family(const HopfModel& m, const HopfParams& p);

// ---------------------------------------------------------------- primary Kodaira

// Z = alpha*zeta + beta*z1 with translation character conj.
Expr kodaira_Z(const EllipticContext& ctx);

struct KodairaFormIIParams {
    Expr g11, g22, f12, gamma11, gamma22, gamma21, delta21;
};

struct KodairaFormIParams {
    Expr g12, delta11, delta22, delta21, gamma11, gamma22, gamma12, gamma21;
};

ConnectionMatrix kodaira_form_II(const PrimaryKodairaModel& m, const KodairaFormIIParams& p,
                                 Variant v = Variant::derived);
ConnectionMatrix kodaira_form_I(const PrimaryKodairaModel& m, const KodairaFormIParams& p,
                                Variant v = Variant::derived);
FamilyMember kodaira_II_family(const PrimaryKodairaModel& m, const KodairaFormIIParams& p);
FamilyMember kodaira_I_family(const PrimaryKodairaModel& m, const KodairaFormIParams& p);

// Triangular solve of the printed (h, c, k) system.
struct HCK {
    Expr h, c, k;
    // the three right-hand sides
    Expr r1, r2, r3;
};
HCK solve_hck(const KodairaFormIParams& p, const EllipticContext& ctx);

// Non-flat example with curvature -wp in slot (2,1).
KodairaFormIIParams kodaira_wp_example();
// Constant flat example.
KodairaFormIIParams kodaira_constant_flat(cplx a, cplx c);

// ---------------------------------------------------------------- two-torus

ConnectionMatrix torus_connection(const TwoTorusModel& m, const ExprMat2& F, const ExprMat2& G);

// Throws NotElliptic unless e is a function of z1 periodic under Z + tau Z.
void require_elliptic(const Expr& e, const EllipticContext& ctx, const std::string& what);

// ---------------------------------------------------------------- secondary Kodaira

struct SecondaryParams {
    std::optional<Expr> wp0;  // defaults to wp when nu = -1, theta = 0
    RationalFunction gamma11 = RationalFunction::constant(0.0);
    RationalFunction gamma22 = RationalFunction::constant(0.0);
    RationalFunction delta21 = RationalFunction::constant(0.0);
    RationalFunction gamma21 = RationalFunction::constant(0.0);
};

// Invariant Weierstrass-type function used for the secondary families.
Expr secondary_wp0(const SecondaryKodairaModel& m, const SecondaryParams& p);

ConnectionMatrix secondary_a(const SecondaryKodairaModel& m, const SecondaryParams& p, Variant v = Variant::derived);
ConnectionMatrix secondary_b(const SecondaryKodairaModel& m, const SecondaryParams& p);
FamilyMember secondary_a_family(const SecondaryKodairaModel& m, const SecondaryParams& p);
FamilyMember secondary_b_family(const SecondaryKodairaModel& m, const SecondaryParams& p);

// ---------------------------------------------------------------- family specs

struct FamilySpec {
    std::string family;
    SurfaceModel model;
    nlohmann::json params;
    std::optional<nlohmann::json> perturbation;
};

FamilySpec family_spec_from_json(const nlohmann::json& j);
FamilyMember build_family(const FamilySpec& spec);

// Parameter schema per family name, for the CLI catalog listing.
nlohmann::json family_catalog_listing();

// ---------------------------------------------------------------- perturbations

enum class PerturbationKind { multiply_z2, add_z2, swap_entries, scale_two, add_inverse_z2, add_z1 };

inline constexpr PerturbationKind kAllPerturbations[] = {
    PerturbationKind::multiply_z2,    PerturbationKind::add_z2,    PerturbationKind::swap_entries,
    PerturbationKind::scale_two,      PerturbationKind::add_inverse_z2, PerturbationKind::add_z1};

std::string perturbation_name(PerturbationKind k);
PerturbationKind perturbation_from_name(const std::string& s);

// Products act on the first nonzero entry, sums on F11; the swap exchanges F12 and F21,
// or the first two differing entries when those coincide.
ConnectionMatrix perturb(const ConnectionMatrix& c, PerturbationKind k);

}  // namespace ellconn
