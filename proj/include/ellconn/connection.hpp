#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ellconn/automorphism.hpp"
#include "ellconn/elliptic.hpp"

namespace ellconn {

// Christoffel symbols in two charts: F[k][j] = Gamma^k_{1j}, G[k][j] = Gamma^k_{2j}.
struct ConnectionMatrix {
    ExprMat2 F;
    ExprMat2 G;
    std::optional<EllipticContext> ctx;

    const EllipticContext* context() const { return ctx ? &*ctx : nullptr; }
};

ExprMat2 zero_mat();
ExprMat2 mat_mul(const ExprMat2& a, const ExprMat2& b);
ExprMat2 mat_add(const ExprMat2& a, const ExprMat2& b);
ExprMat2 mat_sub(const ExprMat2& a, const ExprMat2& b);
ExprMat2 mat_scale(const Expr& s, const ExprMat2& a);
ExprMat2 mat_inverse(const ExprMat2& a);
ExprMat2 mat_map(const ExprMat2& a, const std::function<Expr(const Expr&)>& f);

// affine: includes the inhomogeneous J^{-1} dJ term.
// tensor: transforms only the difference of two connections.
enum class PullbackKind { affine, tensor };

ConnectionMatrix pullback(const ConnectionMatrix& c, const SurfaceAutomorphism& a,
                          PullbackKind kind = PullbackKind::affine);

// dG/dz1 - dF/dz2 + F G - G F
ExprMat2 curvature(const ConnectionMatrix& c);

// Gamma^k_{12} - Gamma^k_{21}
std::array<Expr, 2> torsion(const ConnectionMatrix& c);

struct ResidualResult {
    double max_residual = 0.0;
    int accepted = 0;
    int rejected = 0;
};

// max |pullback(c) - c| over pole-free samples.
ResidualResult invariance_residual(const ConnectionMatrix& c, const SurfaceAutomorphism& a, const SampleDomain& domain,
                                   int samples, std::uint64_t seed, PullbackKind kind = PullbackKind::affine);

// max |e| over pole-free samples, for a list of expressions evaluated together.
ResidualResult sampled_max(const std::vector<Expr>& exprs, const SampleDomain& domain, int samples,
                           std::uint64_t seed, const EllipticContext* ctx);

// max |a_i - b_i| over pole-free samples.
ResidualResult sampled_difference(const std::vector<Expr>& a, const std::vector<Expr>& b, const SampleDomain& domain,
                                  int samples, std::uint64_t seed, const EllipticContext* ctx);

std::vector<Expr> flatten(const ExprMat2& m);
std::vector<Expr> flatten(const ConnectionMatrix& c);

nlohmann::json to_json(const ExprMat2& m);
ExprMat2 mat_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConnectionMatrix& c);
ConnectionMatrix connection_from_json(const nlohmann::json& j);

}  // namespace ellconn
