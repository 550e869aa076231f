#pragma once

#include <array>
#include <optional>
#include <string>

#include <json.hpp>

#include "ellconn/mero_expr.hpp"

namespace ellconn {

// 2x2 complex matrix acting on z1 by Moebius transformation.
using Mat2c = std::array<std::array<cplx, 2>, 2>;

// (z1, z2) -> (h(z1), mu*z2 + f(z1)) with h affine or Moebius.
struct SurfaceAutomorphism {
    enum class BaseKind { affine, moebius };

    std::string name;
    BaseKind kind = BaseKind::affine;
    Mat2c base{{{1.0, 0.0}, {0.0, 1.0}}};  // affine uses [[a, b], [0, 1]]
    cplx fiber_scale{1.0, 0.0};
    Expr fiber_shift;  // function of z1 only

    static SurfaceAutomorphism identity();
    static SurfaceAutomorphism affine(std::string name, cplx a, cplx b, cplx mu, Expr shift);
    static SurfaceAutomorphism moebius(std::string name, const Mat2c& m, cplx mu, Expr shift);

    Expr base_expr() const;  // h(z1)
    Point apply(const Point& p, const EllipticContext* ctx = nullptr) const;
};

// a after b.
SurfaceAutomorphism compose(const SurfaceAutomorphism& a, const SurfaceAutomorphism& b);

// e(h(z1), mu*z2 + f(z1))
Expr compose_automorphism(const Expr& e, const SurfaceAutomorphism& a);

using ExprMat2 = std::array<std::array<Expr, 2>, 2>;

// [[h', 0], [f', mu]]
ExprMat2 jacobian(const SurfaceAutomorphism& a);

nlohmann::json to_json(const SurfaceAutomorphism& a);

}  // namespace ellconn
