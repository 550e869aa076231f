#include "ellconn/automorphism.hpp"

#include "ellconn/errors.hpp"

namespace ellconn {

SurfaceAutomorphism SurfaceAutomorphism::identity() { return affine("id", 1.0, 0.0, 1.0, constant(0.0)); }

SurfaceAutomorphism SurfaceAutomorphism::affine(std::string name, cplx a, cplx b, cplx mu, Expr shift) {
    if (a == cplx{}) throw InvalidModel("affine base map needs a nonzero slope");
    if (mu == cplx{}) throw InvalidModel("fiber scale must be nonzero");
    if (depends_on(shift, Coord::z2)) throw InvalidModel("fiber shift may depend on z1 only");
    SurfaceAutomorphism s;
    s.name = std::move(name);
    s.kind = BaseKind::affine;
    s.base = {{{a, b}, {0.0, 1.0}}};
    s.fiber_scale = mu;
    s.fiber_shift = std::move(shift);
    return s;
}

SurfaceAutomorphism SurfaceAutomorphism::moebius(std::string name, const Mat2c& m, cplx mu, Expr shift) {
    cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (std::abs(det) < 1e-14) throw InvalidModel("Moebius matrix is singular");
    if (mu == cplx{}) throw InvalidModel("fiber scale must be nonzero");
    if (depends_on(shift, Coord::z2)) throw InvalidModel("fiber shift may depend on z1 only");
    SurfaceAutomorphism s;
    s.name = std::move(name);
    s.kind = BaseKind::moebius;
    s.base = m;
    s.fiber_scale = mu;
    s.fiber_shift = std::move(shift);
    return s;
}

Expr SurfaceAutomorphism::base_expr() const {
    Expr num = constant(base[0][0]) * z1() + constant(base[0][1]);
    if (kind == BaseKind::affine) return num;
    return quotient(num, constant(base[1][0]) * z1() + constant(base[1][1]));
}

Point SurfaceAutomorphism::apply(const Point& p, const EllipticContext* ctx) const {
    Point q;
    q.z1 = (base[0][0] * p.z1 + base[0][1]) / (base[1][0] * p.z1 + base[1][1]);
    EvalResult f = evaluate(fiber_shift, p, ctx);
    if (f.is_pole()) throw DomainError("fiber shift has a pole at the given point");
    q.z2 = fiber_scale * p.z2 + f.value;
    return q;
}

SurfaceAutomorphism compose(const SurfaceAutomorphism& a, const SurfaceAutomorphism& b) {
    SurfaceAutomorphism s;
    s.name = a.name + "*" + b.name;
    Mat2c m{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = a.base[i][0] * b.base[0][j] + a.base[i][1] * b.base[1][j];
    s.kind = (a.kind == SurfaceAutomorphism::BaseKind::affine && b.kind == SurfaceAutomorphism::BaseKind::affine)
                 ? SurfaceAutomorphism::BaseKind::affine
                 : SurfaceAutomorphism::BaseKind::moebius;
    s.base = m;
    s.fiber_scale = a.fiber_scale * b.fiber_scale;
    // mu_a (mu_b z2 + f_b) + f_a(h_b)
    s.fiber_shift = constant(a.fiber_scale) * b.fiber_shift + substitute(a.fiber_shift, b.base_expr(), z2());
    return s;
}

Expr compose_automorphism(const Expr& e, const SurfaceAutomorphism& a) {
    return substitute(e, a.base_expr(), constant(a.fiber_scale) * z2() + a.fiber_shift);
}

ExprMat2 jacobian(const SurfaceAutomorphism& a) {
    ExprMat2 J;
    J[0][0] = differentiate(a.base_expr(), Coord::z1);
    J[0][1] = constant(0.0);
    J[1][0] = differentiate(a.fiber_shift, Coord::z1);
    J[1][1] = constant(a.fiber_scale);
    return J;
}

nlohmann::json to_json(const SurfaceAutomorphism& a) {
    nlohmann::json base = nlohmann::json::array();
    for (const auto& row : a.base) base.push_back({complex_to_json(row[0]), complex_to_json(row[1])});
    return {{"name", a.name},
            {"kind", a.kind == SurfaceAutomorphism::BaseKind::affine ? "affine" : "moebius"},
            {"base", base},
            {"fiber_scale", complex_to_json(a.fiber_scale)},
            {"fiber_shift", to_json(a.fiber_shift)}};
}

}  // namespace ellconn
