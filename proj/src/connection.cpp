#include "ellconn/connection.hpp"

#include <cmath>

#include "ellconn/errors.hpp"

namespace ellconn {

ExprMat2 zero_mat() {
    ExprMat2 m;
    for (auto& row : m)
        for (auto& e : row) e = constant(0.0);
    return m;
}

ExprMat2 mat_mul(const ExprMat2& a, const ExprMat2& b) {
    ExprMat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return m;
}

ExprMat2 mat_add(const ExprMat2& a, const ExprMat2& b) {
    ExprMat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = a[i][j] + b[i][j];
    return m;
}

ExprMat2 mat_sub(const ExprMat2& a, const ExprMat2& b) {
    ExprMat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = a[i][j] - b[i][j];
    return m;
}

ExprMat2 mat_scale(const Expr& s, const ExprMat2& a) {
    return mat_map(a, [&](const Expr& e) { return s * e; });
}

ExprMat2 mat_map(const ExprMat2& a, const std::function<Expr(const Expr&)>& f) {
    ExprMat2 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m[i][j] = f(a[i][j]);
    return m;
}

ExprMat2 mat_inverse(const ExprMat2& a) {
    Expr det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    ExprMat2 m;
    m[0][0] = a[1][1] / det;
    m[0][1] = -a[0][1] / det;
    m[1][0] = -a[1][0] / det;
    m[1][1] = a[0][0] / det;
    return m;
}

ConnectionMatrix pullback(const ConnectionMatrix& c, const SurfaceAutomorphism& a, PullbackKind kind) {
    ExprMat2 J = jacobian(a);
    // lower triangular J: inverse written out to keep expressions small
    ExprMat2 Jinv;
    Jinv[0][0] = quotient(constant(1.0), J[0][0]);
    Jinv[0][1] = constant(0.0);
    Jinv[1][0] = -J[1][0] / (J[0][0] * J[1][1]);
    Jinv[1][1] = quotient(constant(1.0), J[1][1]);

    auto comp = [&](const Expr& e) { return compose_automorphism(e, a); };
    ExprMat2 Fa = mat_map(c.F, comp);
    ExprMat2 Ga = mat_map(c.G, comp);

    // a^*dz1 = h' dz1, a^*dz2 = f' dz1 + mu dz2
    ExprMat2 MF = mat_add(mat_scale(J[0][0], Fa), mat_scale(J[1][0], Ga));
    ExprMat2 MG = mat_scale(J[1][1], Ga);

    ConnectionMatrix out;
    out.ctx = c.ctx;
    out.F = mat_mul(mat_mul(Jinv, MF), J);
    out.G = mat_mul(mat_mul(Jinv, MG), J);
    if (kind == PullbackKind::affine) {
        auto d1 = [](const Expr& e) { return differentiate(e, Coord::z1); };
        auto d2 = [](const Expr& e) { return differentiate(e, Coord::z2); };
        out.F = mat_add(out.F, mat_mul(Jinv, mat_map(J, d1)));
        out.G = mat_add(out.G, mat_mul(Jinv, mat_map(J, d2)));
    }
    return out;
}

ExprMat2 curvature(const ConnectionMatrix& c) {
    auto d1 = [](const Expr& e) { return differentiate(e, Coord::z1); };
    auto d2 = [](const Expr& e) { return differentiate(e, Coord::z2); };
    ExprMat2 R = mat_sub(mat_map(c.G, d1), mat_map(c.F, d2));
    return mat_add(R, mat_sub(mat_mul(c.F, c.G), mat_mul(c.G, c.F)));
}

std::array<Expr, 2> torsion(const ConnectionMatrix& c) {
    return {c.F[0][1] - c.G[0][0], c.F[1][1] - c.G[1][0]};
}

ResidualResult sampled_difference(const std::vector<Expr>& a, const std::vector<Expr>& b, const SampleDomain& domain,
                                  int samples, std::uint64_t seed, const EllipticContext* ctx) {
    if (samples <= 0) throw InputError("sample count must be positive");
    if (a.size() != b.size()) throw InputError("mismatched expression lists");
    Sampler sampler(domain, seed);
    ResidualResult res;
    const int max_attempts = 20 * samples;
    std::vector<cplx> diffs(a.size());
    for (int attempt = 0; attempt < max_attempts && res.accepted < samples; ++attempt) {
        Point p = sampler.next();
        Evaluator ev(ctx, p);
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i) {
            EvalResult x = ev(a[i]);
            EvalResult y = ev(b[i]);
            if (!x.is_value() || !y.is_value() || ev.peak() > kMagnitudeCap) {
                ok = false;
                break;
            }
            diffs[i] = x.value - y.value;
        }
        if (!ok) {
            ++res.rejected;
            continue;
        }
        ++res.accepted;
        for (cplx d : diffs) res.max_residual = std::max(res.max_residual, std::abs(d));
    }
    if (res.accepted < (samples + 1) / 2)
        throw UnableToSample("only " + std::to_string(res.accepted) + " pole-free samples out of " +
                             std::to_string(samples) + " requested");
    return res;
}

ResidualResult sampled_max(const std::vector<Expr>& exprs, const SampleDomain& domain, int samples,
                           std::uint64_t seed, const EllipticContext* ctx) {
    std::vector<Expr> zeros(exprs.size(), constant(0.0));
    return sampled_difference(exprs, zeros, domain, samples, seed, ctx);
}

ResidualResult invariance_residual(const ConnectionMatrix& c, const SurfaceAutomorphism& a, const SampleDomain& domain,
                                   int samples, std::uint64_t seed, PullbackKind kind) {
    ConnectionMatrix p = pullback(c, a, kind);
    return sampled_difference(flatten(p), flatten(c), domain, samples, seed, c.context());
}

std::vector<Expr> flatten(const ExprMat2& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

std::vector<Expr> flatten(const ConnectionMatrix& c) {
    std::vector<Expr> v = flatten(c.F);
    for (const Expr& e : flatten(c.G)) v.push_back(e);
    return v;
}

nlohmann::json to_json(const ExprMat2& m) {
    return nlohmann::json::array({nlohmann::json::array({to_json(m[0][0]), to_json(m[0][1])}),
                                  nlohmann::json::array({to_json(m[1][0]), to_json(m[1][1])})});
}

ExprMat2 mat_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2)
        throw InputError("expected a 2x2 array of expressions");
    ExprMat2 m;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) m[i][k] = expr_from_json(j[i][k]);
    return m;
}

nlohmann::json to_json(const ConnectionMatrix& c) {
    nlohmann::json j{{"F", to_json(c.F)}, {"G", to_json(c.G)}};
    j["ctx"] = c.ctx ? c.ctx->to_json() : nlohmann::json(nullptr);
    return j;
}

ConnectionMatrix connection_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("F") || !j.contains("G"))
        throw InputError("connection needs 'F' and 'G' fields");
    ConnectionMatrix c;
    c.F = mat_from_json(j["F"]);
    c.G = mat_from_json(j["G"]);
    if (j.contains("ctx") && !j["ctx"].is_null()) c.ctx = EllipticContext::from_json(j["ctx"]);
    return c;
}

}  // namespace ellconn
