#include "ellconn/family_catalog.hpp"

#include <cmath>

#include "ellconn/errors.hpp"
#include "ellconn/oper.hpp"

namespace ellconn {

namespace {

Expr horner(const std::vector<cplx>& coeffs, const Expr& x) {
    Expr acc = constant(0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + constant(*it);
    return acc;
}

Expr param(const nlohmann::json& p, const char* key) {
    return p.contains(key) ? expr_from_json(p[key]) : constant(0.0);
}

RationalFunction rparam(const nlohmann::json& p, const char* key) {
    return p.contains(key) ? rational_from_json(p[key]) : RationalFunction::constant(0.0);
}

Variant variant_of(const nlohmann::json& p) {
    if (!p.contains("variant")) return Variant::derived;
    std::string v = p["variant"].get<std::string>();
    if (v == "derived") return Variant::derived;
    if (v == "printed") return Variant::printed;
    throw InputError("variant must be 'derived' or 'printed'");
}

template <class M>
const M& model_as(const SurfaceModel& m, const char* family) {
    if (auto* p = std::get_if<M>(&m)) return *p;
    throw InvalidModel(std::string("family '") + family + "' does not fit a model of class " + class_name(m));
}

RationalMat2 rmat(const nlohmann::json& p, const char* key) {
    RationalMat2 m;
    for (auto& row : m)
        for (auto& r : row) r = RationalFunction::constant(0.0);
    if (!p.contains(key)) return m;
    const auto& j = p[key];
    if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
        throw InputError(std::string("'") + key + "' must be a 2x2 array of rational functions");
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            if (!j[i][k].is_null()) m[i][k] = rational_from_json(j[i][k]);
    return m;
}

double rel_dev(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(a)); }

}  // namespace

// ---------------------------------------------------------------- rational functions

RationalFunction RationalFunction::constant(cplx c) {
    RationalFunction r;
    r.num = {c};
    r.den = {1.0};
    return r;
}

Expr RationalFunction::in(const Expr& x) const {
    Expr n = horner(num, x);
    if (den.size() == 1) return quotient(n, ellconn::constant(den[0]));
    return quotient(n, horner(den, x));
}

bool RationalFunction::is_zero() const {
    for (cplx c : num)
        if (c != cplx{}) return false;
    return true;
}

nlohmann::json to_json(const RationalFunction& r) {
    nlohmann::json n = nlohmann::json::array(), d = nlohmann::json::array();
    for (cplx c : r.num) n.push_back(complex_to_json(c));
    for (cplx c : r.den) d.push_back(complex_to_json(c));
    return {{"num", n}, {"den", d}};
}

RationalFunction rational_from_json(const nlohmann::json& j) {
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number()))
        return RationalFunction::constant(complex_from_json(j));
    if (!j.is_object() || !j.contains("num"))
        throw InputError("rational function must be {\"num\": [...], \"den\": [...]} or a constant");
    RationalFunction r;
    r.num.clear();
    for (const auto& c : j["num"]) r.num.push_back(complex_from_json(c));
    if (j.contains("den")) {
        r.den.clear();
        for (const auto& c : j["den"]) r.den.push_back(complex_from_json(c));
    }
    if (r.num.empty()) r.num = {0.0};
    bool den_zero = true;
    for (cplx c : r.den) den_zero = den_zero && c == cplx{};
    if (r.den.empty() || den_zero) throw InputError("rational function has a zero denominator");
    return r;
}

nlohmann::json to_json(const Discrepancy& d) {
    nlohmann::json j{{"id", d.id}, {"printed", d.printed}, {"derived", d.derived}, {"note", d.note}};
    j["printed_residual"] = d.printed_residual ? nlohmann::json(*d.printed_residual) : nlohmann::json(nullptr);
    j["derived_residual"] = d.derived_residual ? nlohmann::json(*d.derived_residual) : nlohmann::json(nullptr);
    return j;
}

// ---------------------------------------------------------------- Hopf

MonomialTable hopf_monomials(int d, Variant v) {
    // Under (l z1, l^{1/d} z2) an entry picks up l^w with
    //   w(F_ij) = 1 + e_j - e_i, w(G_ij) = 1/d + e_j - e_i, e = (1, 1/d).
    // z1^a z2^b contributes l^{a + b/d}; invariance needs a + b/d = -w.
    // The z1 exponent a is fixed per slot and b solved from it.
    const int de[2] = {d, 1};  // d * e_i
    const int aF[2][2] = {{-2, -1}, {-2, -2}};
    const int aG[2][2] = {{-1, -1}, {-2, -1}};
    MonomialTable t{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            int wF = d + de[j] - de[i];
            int wG = 1 + de[j] - de[i];
            t.F[i][j] = {aF[i][j], -wF - aF[i][j] * d};
            t.G[i][j] = {aG[i][j], -wG - aG[i][j] * d};
        }
    if (v == Variant::printed) t.G[0][1] = {-1, d};
    return t;
}

ConnectionMatrix hopf_connection(const HopfModel& m, const HopfParams& p, Variant v) {
    validate(SurfaceModel(m));
    MonomialTable t = hopf_monomials(m.d, v);
    const Expr X = quotient(z1(), power(z2(), m.d));
    auto mono = [](const std::array<int, 2>& e) { return power(z1(), e[0]) * power(z2(), e[1]); };
    ConnectionMatrix c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            c.F[i][j] = p.P[i][j].is_zero() ? constant(0.0) : p.P[i][j].in(X) * mono(t.F[i][j]);
            c.G[i][j] = p.Q[i][j].is_zero() ? constant(0.0) : p.Q[i][j].in(X) * mono(t.G[i][j]);
        }
    return c;
}

FamilyMember hopf_family(const HopfModel& m, const HopfParams& p) {
    FamilyMember fm;
    fm.family = "hopf";
    fm.connection = hopf_connection(m, p, Variant::derived);
    fm.printed = hopf_connection(m, p, Variant::printed);

    Discrepancy g12;
    g12.id = "hopf_g12_monomial";
    g12.printed = "g12 monomial z2^d/z1";
    g12.derived = "g12 monomial z2^(2d-2)/z1";
    g12.note = "the two agree only for d = 2; d = " + std::to_string(m.d);
    g12.compare_printed = true;
    fm.discrepancies.push_back(g12);

    Discrepancy sign;
    sign.id = "hopf_curvature_sign";
    sign.printed = "P21 = 1 gives curvature +1/z1^2";
    sign.derived = "P21 = 1 gives curvature -1/z1^2 in slot (2,1)";
    sign.note = "sign follows R = dG/dz1 - dF/dz2 + [F, G]";
    fm.discrepancies.push_back(sign);
    return fm;
}

// ---------------------------------------------------------------- ellipticity

void require_elliptic(const Expr& e, const EllipticContext& ctx, const std::string& what) {
    if (depends_on(e, Coord::z2)) throw NotElliptic(what + " depends on z2");
    if (!depends_on(e, Coord::z1)) return;
    const Expr e1 = substitute(e, z1() + constant(1.0), z2());
    const Expr et = substitute(e, z1() + constant(ctx.tau()), z2());
    SampleDomain dom;
    dom.z1 = Region::parallelogram(ctx.tau(), 1.0, 0.2);
    Sampler s(dom, 0x5eed);
    int accepted = 0;
    for (int attempt = 0; attempt < 400 && accepted < 24; ++attempt) {
        Evaluator ev(&ctx, s.next());
        EvalResult a = ev(e), b = ev(e1), c = ev(et);
        if (!a.is_value() || !b.is_value() || !c.is_value()) continue;
        if (ev.peak() > kMagnitudeCap) continue;
        ++accepted;
        if (rel_dev(a.value, b.value) > 1e-8 || rel_dev(a.value, c.value) > 1e-8)
            throw NotElliptic(what + " is not periodic under the base lattice");
    }
    if (accepted < 12) throw UnableToSample("too few pole-free points to test " + what);
}

// ---------------------------------------------------------------- primary Kodaira

Expr kodaira_Z(const EllipticContext& ctx) {
    E1Character ch = conjugation_character(ctx);
    return constant(ch.alpha) * zeta() + constant(ch.beta) * z1();
}

ConnectionMatrix kodaira_form_II(const PrimaryKodairaModel& m, const KodairaFormIIParams& p, Variant v) {
    EllipticContext ctx(m.tau);
    for (auto [e, n] : {std::pair{p.g11, "g11"}, {p.g22, "g22"}, {p.f12, "f12"}, {p.gamma11, "gamma11"},
                        {p.gamma22, "gamma22"}, {p.gamma21, "gamma21"}, {p.delta21, "delta21"}})
        require_elliptic(e, ctx, n);
    const Expr Z = kodaira_Z(ctx);
    const Expr Z2 = power(Z, 2);
    ConnectionMatrix c;
    c.ctx = ctx;
    c.F[0][1] = p.f12;
    c.G[0][0] = p.g11;
    c.G[0][1] = constant(0.0);
    c.G[1][1] = p.g22;
    c.G[1][0] = (p.g11 - p.g22) * Z + p.delta21;
    if (v == Variant::derived) {
        c.F[0][0] = -(p.g11 + p.f12) * Z + p.gamma11;
        c.F[1][1] = -(p.g22 - p.f12) * Z + p.gamma22;
        c.F[1][0] = -(p.g11 - p.g22 + p.f12) * Z2 + (p.gamma11 - p.gamma22 - p.delta21) * Z + p.gamma21;
    } else {
        c.F[0][0] = -(p.g11 - p.f12) * Z + p.gamma11;
        c.F[1][1] = -(p.g22 + p.f12) * Z + p.gamma22;
        c.F[1][0] = (p.g11 - p.g22 + p.f12) * Z2 + (p.gamma11 - p.gamma22 + p.delta21) * Z + p.gamma21;
        c.G[1][0] = -(p.g22 - p.g11) * Z + p.delta21;
    }
    return c;
}

HCK solve_hck(const KodairaFormIParams& p, const EllipticContext& ctx) {
    HCK s;
    const Expr d11 = p.delta11, d22 = p.delta22, g12 = p.gamma12;
    s.r1 = power(d22 - d11, 2) + power(d22 + g12, 2) + power(d11 + g12, 2) + p.delta21 + p.gamma11 - p.gamma22;
    s.r2 = constant(4.0) * (d22 + g12);
    s.r3 = d22 - d11 + g12;
    // 3h + c = r3, 2c + 3h = r2, 3h^2 + 2ck = r1
    s.c = s.r2 - s.r3;
    s.h = constant(1.0 / 3.0) * (constant(2.0) * s.r3 - s.r2);
    const Expr rest = s.r1 - constant(3.0) * power(s.h, 2);
    SampleDomain dom;
    dom.z1 = Region::parallelogram(ctx.tau(), 1.0, 0.2);
    double cmax = s.c.is_zero() ? 0.0 : sampled_max({s.c}, dom, 30, 7, &ctx).max_residual;
    if (cmax < 1e-12) {
        double rmax = rest.is_zero() ? 0.0 : sampled_max({rest}, dom, 30, 7, &ctx).max_residual;
        if (rmax > 1e-9) throw ConstraintUnsolvable("c vanishes but 3h^2 differs from the first right-hand side");
        s.k = constant(0.0);
    } else {
        s.k = rest / (constant(2.0) * s.c);
    }
    return s;
}

ConnectionMatrix kodaira_form_I(const PrimaryKodairaModel& m, const KodairaFormIParams& p, Variant v) {
    EllipticContext ctx(m.tau);
    for (auto [e, n] : {std::pair{p.g12, "g12"}, {p.delta11, "delta11"}, {p.delta22, "delta22"},
                        {p.delta21, "delta21"}, {p.gamma11, "gamma11"}, {p.gamma22, "gamma22"},
                        {p.gamma12, "gamma12"}, {p.gamma21, "gamma21"}})
        require_elliptic(e, ctx, n);
    if (p.g12.is_zero()) throw ConstraintUnsolvable("form I needs a nonzero g12");
    const Expr Z = kodaira_Z(ctx);
    const Expr g = p.g12;
    const Expr d11 = p.delta11, d22 = p.delta22, d21 = p.delta21;
    const Expr c11 = p.gamma11, c22 = p.gamma22, c12 = p.gamma12, c21 = p.gamma21;
    const Expr half = constant(0.5);
    ConnectionMatrix c;
    c.ctx = ctx;
    c.G[0][1] = g;
    if (v == Variant::derived) {
        const Expr s = half * (d11 + d22);
        const Expr q1 = half * (d11 + c12);
        const Expr q2 = half * (d22 + c12);
        const Expr e = d11 + d22 + c12;
        const Expr a1 = power(s, 2) + power(q1, 2) + power(q2, 2) + d21 + c11 + c22;
        c.G[0][0] = -(Z + d11) * g;
        c.G[1][1] = (Z + d22) * g;
        c.G[1][0] = -(power(Z + s, 2) + d21) * g;
        c.F[0][1] = -(Z + c12) * g;
        c.F[0][0] = (power(Z + q1, 2) + c11) * g;
        c.F[1][1] = -(power(Z + q2, 2) + c22) * g;
        c.F[1][0] = (power(Z, 3) + e * power(Z, 2) + a1 * Z + c21) * g;
    } else {
        HCK hck = solve_hck(p, ctx);
        c.G[0][0] = -(Z + d11) * g;
        c.G[1][1] = (Z + d22) * g;
        c.G[1][0] = -(power(Z + d22 - d11, 2) + d21) * g;
        c.F[0][1] = (Z + c12) * g;
        c.F[0][0] = -(power(Z + d11 + c12, 2) + c11) * g;
        c.F[1][1] = (power(Z + d22 + c12, 2) + c22) * g;
        c.F[1][0] = -(constant(1.0 / 3.0) * power(Z + hck.h, 3) + hck.c * power(Z + hck.k, 2) + c21) * g;
    }
    return c;
}

FamilyMember kodaira_II_family(const PrimaryKodairaModel& m, const KodairaFormIIParams& p) {
    FamilyMember fm;
    fm.family = "kodaira_II";
    fm.connection = kodaira_form_II(m, p, Variant::derived);
    fm.printed = kodaira_form_II(m, p, Variant::printed);

    Discrepancy d;
    d.id = "kodaira_II_signs";
    d.printed = "f11 = -(g11-f12)Z+gamma11, f22 = -(g22+f12)Z+gamma22, "
                "f21 = (g11-g22+f12)Z^2+(gamma11-gamma22+delta21)Z+gamma21";
    d.derived = "f11 = -(g11+f12)Z+gamma11, f22 = -(g22-f12)Z+gamma22, "
                "f21 = -(g11-g22+f12)Z^2+(gamma11-gamma22-delta21)Z+gamma21";
    d.note = "printed and derived agree when g11 = g22 = f12 = delta21 = 0";
    d.compare_printed = true;
    fm.discrepancies.push_back(d);

    Discrepancy flat;
    flat.id = "kodaira_holomorphic_flatness";
    flat.printed = "constant members with g21 = f22 - f11 are all flat";
    flat.derived = "constant members have g21 = f11 - f22 and curvature -(f11 - f22)^2 in slot (2,1)";
    flat.note = "flat exactly when f11 = f22";
    fm.discrepancies.push_back(flat);

    Discrepancy wp;
    wp.id = "kodaira_wp_example";
    wp.printed = "f11 = wp, f22 = f21 = 0";
    wp.derived = "f11 = wp, f22 = 0, g21 = 1, f21 = (wp - 1)Z; curvature -wp in slot (2,1)";
    wp.note = "with f21 = 0 the translation equations fail unless f11 - f22 - g21 = 0";
    fm.discrepancies.push_back(wp);
    return fm;
}

FamilyMember kodaira_I_family(const PrimaryKodairaModel& m, const KodairaFormIParams& p) {
    FamilyMember fm;
    fm.family = "kodaira_I";
    fm.connection = kodaira_form_I(m, p, Variant::derived);
    Discrepancy d;
    d.id = "kodaira_I_structure";
    d.printed = "f12 = (Z+gamma12)g, f_ii = (-1)^i((Z+delta_ii+gamma12)^2+gamma_ii)g, "
                "g21 = -((Z+delta22-delta11)^2+delta21)g, f21 = -((Z+h)^3/3+c(Z+k)^2+gamma21)g";
    d.derived = "f12 = -(Z+gamma12)g, f11 = ((Z+q1)^2+gamma11)g, f22 = -((Z+q2)^2+gamma22)g, "
                "g21 = -((Z+s)^2+delta21)g, f21 = (Z^3+eZ^2+a1 Z+gamma21)g";
    d.note = "s = (delta11+delta22)/2, q_i = (delta_ii+gamma12)/2, e = delta11+delta22+gamma12";
    try {
        fm.printed = kodaira_form_I(m, p, Variant::printed);
        d.compare_printed = true;
    } catch (const ConstraintUnsolvable& e) {
        d.note += "; printed (h, c, k) system unsolvable: " + std::string(e.what());
    }
    fm.discrepancies.push_back(d);
    return fm;
}

KodairaFormIIParams kodaira_wp_example() {
    KodairaFormIIParams p{constant(0.0), constant(0.0), constant(0.0), wp(), constant(0.0), constant(0.0),
                          constant(1.0)};
    return p;
}

KodairaFormIIParams kodaira_constant_flat(cplx a, cplx c) {
    return {constant(0.0), constant(0.0), constant(0.0), constant(a), constant(a), constant(c), constant(0.0)};
}

// ---------------------------------------------------------------- two-torus

ConnectionMatrix torus_connection(const TwoTorusModel& m, const ExprMat2& F, const ExprMat2& G) {
    EllipticContext ctx(m.tau);
    const char* names[2][2][2] = {{{"F11", "F12"}, {"F21", "F22"}}, {{"G11", "G12"}, {"G21", "G22"}}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            require_elliptic(F[i][j], ctx, names[0][i][j]);
            require_elliptic(G[i][j], ctx, names[1][i][j]);
        }
    ConnectionMatrix c;
    c.F = F;
    c.G = G;
    c.ctx = ctx;
    return c;
}

// ---------------------------------------------------------------- secondary Kodaira

namespace {

cplx secondary_tau(const SecondaryKodairaModel& m) {
    return std::visit([](const auto& u) { return u.tau; }, m.underlying);
}

struct SecondaryPieces {
    EllipticContext ctx;
    Expr g11, g22, d21, g21;
};

SecondaryPieces pieces(const SecondaryKodairaModel& m, const SecondaryParams& p) {
    validate(SurfaceModel(m));
    EllipticContext ctx(secondary_tau(m));
    Expr w0 = secondary_wp0(m, p);
    Expr w1 = differentiate(w0, Coord::z1);
    Expr w2 = differentiate(w1, Coord::z1);
    return {ctx, p.gamma11.in(w0) * w1, p.gamma22.in(w0) * w1, p.delta21.in(w0) * w1, p.gamma21.in(w0) * w2};
}

}  // namespace

Expr secondary_wp0(const SecondaryKodairaModel& m, const SecondaryParams& p) {
    EllipticContext ctx(secondary_tau(m));
    Expr w0;
    if (p.wp0) {
        w0 = *p.wp0;
    } else if (std::abs(m.nu + 1.0) < 1e-12 && std::abs(m.theta) < 1e-12) {
        w0 = wp();
    } else {
        throw ConstraintUnsolvable("an invariant function wp0 must be supplied when Psi is not z -> -z");
    }
    require_elliptic(w0, ctx, "wp0");
    if (!depends_on(w0, Coord::z1)) throw ConstraintUnsolvable("wp0 must be non-constant");
    SampleDomain dom;
    dom.z1 = Region::parallelogram(ctx.tau(), 1.0, 0.2);
    Expr moved = substitute(w0, constant(m.nu) * z1() + constant(m.theta), z2());
    auto r = sampled_difference({moved}, {w0}, dom, 30, 11, &ctx);
    if (r.max_residual > 1e-8) throw ConstraintUnsolvable("wp0 is not invariant under z -> nu z + theta");
    return w0;
}

ConnectionMatrix secondary_b(const SecondaryKodairaModel& m, const SecondaryParams& p) {
    // F21 picks up mu/nu^2 under Psi while wp0'' only carries 1/nu^2
    if (std::abs(m.mu - 1.0) > 1e-12) throw ConstraintUnsolvable("variant b needs mu = 1");
    SecondaryPieces s = pieces(m, p);
    ConnectionMatrix c;
    c.ctx = s.ctx;
    c.F = {{{s.g11, constant(0.0)}, {s.g21, s.g11}}};
    c.G = zero_mat();
    return c;
}

ConnectionMatrix secondary_a(const SecondaryKodairaModel& m, const SecondaryParams& p, Variant v) {
    if (std::abs(m.mu - 1.0) > 1e-12 || std::abs(m.nu * m.nu - 1.0) > 1e-12 || std::abs(m.theta) > 1e-12 ||
        std::abs(m.nu - 1.0) < 1e-12)
        throw ConstraintUnsolvable("variant a needs mu = nu^2 = 1, nu != 1 and theta = 0");
    SecondaryPieces s = pieces(m, p);
    const bool kodaira = std::holds_alternative<PrimaryKodairaModel>(m.underlying);
    const Expr Z = kodaira ? kodaira_Z(s.ctx) : constant(0.0);
    const Expr shear = constant(m.shear);
    Expr f21;
    if (v == Variant::derived) {
        const Expr K = s.g11 - s.g22 - s.d21;
        f21 = K * (Z - constant(0.5) * shear) + s.g21;
    } else {
        f21 = Z * (s.g11 - s.g22 + s.d21) + constant(m.shear / (1.0 - m.nu)) * s.d21 + s.g21;
    }
    ConnectionMatrix c;
    c.ctx = s.ctx;
    c.F = {{{s.g11, constant(0.0)}, {f21, s.g22}}};
    c.G = {{{constant(0.0), constant(0.0)}, {s.d21, constant(0.0)}}};
    return c;
}

FamilyMember secondary_a_family(const SecondaryKodairaModel& m, const SecondaryParams& p) {
    FamilyMember fm;
    fm.family = "secondary_a";
    fm.connection = secondary_a(m, p, Variant::derived);
    fm.printed = secondary_a(m, p, Variant::printed);
    Discrepancy d;
    d.id = "secondary_a_f21";
    d.printed = "f21 = Z(gamma11-gamma22+delta21) + a/(1-nu) delta21 + gamma21";
    d.derived = "f21 = (gamma11-gamma22-delta21)(Z - a/2) + gamma21";
    d.note = "a is the shear of Psi; Z is absent over a two-torus";
    d.compare_printed = true;
    fm.discrepancies.push_back(d);
    return fm;
}

FamilyMember secondary_b_family(const SecondaryKodairaModel& m, const SecondaryParams& p) {
    FamilyMember fm;
    fm.family = "secondary_b";
    fm.connection = secondary_b(m, p);
    Discrepancy d;
    d.id = "secondary_b_space";
    d.printed = "gamma21 in C(wp0) wp0''";
    d.derived = "gamma21(nu z + theta) = (mu/nu^2) gamma21(z)";
    d.note = "the printed space is invariant only for mu = 1, which a primary Kodaira cover forces; two-torus covers with mu != 1 are rejected";
    fm.discrepancies.push_back(d);
    return fm;
}

// ---------------------------------------------------------------- specs

FamilySpec family_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw InputError("family spec needs a string 'family' field");
    if (!j.contains("model")) throw InputError("family spec needs a 'model'");
    FamilySpec s;
    s.family = j["family"].get<std::string>();
    s.model = model_from_json(j["model"]);
    s.params = j.contains("params") ? j["params"] : nlohmann::json::object();
    if (!s.params.is_object()) throw InputError("'params' must be an object");
    if (j.contains("perturbation")) s.perturbation = j["perturbation"];
    return s;
}

FamilyMember build_family(const FamilySpec& spec) {
    const auto& p = spec.params;
    const std::string& f = spec.family;
    FamilyMember fm;
    if (f == "hopf") {
        HopfParams hp{rmat(p, "P"), rmat(p, "Q")};
        const auto& m = model_as<HopfModel>(spec.model, "hopf");
        fm = hopf_family(m, hp);
        if (variant_of(p) == Variant::printed) std::swap(fm.connection, *fm.printed);
    } else if (f == "kodaira_II") {
        const auto& m = model_as<PrimaryKodairaModel>(spec.model, "kodaira_II");
        KodairaFormIIParams kp{param(p, "g11"),     param(p, "g22"),     param(p, "f12"),    param(p, "gamma11"),
                               param(p, "gamma22"), param(p, "gamma21"), param(p, "delta21")};
        fm = kodaira_II_family(m, kp);
        if (variant_of(p) == Variant::printed) std::swap(fm.connection, *fm.printed);
    } else if (f == "kodaira_I") {
        const auto& m = model_as<PrimaryKodairaModel>(spec.model, "kodaira_I");
        if (!p.contains("g12")) throw InputError("form I needs 'g12'");
        KodairaFormIParams kp{param(p, "g12"),     param(p, "delta11"), param(p, "delta22"), param(p, "delta21"),
                              param(p, "gamma11"), param(p, "gamma22"), param(p, "gamma12"), param(p, "gamma21")};
        fm = kodaira_I_family(m, kp);
        if (variant_of(p) == Variant::printed) {
            if (!fm.printed) throw ConstraintUnsolvable("printed form I unavailable for these parameters");
            std::swap(fm.connection, *fm.printed);
        }
    } else if (f == "torus") {
        const auto& m = model_as<TwoTorusModel>(spec.model, "torus");
        ExprMat2 F = p.contains("F") ? mat_from_json(p["F"]) : zero_mat();
        ExprMat2 G = p.contains("G") ? mat_from_json(p["G"]) : zero_mat();
        fm.family = "torus";
        fm.connection = torus_connection(m, F, G);
    } else if (f == "secondary_a" || f == "secondary_b") {
        const auto& m = model_as<SecondaryKodairaModel>(spec.model, f.c_str());
        SecondaryParams sp;
        if (p.contains("wp0")) sp.wp0 = expr_from_json(p["wp0"]);
        sp.gamma11 = rparam(p, "gamma11");
        sp.gamma22 = rparam(p, "gamma22");
        sp.delta21 = rparam(p, "delta21");
        sp.gamma21 = rparam(p, "gamma21");
        if (f == "secondary_a") {
            fm = secondary_a_family(m, sp);
            if (variant_of(p) == Variant::printed) std::swap(fm.connection, *fm.printed);
        } else {
            fm = secondary_b_family(m, sp);
        }
    } else if (f == "oper") {
        const auto& m = model_as<HyperbolicModel>(spec.model, "oper");
        OperMatrix delta = oper_from_json(p.contains("delta") ? p["delta"] : nlohmann::json::object());
        fm = oper_family(m, param(p, "g11"), delta, variant_of(p));
    } else {
        throw InputError("unknown family '" + f + "'");
    }

    if (spec.perturbation) {
        const auto& pj = *spec.perturbation;
        std::string kind = pj.is_string() ? pj.get<std::string>() : pj.value("kind", std::string{});
        fm.connection = perturb(fm.connection, perturbation_from_name(kind));
        fm.printed.reset();
        for (auto& d : fm.discrepancies) d.compare_printed = false;
    }
    return fm;
}

nlohmann::json family_catalog_listing() {
    using nlohmann::json;
    return json::array({
        json{{"family", "hopf"},
             {"model", "hopf"},
             {"params", {{"P", "2x2 rational functions of X = z1/z2^d"}, {"Q", "2x2 rational functions of X"},
                         {"variant", "derived | printed"}}}},
        json{{"family", "kodaira_II"},
             {"model", "primary_kodaira"},
             {"params", {{"g11", "elliptic"}, {"g22", "elliptic"}, {"f12", "elliptic"}, {"gamma11", "elliptic"},
                         {"gamma22", "elliptic"}, {"gamma21", "elliptic"}, {"delta21", "elliptic"},
                         {"variant", "derived | printed"}}}},
        json{{"family", "kodaira_I"},
             {"model", "primary_kodaira"},
             {"params", {{"g12", "nonzero elliptic"}, {"delta11", "elliptic"}, {"delta22", "elliptic"},
                         {"delta21", "elliptic"}, {"gamma11", "elliptic"}, {"gamma22", "elliptic"},
                         {"gamma12", "elliptic"}, {"gamma21", "elliptic"}, {"variant", "derived | printed"}}}},
        json{{"family", "torus"},
             {"model", "two_torus"},
             {"params", {{"F", "2x2 elliptic"}, {"G", "2x2 elliptic"}}}},
        json{{"family", "secondary_a"},
             {"model", "secondary_kodaira with mu = nu^2 = 1, theta = 0"},
             {"params", {{"wp0", "invariant elliptic (optional)"}, {"gamma11", "rational in wp0, times wp0'"},
                         {"gamma22", "rational in wp0, times wp0'"}, {"delta21", "rational in wp0, times wp0'"},
                         {"gamma21", "rational in wp0, times wp0''"}, {"variant", "derived | printed"}}}},
        json{{"family", "secondary_b"},
             {"model", "secondary_kodaira with mu = 1"},
             {"params", {{"wp0", "invariant elliptic (optional)"}, {"gamma11", "rational in wp0, times wp0'"},
                         {"gamma21", "rational in wp0, times wp0''"}}}},
        json{{"family", "oper"},
             {"model", "hyperbolic"},
             {"params", {{"g11", "meromorphic in z1"}, {"delta", "{b, c, nu, a, mu} with mu = nu"},
                         {"variant", "derived | printed"}}}},
    });
}

// ---------------------------------------------------------------- perturbations

std::string perturbation_name(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::multiply_z2:
            return "multiply_z2";
        case PerturbationKind::add_z2:
            return "add_z2";
        case PerturbationKind::swap_entries:
            return "swap_entries";
        case PerturbationKind::scale_two:
            return "scale_two";
        case PerturbationKind::add_inverse_z2:
            return "add_inverse_z2";
        case PerturbationKind::add_z1:
            return "add_z1";
    }
    return "?";
}

PerturbationKind perturbation_from_name(const std::string& s) {
    for (PerturbationKind k : kAllPerturbations)
        if (perturbation_name(k) == s) return k;
    throw InputError("unknown perturbation '" + s + "'");
}

ConnectionMatrix perturb(const ConnectionMatrix& c, PerturbationKind k) {
    ConnectionMatrix out = c;
    std::array<Expr*, 8> slots{&out.F[0][0], &out.F[0][1], &out.F[1][0], &out.F[1][1],
                               &out.G[0][0], &out.G[0][1], &out.G[1][0], &out.G[1][1]};
    // multiplicative changes act on the first nonzero entry, additive ones on F11
    Expr* first = slots[0];
    for (Expr* e : slots)
        if (!e->is_zero()) {
            first = e;
            break;
        }
    switch (k) {
        case PerturbationKind::multiply_z2:
            *first = *first * z2();
            break;
        case PerturbationKind::add_z2:
            out.F[0][0] = out.F[0][0] + z2();
            break;
        case PerturbationKind::swap_entries: {
            if (!structurally_equal(out.F[0][1], out.F[1][0])) {
                std::swap(out.F[0][1], out.F[1][0]);
                break;
            }
            for (std::size_t i = 0; i < slots.size(); ++i)
                for (std::size_t j = i + 1; j < slots.size(); ++j)
                    if (!structurally_equal(*slots[i], *slots[j])) {
                        std::swap(*slots[i], *slots[j]);
                        return out;
                    }
            break;
        }
        case PerturbationKind::scale_two:
            *first = constant(2.0) * *first;
            break;
        case PerturbationKind::add_inverse_z2:
            out.F[0][0] = out.F[0][0] + quotient(constant(1.0), z2());
            break;
        case PerturbationKind::add_z1:
            out.F[0][0] = out.F[0][0] + z1();
            break;
    }
    return out;
}

}  // namespace ellconn
