#include "ellconn/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "ellconn/elliptic.hpp"
#include "ellconn/errors.hpp"
#include "ellconn/family_catalog.hpp"
#include "ellconn/oper.hpp"
#include "ellconn/verifier.hpp"

namespace ellconn {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Parameter draws share the sampler's generator so they reproduce the same way.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : s_(SampleDomain{}, seed) {}
    double u() { return s_.uniform(); }
    double sym(double r) { return r * (2.0 * u() - 1.0); }
    cplx c(double r) { return {sym(r), sym(r)}; }
    int pick(int n) { return static_cast<int>(u() * n) % n; }

private:
    Sampler s_;
};

template <class Fn>
CriterionResult timed(int id, const char* name, double limit, Fn&& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.limit = limit;
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.passed = body(r.details);
    } catch (const std::exception& e) {
        r.passed = false;
        r.details["error"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// c0 + c1 wp + c2 wp' + c3 wp^2, scaled so that |wp| ~ 25 at the sampling clearance
// keeps every term of order one; products of several parameters then stay far below
// the magnitude cap, where absolute roundoff would approach the tolerance.
Expr random_elliptic(Draw& d) {
    return constant(d.c(1.0)) + constant(d.c(0.05)) * wp() + constant(d.c(0.005)) * wp_prime() +
           constant(d.c(0.002)) * power(wp(), 2);
}

RationalFunction random_rational(Draw& d) {
    RationalFunction r;
    r.num.assign(1 + d.pick(4), cplx{});
    for (auto& c : r.num) c = d.c(1.0);
    r.den.assign(1 + d.pick(4), cplx{});
    for (auto& c : r.den) c = d.c(1.0);
    r.den[0] = 1.0;
    return r;
}

// Rational in wp with denominator roots of modulus in [100, 200], outside the range of wp
// on the sampled cell, so the entries have no poles there beyond those of wp itself.
RationalFunction random_wp_rational(Draw& d) {
    RationalFunction r;
    r.num.assign(1 + d.pick(4), cplx{});
    double scale = 1.0;
    for (auto& c : r.num) {
        c = d.c(scale);
        scale *= 0.05;
    }
    r.den = {1.0};
    const int roots = d.pick(4);
    for (int k = 0; k < roots; ++k) {
        const cplx root = std::polar(100.0 + 100.0 * d.u(), kTwoPi * d.u());
        // multiply by (1 - X / root)
        std::vector<cplx> next(r.den.size() + 1, cplx{});
        for (std::size_t i = 0; i < r.den.size(); ++i) {
            next[i] += r.den[i];
            next[i + 1] -= r.den[i] / root;
        }
        r.den = next;
    }
    return r;
}

PrimaryKodairaModel kodaira_model() { return {{0.3, 1.1}, {0.1, 1.2}, {0.2, 0.1}, {-0.3, 0.4}}; }

SecondaryKodairaModel secondary_model() {
    SecondaryKodairaModel m;
    m.underlying = kodaira_model();
    m.nu = -1.0;
    m.theta = 0.0;
    m.mu = 1.0;
    m.shear = 0.5;
    m.offset = 0.25;
    return m;
}

// |a| in [0.5, 1.5], |b|, |c| <= 0.75: entries of order one
RealMat2 random_sl2(Draw& d) {
    const double u = d.sym(1.0);
    const double a = (u < 0 ? -1.0 : 1.0) * (0.5 + std::abs(u));
    const double b = d.sym(0.75), c = d.sym(0.75);
    return {{{a, b}, {c, (1.0 + b * c) / a}}};
}

double worst(const json& arr) {
    double m = 0.0;
    for (const auto& x : arr) m = std::max(m, x.get<double>());
    return m;
}

}  // namespace

// ---------------------------------------------------------------- 1

CriterionResult criterion_elliptic(std::uint64_t seed) {
    return timed(1, "elliptic kernel", 5.0, [&](json& det) {
        bool ok = true;
        json taus = json::array();
        const cplx tau_list[] = {{0.0, 1.0}, std::polar(1.0, std::numbers::pi / 3.0), {0.3, 1.1}};
        for (cplx tau : tau_list) {
            EllipticContext ctx(tau);
            SampleDomain dom;
            dom.z1 = Region::parallelogram(tau, 1.0, 0.2);
            Sampler s(dom, derive_seed(seed, 1));
            double ode = 0.0, per = 0.0, even = 0.0;
            int n = 0;
            for (int attempt = 0; n < 100 && attempt < 2000; ++attempt) {
                cplx z = s.next().z1;
                EvalResult p = eval_elliptic(EllipticKind::wp, z, ctx);
                EvalResult dp = eval_elliptic(EllipticKind::wp_prime, z, ctx);
                if (!p.is_value() || !dp.is_value()) continue;
                ++n;
                const cplx P = p.value, D = dp.value;
                ode = std::max(ode, std::abs(D * D - (4.0 * P * P * P - ctx.g2() * P - ctx.g3())));
                per = std::max(per, std::abs(eval_elliptic(EllipticKind::wp, z + 1.0, ctx).value - P));
                per = std::max(per, std::abs(eval_elliptic(EllipticKind::wp, z + tau, ctx).value - P));
                even = std::max(even, std::abs(eval_elliptic(EllipticKind::wp, -z, ctx).value - P));
            }
            const cplx leg = ctx.eta1() * tau - ctx.eta2();
            const double legendre = std::min(std::abs(leg - cplx{0.0, kTwoPi}), std::abs(leg + cplx{0.0, kTwoPi}));
            ok = ok && n == 100 && ode <= 1e-9 && per <= 1e-10 && even <= 1e-10 && legendre <= 1e-8;
            taus.push_back({{"tau", complex_to_json(tau)},
                            {"points", n},
                            {"ode_max", ode},
                            {"periodicity_max", per},
                            {"evenness_max", even},
                            {"legendre_deviation", legendre}});
        }
        const double g3i = std::abs(EllipticContext({0.0, 1.0}).g3());
        ok = ok && g3i <= 1e-10;
        det["taus"] = taus;
        det["g3_at_i"] = g3i;
        return ok;
    });
}

// ---------------------------------------------------------------- 2

CriterionResult criterion_hopf(std::uint64_t seed) {
    return timed(2, "Hopf suite", 30.0, [&](json& det) {
        VerifyConfig cfg{100, 1e-9, derive_seed(seed, 2)};
        Draw draw(derive_seed(seed, 20));
        bool ok = true;
        json per_d = json::array();
        for (int d = 1; d <= 3; ++d) {
            HopfModel m{0.5, d};
            json res = json::array();
            for (int k = 0; k < 20; ++k) {
                HopfParams p;
                for (auto& row : p.P)
                    for (auto& r : row) r = random_rational(draw);
                for (auto& row : p.Q)
                    for (auto& r : row) r = random_rational(draw);
                res.push_back(max_generator_residual(hopf_connection(m, p), m, cfg));
            }
            ok = ok && worst(res) <= 1e-9;
            per_d.push_back({{"d", d}, {"max_residual", worst(res)}, {"instances", res.size()}});
        }
        det["invariance"] = per_d;

        HopfModel m1{0.5, 1};
        HopfParams p21;
        for (auto& row : p21.P)
            for (auto& r : row) r = RationalFunction::constant(0.0);
        p21.Q = p21.P;
        const HopfParams zero = p21;
        p21.P[1][0] = RationalFunction::constant(1.0);
        const ExprMat2 R = curvature(hopf_connection(m1, p21));
        const SampleDomain dom = default_domain(SurfaceModel(m1));
        // documented sign: slot (2,1) equals -1/z1^2
        const double dev21 =
            sampled_difference({R[1][0]}, {-power(z1(), -2)}, dom, 100, derive_seed(seed, 21), nullptr).max_residual;
        const double others =
            sampled_max({R[0][0], R[0][1], R[1][1]}, dom, 100, derive_seed(seed, 22), nullptr).max_residual;
        const double flat =
            flatness_check(hopf_connection(m1, zero), dom, {100, 1e-10, derive_seed(seed, 23)}).max_abs;
        det["p21_curvature_21_vs_minus_inv_z1_sq"] = dev21;
        det["p21_other_curvature_max"] = others;
        det["zero_instance_curvature_max"] = flat;
        return ok && dev21 <= 1e-8 && others <= 1e-8 && flat <= 1e-10;
    });
}

// ---------------------------------------------------------------- 3

CriterionResult criterion_kodaira(std::uint64_t seed) {
    return timed(3, "primary Kodaira suite", 60.0, [&](json& det) {
        const PrimaryKodairaModel m = kodaira_model();
        const SurfaceModel sm(m);
        VerifyConfig cfg{100, 1e-8, derive_seed(seed, 3)};
        Draw draw(derive_seed(seed, 30));
        json r2 = json::array(), r1 = json::array();
        for (int k = 0; k < 10; ++k) {
            KodairaFormIIParams p;
            for (Expr* e : {&p.g11, &p.g22, &p.f12, &p.gamma11, &p.gamma22, &p.gamma21, &p.delta21})
                *e = random_elliptic(draw);
            r2.push_back(verify(kodaira_form_II(m, p), sm, cfg).max_residual());
        }
        for (int k = 0; k < 5; ++k) {
            KodairaFormIParams p;
            for (Expr* e : {&p.g12, &p.delta11, &p.delta22, &p.delta21, &p.gamma11, &p.gamma22, &p.gamma12,
                            &p.gamma21})
                *e = random_elliptic(draw);
            r1.push_back(verify(kodaira_form_I(m, p), sm, cfg).max_residual());
        }
        det["form_II_max_residual"] = worst(r2);
        det["form_I_max_residual"] = worst(r1);
        bool ok = worst(r2) <= 1e-8 && worst(r1) <= 1e-8;

        const SampleDomain dom = default_domain(sm);
        const ConnectionMatrix wc = kodaira_form_II(m, kodaira_wp_example());
        const ExprMat2 R = curvature(wc);
        const std::uint64_t s = derive_seed(seed, 31);
        const double rmax = sampled_max(flatten(R), dom, 100, s, wc.context()).max_residual;
        const double wpmax = sampled_max({wp()}, dom, 100, s, wc.context()).max_residual;
        const double pointwise = sampled_difference({R[1][0]}, {-wp()}, dom, 100, s, wc.context()).max_residual;
        const double wres = verify(wc, sm, cfg).max_residual();
        det["wp_example"] = {{"invariance_residual", wres},
                             {"curvature_max", rmax},
                             {"wp_max", wpmax},
                             {"R21_plus_wp_max", pointwise}};
        ok = ok && wres <= 1e-8 && rmax > 1.0 && std::abs(rmax - wpmax) <= 1e-8 && pointwise <= 1e-8;

        const ConnectionMatrix cc = kodaira_form_II(m, kodaira_constant_flat({0.3, 0.2}, {-0.5, 0.1}));
        const double cres = verify(cc, sm, cfg).max_residual();
        const double cflat = flatness_check(cc, dom, {100, 1e-10, derive_seed(seed, 32)}).max_abs;
        det["constant_flat"] = {{"invariance_residual", cres}, {"curvature_max", cflat}};
        return ok && cres <= 1e-8 && cflat <= 1e-10;
    });
}

// ---------------------------------------------------------------- 4

CriterionResult criterion_torus(std::uint64_t seed) {
    return timed(4, "two-torus suite", 20.0, [&](json& det) {
        const TwoTorusModel m{{0.3, 1.1}, {-0.2, 0.9}, {0.1, 0.4}, {0.25, -0.3}};
        VerifyConfig cfg{100, 1e-9, derive_seed(seed, 4)};
        Draw draw(derive_seed(seed, 40));
        json res = json::array();
        for (int k = 0; k < 10; ++k) {
            ExprMat2 F, G;
            for (auto* M : {&F, &G})
                for (auto& row : *M)
                    for (auto& e : row) e = random_elliptic(draw);
            res.push_back(max_generator_residual(torus_connection(m, F, G), m, cfg));
        }
        bool rejected = false;
        try {
            ExprMat2 F = zero_mat();
            F[0][0] = z1();
            torus_connection(m, F, zero_mat());
        } catch (const NotElliptic&) {
            rejected = true;
        }
        det["max_residual"] = worst(res);
        det["z1_entry_rejected_as_not_elliptic"] = rejected;
        return worst(res) <= 1e-9 && rejected;
    });
}

// ---------------------------------------------------------------- 5

CriterionResult criterion_secondary(std::uint64_t seed) {
    return timed(5, "secondary Kodaira suite", 30.0, [&](json& det) {
        const SecondaryKodairaModel m = secondary_model();
        const SurfaceModel sm(m);
        VerifyConfig cfg{100, 1e-8, derive_seed(seed, 5)};
        Draw draw(derive_seed(seed, 50));
        json ra = json::array(), rb = json::array();
        std::vector<std::string> names;
        for (int k = 0; k < 10; ++k) {
            SecondaryParams p;
            p.gamma11 = random_wp_rational(draw);
            p.gamma22 = random_wp_rational(draw);
            p.delta21 = random_wp_rational(draw);
            p.gamma21 = random_wp_rational(draw);
            const bool a = k % 2 == 0;
            VerificationReport rep = verify(a ? secondary_a(m, p) : secondary_b(m, p), sm, cfg);
            (a ? ra : rb).push_back(rep.max_residual());
            if (names.empty())
                for (const auto& g : rep.generators) names.push_back(g.name);
        }
        SecondaryParams zero;
        const ConnectionMatrix z = secondary_b(m, zero);
        const double zres = verify(z, sm, cfg).max_residual();
        const double zflat =
            flatness_check(z, default_domain(sm), {100, 1e-10, derive_seed(seed, 51)}).max_abs;
        det["generators"] = names;
        det["variant_a_max_residual"] = worst(ra);
        det["variant_b_max_residual"] = worst(rb);
        det["zero_instance"] = {{"invariance_residual", zres}, {"curvature_max", zflat}};
        return worst(ra) <= 1e-8 && worst(rb) <= 1e-8 && zres <= 1e-8 && zflat <= 1e-10;
    });
}

// ---------------------------------------------------------------- 6

CriterionResult criterion_oper(std::uint64_t seed) {
    return timed(6, "oper suite", 20.0, [&](json& det) {
        Draw draw(derive_seed(seed, 60));
        const RealMat2 g0{{{2.0, 1.0}, {1.0, 1.0}}};
        const HyperbolicModel hm{{g0}, {0.0, 1.0}, {}};
        const SurfaceModel sm(hm);
        const SampleDomain dom = default_domain(sm);

        // cocycle identity
        double coc = 0.0, coc_printed = 1e300;
        for (int k = 0; k < 20; ++k) {
            RealMat2 g = random_sl2(draw), h = random_sl2(draw);
            const std::uint64_t s = derive_seed(seed, 600 + k);
            coc = std::max(coc, cocycle_residual(g, h, dom, 50, s).max_residual);
            coc_printed = std::min(coc_printed, std::max(cocycle_residual(g, h, dom, 50, s, Variant::printed).max_residual,
                                                         cocycle_residual_swapped(g, h, dom, 50, s, Variant::printed)
                                                             .max_residual));
        }
        det["cocycle_max_residual"] = coc;
        det["printed_cocycle_min_residual"] = coc_printed;
        bool ok = coc <= 1e-9;

        // structural roundtrip Delta -> connection -> Delta
        int roundtrip = 0;
        for (int k = 0; k < 20; ++k) {
            OperMatrix d;
            d.a = random_elliptic(draw);
            d.b = constant(draw.c(1.0)) * z1() + constant(draw.c(1.0));
            d.c = quotient(constant(draw.c(1.0)), z1() + constant(draw.c(1.0)));
            d.nu = k % 2 ? constant(0.0) : constant(draw.c(1.0)) * z1();
            d.mu = d.nu;
            const Expr g11 = constant(draw.c(1.0)) * power(z1(), 2);
            OperPair back = oper_from_connection(connection_from_oper(g11, d, dom), dom);
            const bool same = structurally_equal(back.g11, g11) && structurally_equal(back.delta.a, d.a) &&
                              structurally_equal(back.delta.b, d.b) && structurally_equal(back.delta.c, d.c) &&
                              structurally_equal(back.delta.nu, d.nu) && structurally_equal(back.delta.mu, d.mu);
            roundtrip += same;
        }
        det["roundtrip_identical"] = roundtrip;
        ok = ok && roundtrip == 20;

        // equivariance transfer
        VerifyConfig cfg{100, 1e-8, derive_seed(seed, 6)};
        double fwd = 0.0, back = 0.0;
        for (int k = 0; k < 10; ++k) {
            std::array<cplx, 6> coeffs;
            for (auto& c : coeffs) c = draw.c(1.0);
            OperMatrix d = synthesize_equivariant_oper(g0, coeffs);
            ConnectionMatrix c = connection_from_oper(constant(0.0), d, dom);
            fwd = std::max(fwd, max_generator_residual(c, sm, cfg));
            OperPair p = oper_from_connection(c, dom);
            back = std::max(back, oper_equivariance(p.delta, g0, dom, 100, derive_seed(seed, 610 + k), 1e-8)
                                      .residual->max_residual);
        }
        det["transfer_connection_residual"] = fwd;
        det["transfer_equivariance_residual"] = back;
        ok = ok && fwd <= 1e-8 && back <= 1e-8;

        // negative control: a non-equivariant Delta fails on both sides
        OperMatrix bad = synthesize_equivariant_oper(g0, {1.0, 0.5, 0.2, 0.1, 0.3, 0.0});
        bad.a = bad.a + z1();
        const double bad_conn = max_generator_residual(connection_from_oper(constant(0.0), bad, dom), sm, cfg);
        const double bad_eq = oper_equivariance(bad, g0, dom, 100, derive_seed(seed, 620), 1e-8).residual->max_residual;
        det["negative_control"] = {{"connection_residual", bad_conn}, {"equivariance_residual", bad_eq}};
        ok = ok && bad_conn > 1e-6 && bad_eq > 1e-6;

        // membership flags
        int consistent = 0;
        for (int k = 0; k < 20; ++k) {
            OperMatrix d;
            d.a = random_elliptic(draw);
            d.b = constant(draw.c(1.0));
            d.c = constant(draw.c(1.0)) * z1();
            const int kind = k % 3;  // 0: mu = nu = 0, 1: mu = nu != 0, 2: mu != nu
            if (kind == 0) {
                d.nu = d.mu = constant(0.0);
            } else if (kind == 1) {
                d.nu = constant(draw.c(1.0)) + z1();
                d.mu = z1() + d.nu - z1();
            } else {
                d.nu = constant(draw.c(1.0)) * z1();
                d.mu = d.nu + constant(0.5);
            }
            Membership mb = classify_oper(d, dom, 50, derive_seed(seed, 630 + k), 1e-8);
            const bool expect_pp = kind != 2, expect_zero = kind == 0;
            consistent += mb.plus && mb.plus_plus == expect_pp && mb.zero == expect_zero &&
                          (!mb.zero || mb.plus_plus);
        }
        det["membership_consistent"] = consistent;
        return ok && consistent == 20;
    });
}

// ---------------------------------------------------------------- 7

CriterionResult criterion_rejection(std::uint64_t seed) {
    return timed(7, "rejection suite", 30.0, [&](json& det) {
        Draw draw(derive_seed(seed, 70));
        struct Case {
            std::string family;
            SurfaceModel model;
            ConnectionMatrix base;
        };
        std::vector<Case> cases;

        HopfModel hm{0.5, 2};
        HopfParams hp;
        for (auto& row : hp.P)
            for (auto& r : row) r = random_rational(draw);
        for (auto& row : hp.Q)
            for (auto& r : row) r = random_rational(draw);
        cases.push_back({"hopf", hm, hopf_connection(hm, hp)});

        const PrimaryKodairaModel pk = kodaira_model();
        KodairaFormIIParams k2;
        for (Expr* e : {&k2.g11, &k2.g22, &k2.f12, &k2.gamma11, &k2.gamma22, &k2.gamma21, &k2.delta21})
            *e = random_elliptic(draw);
        cases.push_back({"kodaira_II", pk, kodaira_form_II(pk, k2)});
        KodairaFormIParams k1;
        for (Expr* e :
             {&k1.g12, &k1.delta11, &k1.delta22, &k1.delta21, &k1.gamma11, &k1.gamma22, &k1.gamma12, &k1.gamma21})
            *e = random_elliptic(draw);
        cases.push_back({"kodaira_I", pk, kodaira_form_I(pk, k1)});

        const TwoTorusModel tm{{0.3, 1.1}, {-0.2, 0.9}, {0.1, 0.4}, {0.25, -0.3}};
        ExprMat2 F, G;
        for (auto* M : {&F, &G})
            for (auto& row : *M)
                for (auto& e : row) e = random_elliptic(draw);
        cases.push_back({"torus", tm, torus_connection(tm, F, G)});

        const SecondaryKodairaModel sk = secondary_model();
        SecondaryParams sp;
        sp.gamma11 = random_wp_rational(draw);
        sp.gamma22 = random_wp_rational(draw);
        sp.delta21 = random_wp_rational(draw);
        sp.gamma21 = random_wp_rational(draw);
        cases.push_back({"secondary_a", sk, secondary_a(sk, sp)});
        cases.push_back({"secondary_b", sk, secondary_b(sk, sp)});

        const RealMat2 g0{{{2.0, 1.0}, {1.0, 1.0}}};
        const HyperbolicModel hyp{{g0}, {0.0, 1.0}, {}};
        std::array<cplx, 6> coeffs;
        for (auto& c : coeffs) c = draw.c(1.0);
        cases.push_back({"oper", hyp,
                         connection_from_oper(constant(0.0), synthesize_equivariant_oper(g0, coeffs),
                                              default_domain(SurfaceModel(hyp)))});

        const double tol = 1e-8;
        VerifyConfig cfg{100, tol, derive_seed(seed, 7)};
        bool ok = true;
        json grid = json::object(), failing = json::array();
        for (const auto& c : cases) {
            json row = json::object();
            row["unperturbed"] = max_generator_residual(c.base, c.model, cfg);
            for (PerturbationKind k : kAllPerturbations) {
                double r = -1.0;
                try {
                    r = max_generator_residual(perturb(c.base, k), c.model, cfg);
                } catch (const UnableToSample&) {
                }
                row[perturbation_name(k)] = r;
                if (!(r >= 100.0 * tol)) {
                    ok = false;
                    failing.push_back(c.family + "/" + perturbation_name(k));
                }
            }
            grid[c.family] = row;
        }
        det["residuals"] = grid;
        det["not_rejected"] = failing;
        return ok;
    });
}

// ---------------------------------------------------------------- 9

CriterionResult criterion_discrepancy_ledger(std::uint64_t seed) {
    return timed(9, "discrepancy ledger", 0.0, [&](json& det) {
        HopfModel m{0.5, 1};
        HopfParams p;
        for (auto& row : p.P)
            for (auto& r : row) r = RationalFunction::constant(0.0);
        p.Q = p.P;
        p.Q[0][1] = RationalFunction::constant(1.0);
        VerifyConfig cfg{100, 1e-8, seed};
        VerificationReport rep = verify_family(hopf_family(m, p), m, cfg);
        const Discrepancy* d = nullptr;
        for (const auto& x : rep.discrepancies)
            if (x.id == "hopf_g12_monomial") d = &x;
        det["entry_present"] = d != nullptr;
        if (!d || !d->printed_residual || !d->derived_residual) return false;
        det["printed"] = d->printed;
        det["derived"] = d->derived;
        det["printed_residual"] = *d->printed_residual;
        det["derived_residual"] = *d->derived_residual;
        det["report_verdict"] = rep.pass ? "pass" : "fail";
        return rep.pass && *d->derived_residual <= cfg.tol && *d->printed_residual >= 100.0 * cfg.tol;
    });
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    return {criterion_elliptic(seed), criterion_hopf(seed),      criterion_kodaira(seed),
            criterion_torus(seed),    criterion_secondary(seed), criterion_oper(seed),
            criterion_rejection(seed), criterion_discrepancy_ledger(seed)};
}

json to_json(const std::vector<CriterionResult>& results) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    }
    return {{"verdict", all ? "pass" : "fail"}, {"criteria", arr}};
}

}  // namespace ellconn
