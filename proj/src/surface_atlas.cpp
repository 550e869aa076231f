#include "ellconn/surface_atlas.hpp"

#include <cmath>
#include <numbers>

#include "ellconn/errors.hpp"

namespace ellconn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTol = 1e-12;

// Integer coordinates of z in the basis (1, tau), if any.
bool in_lattice(cplx z, cplx tau) {
    double n = z.imag() / tau.imag();
    double m = z.real() - n * tau.real();
    return std::abs(n - std::round(n)) < 1e-9 && std::abs(m - std::round(m)) < 1e-9;
}

void check_lattice(cplx tau, const char* what) {
    if (!(tau.imag() > 0.0)) throw InvalidModel(std::string(what) + " must have positive imaginary part");
}

SurfaceAutomorphism translation(const std::string& name, cplx dz1, cplx dz2) {
    return SurfaceAutomorphism::affine(name, 1.0, dz1, 1.0, constant(dz2));
}

void fiber_generators(std::vector<SurfaceAutomorphism>& out, cplx fiber_tau) {
    out.push_back(translation("psi1", 0.0, 1.0));
    out.push_back(translation("psi2", 0.0, fiber_tau));
}

std::vector<SurfaceAutomorphism> primary_deck(const PrimaryKodairaModel& m) {
    std::vector<SurfaceAutomorphism> out;
    fiber_generators(out, m.fiber_tau);
    out.push_back(kodaira_translation(m, 1, 0));
    out.push_back(kodaira_translation(m, 0, 1));
    return out;
}

std::vector<SurfaceAutomorphism> torus_deck(const TwoTorusModel& m) {
    std::vector<SurfaceAutomorphism> out;
    fiber_generators(out, m.fiber_tau);
    out.push_back(translation("t1", 1.0, m.shift1));
    out.push_back(translation("ttau", m.tau, m.shift_tau));
    return out;
}

cplx base_tau(const SecondaryKodairaModel& s) {
    return std::visit([](const auto& u) { return u.tau; }, s.underlying);
}

cplx fiber_tau_of(const SecondaryKodairaModel& s) {
    return std::visit([](const auto& u) { return u.fiber_tau; }, s.underlying);
}

void validate_primary(const PrimaryKodairaModel& m) {
    check_lattice(m.tau, "tau");
    check_lattice(m.fiber_tau, "fiber_tau");
}

void validate_torus(const TwoTorusModel& m) {
    check_lattice(m.tau, "tau");
    check_lattice(m.fiber_tau, "fiber_tau");
}

int root_order(cplx z) {
    for (int k = 1; k <= 12; ++k) {
        cplx p = 1.0;
        for (int i = 0; i < k; ++i) p *= z;
        if (std::abs(p - 1.0) < kTol) return k;
    }
    return 0;
}

void validate_secondary(const SecondaryKodairaModel& s) {
    std::visit(overloaded{[](const PrimaryKodairaModel& u) { validate_primary(u); },
                          [](const TwoTorusModel& u) { validate_torus(u); }},
               s.underlying);
    const cplx tau = base_tau(s);
    const int k = root_order(s.nu);
    if (k == 0 || k == 5 || k > 6) throw InvalidModel("nu must be a root of unity of order 1, 2, 3, 4 or 6");
    if (!in_lattice(s.nu, tau) || !in_lattice(s.nu * tau, tau))
        throw InvalidModel("z -> nu z does not preserve the base lattice");
    if (root_order(s.mu) == 0) throw InvalidModel("mu must be a root of unity");
    if (std::holds_alternative<PrimaryKodairaModel>(s.underlying)) {
        // conjugating phi_l by Psi compares mu*conj(l) with conj(nu l)*nu = conj(l)
        if (std::abs(s.mu - 1.0) > kTol)
            throw InvalidModel("Psi normalises the primary Kodaira group only when mu = 1");
    } else {
        cplx ft = fiber_tau_of(s);
        if (!in_lattice(s.mu, ft) || !in_lattice(s.mu * ft, ft))
            throw InvalidModel("z2 -> mu z2 does not preserve the fiber lattice");
    }
}

void validate_hyperbolic(const HyperbolicModel& h) {
    if (h.generators.empty()) throw InvalidModel("hyperbolic model needs at least one generator");
    check_lattice(h.fiber_tau, "fiber_tau");
    for (const auto& g : h.generators) {
        for (const auto& row : g)
            for (double x : row)
                if (!std::isfinite(x)) throw InvalidModel("generator entries must be finite reals");
        double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if (std::abs(det - 1.0) > kTol) throw InvalidModel("hyperbolic generators must have determinant 1");
    }
    if (!h.log_branch.empty() && h.log_branch.size() != h.generators.size())
        throw InvalidModel("log_branch must have one entry per generator");
}

nlohmann::json mat_json(const RealMat2& g) { return {{g[0][0], g[0][1]}, {g[1][0], g[1][1]}}; }

RealMat2 mat_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw InputError("generator must be a 2x2 real array");
    RealMat2 g{};
    for (int i = 0; i < 2; ++i) {
        if (!j[i].is_array() || j[i].size() != 2) throw InputError("generator must be a 2x2 real array");
        for (int k = 0; k < 2; ++k) {
            if (!j[i][k].is_number()) throw InputError("generator entries must be real numbers");
            g[i][k] = j[i][k].get<double>();
        }
    }
    return g;
}

cplx opt_complex(const nlohmann::json& j, const char* key, cplx fallback) {
    return j.contains(key) ? complex_from_json(j[key]) : fallback;
}

const nlohmann::json& req(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("model is missing '") + key + "'");
    return j[key];
}

}  // namespace

std::string class_name(const SurfaceModel& m) {
    return std::visit(overloaded{[](const HopfModel&) { return std::string("hopf"); },
                                 [](const PrimaryKodairaModel&) { return std::string("primary_kodaira"); },
                                 [](const TwoTorusModel&) { return std::string("two_torus"); },
                                 [](const SecondaryKodairaModel&) { return std::string("secondary_kodaira"); },
                                 [](const HyperbolicModel&) { return std::string("hyperbolic"); }},
                      m);
}

void validate(const SurfaceModel& m) {
    std::visit(overloaded{[](const HopfModel& h) {
                              double a = std::abs(h.lambda);
                              if (!(a > 0.0 && a < 1.0)) throw InvalidModel("Hopf lambda needs 0 < |lambda| < 1");
                              if (h.d < 1 || h.d > 12) throw InvalidModel("Hopf exponent d must be in 1..12");
                          },
                          [](const PrimaryKodairaModel& p) { validate_primary(p); },
                          [](const TwoTorusModel& t) { validate_torus(t); },
                          [](const SecondaryKodairaModel& s) { validate_secondary(s); },
                          [](const HyperbolicModel& h) { validate_hyperbolic(h); }},
               m);
}

SurfaceAutomorphism kodaira_translation(const PrimaryKodairaModel& m, int a, int b) {
    cplx l = static_cast<double>(a) + static_cast<double>(b) * m.tau;
    cplx beta = static_cast<double>(a) * m.beta1 + static_cast<double>(b) * m.beta_tau;
    std::string name = (a == 1 && b == 0) ? "phi1" : (a == 0 && b == 1) ? "phitau"
                                                   : "phi(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return SurfaceAutomorphism::affine(name, 1.0, l, 1.0, constant(std::conj(l)) * z1() + constant(beta));
}

SurfaceAutomorphism hyperbolic_generator(const RealMat2& g, int branch, const std::string& name) {
    Mat2c m{{{g[0][0], g[0][1]}, {g[1][0], g[1][1]}}};
    Expr j = constant(g[1][0]) * z1() + constant(g[1][1]);
    Expr shift = log_of(j);
    if (branch != 0) shift = shift + constant(cplx{0.0, 2.0 * std::numbers::pi * branch});
    return SurfaceAutomorphism::moebius(name, m, 1.0, shift);
}

std::vector<SurfaceAutomorphism> deck_generators(const SurfaceModel& model) {
    validate(model);
    return std::visit(
        overloaded{[](const HopfModel& h) {
                       cplx root = std::exp(std::log(h.lambda) / static_cast<double>(h.d));
                       return std::vector<SurfaceAutomorphism>{
                           SurfaceAutomorphism::affine("gamma_d", h.lambda, 0.0, root, constant(0.0))};
                   },
                   [](const PrimaryKodairaModel& p) { return primary_deck(p); },
                   [](const TwoTorusModel& t) { return torus_deck(t); },
                   [](const SecondaryKodairaModel& s) {
                       auto out = std::visit(overloaded{[](const PrimaryKodairaModel& u) { return primary_deck(u); },
                                                        [](const TwoTorusModel& u) { return torus_deck(u); }},
                                             s.underlying);
                       out.push_back(SurfaceAutomorphism::affine("Psi", s.nu, s.theta, s.mu,
                                                                 constant(s.shear) * z1() + constant(s.offset)));
                       return out;
                   },
                   [](const HyperbolicModel& h) {
                       std::vector<SurfaceAutomorphism> out;
                       fiber_generators(out, h.fiber_tau);
                       for (std::size_t i = 0; i < h.generators.size(); ++i) {
                           int k = h.log_branch.empty() ? 0 : h.log_branch[i];
                           out.push_back(hyperbolic_generator(h.generators[i], k, "phi" + std::to_string(i + 1)));
                       }
                       return out;
                   }},
        model);
}

SampleDomain default_domain(const SurfaceModel& model) {
    SampleDomain d;
    d.z2 = Region::box({-1.0, -1.0}, {1.0, 1.0});
    std::visit(overloaded{[&](const HopfModel&) {
                              d.z1 = Region::annulus(0.3, 3.0);
                              d.z2 = Region::annulus(0.3, 3.0);
                          },
                          [&](const PrimaryKodairaModel& p) { d.z1 = Region::parallelogram(p.tau, 1.0, 0.2); },
                          [&](const TwoTorusModel& t) { d.z1 = Region::parallelogram(t.tau, 1.0, 0.2); },
                          [&](const SecondaryKodairaModel& s) {
                              d.z1 = Region::parallelogram(base_tau(s), 1.0, 0.2);
                          },
                          [&](const HyperbolicModel&) { d.z1 = Region::box({-2.0, 0.3}, {2.0, 3.0}); }},
               model);
    return d;
}

std::optional<EllipticContext> model_context(const SurfaceModel& model) {
    return std::visit(overloaded{[](const HopfModel&) -> std::optional<EllipticContext> { return std::nullopt; },
                                 [](const PrimaryKodairaModel& p) -> std::optional<EllipticContext> {
                                     return EllipticContext(p.tau);
                                 },
                                 [](const TwoTorusModel& t) -> std::optional<EllipticContext> {
                                     return EllipticContext(t.tau);
                                 },
                                 [](const SecondaryKodairaModel& s) -> std::optional<EllipticContext> {
                                     return EllipticContext(base_tau(s));
                                 },
                                 [](const HyperbolicModel&) -> std::optional<EllipticContext> {
                                     return std::nullopt;
                                 }},
                      model);
}

PullbackKind pullback_kind(const SurfaceModel& m) {
    return std::holds_alternative<HyperbolicModel>(m) ? PullbackKind::tensor : PullbackKind::affine;
}

nlohmann::json to_json(const SurfaceModel& model) {
    return std::visit(
        overloaded{[](const HopfModel& h) -> nlohmann::json {
                       return {{"class", "hopf"}, {"lambda", complex_to_json(h.lambda)}, {"d", h.d}};
                   },
                   [](const PrimaryKodairaModel& p) -> nlohmann::json {
                       return {{"class", "primary_kodaira"},
                               {"tau", complex_to_json(p.tau)},
                               {"fiber_tau", complex_to_json(p.fiber_tau)},
                               {"beta", {complex_to_json(p.beta1), complex_to_json(p.beta_tau)}}};
                   },
                   [](const TwoTorusModel& t) -> nlohmann::json {
                       return {{"class", "two_torus"},
                               {"tau", complex_to_json(t.tau)},
                               {"fiber_tau", complex_to_json(t.fiber_tau)},
                               {"shift", {complex_to_json(t.shift1), complex_to_json(t.shift_tau)}}};
                   },
                   [](const SecondaryKodairaModel& s) -> nlohmann::json {
                       nlohmann::json u = std::visit([](const auto& x) { return to_json(SurfaceModel(x)); },
                                                     s.underlying);
                       return {{"class", "secondary_kodaira"},
                               {"underlying", u},
                               {"nu", complex_to_json(s.nu)},
                               {"theta", complex_to_json(s.theta)},
                               {"mu", complex_to_json(s.mu)},
                               {"shear", complex_to_json(s.shear)},
                               {"offset", complex_to_json(s.offset)}};
                   },
                   [](const HyperbolicModel& h) -> nlohmann::json {
                       nlohmann::json gens = nlohmann::json::array();
                       for (const auto& g : h.generators) gens.push_back(mat_json(g));
                       nlohmann::json j{{"class", "hyperbolic"},
                                        {"generators", gens},
                                        {"fiber_tau", complex_to_json(h.fiber_tau)}};
                       if (!h.log_branch.empty()) j["log_branch"] = h.log_branch;
                       return j;
                   }},
        model);
}

SurfaceModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("class") || !j["class"].is_string())
        throw InputError("model needs a string 'class' field");
    const std::string cls = j["class"].get<std::string>();
    SurfaceModel out;
    if (cls == "hopf") {
        HopfModel h;
        h.lambda = complex_from_json(req(j, "lambda"));
        if (!req(j, "d").is_number_integer()) throw InputError("Hopf 'd' must be an integer");
        h.d = j["d"].get<int>();
        out = h;
    } else if (cls == "primary_kodaira") {
        PrimaryKodairaModel p;
        p.tau = complex_from_json(req(j, "tau"));
        p.fiber_tau = opt_complex(j, "fiber_tau", {0.0, 1.0});
        if (j.contains("beta")) {
            const auto& b = j["beta"];
            if (!b.is_array() || b.size() != 2) throw InputError("'beta' must list two complex numbers");
            p.beta1 = complex_from_json(b[0]);
            p.beta_tau = complex_from_json(b[1]);
        }
        out = p;
    } else if (cls == "two_torus") {
        TwoTorusModel t;
        t.tau = complex_from_json(req(j, "tau"));
        t.fiber_tau = opt_complex(j, "fiber_tau", {0.0, 1.0});
        if (j.contains("shift")) {
            const auto& b = j["shift"];
            if (!b.is_array() || b.size() != 2) throw InputError("'shift' must list two complex numbers");
            t.shift1 = complex_from_json(b[0]);
            t.shift_tau = complex_from_json(b[1]);
        }
        out = t;
    } else if (cls == "secondary_kodaira") {
        SecondaryKodairaModel s;
        SurfaceModel u = model_from_json(req(j, "underlying"));
        if (auto* p = std::get_if<PrimaryKodairaModel>(&u))
            s.underlying = *p;
        else if (auto* t = std::get_if<TwoTorusModel>(&u))
            s.underlying = *t;
        else
            throw InvalidModel("secondary Kodaira must cover a primary Kodaira surface or a two-torus");
        s.nu = opt_complex(j, "nu", {-1.0, 0.0});
        s.theta = opt_complex(j, "theta", {});
        s.mu = opt_complex(j, "mu", {1.0, 0.0});
        s.shear = opt_complex(j, "shear", {});
        s.offset = opt_complex(j, "offset", {});
        out = s;
    } else if (cls == "hyperbolic") {
        HyperbolicModel h;
        const auto& gens = req(j, "generators");
        if (!gens.is_array()) throw InputError("'generators' must be an array");
        for (const auto& g : gens) h.generators.push_back(mat_from(g));
        h.fiber_tau = opt_complex(j, "fiber_tau", {0.0, 1.0});
        if (j.contains("log_branch")) h.log_branch = j["log_branch"].get<std::vector<int>>();
        out = h;
    } else {
        throw InputError("unknown model class '" + cls + "'");
    }
    validate(out);
    return out;
}

}  // namespace ellconn
