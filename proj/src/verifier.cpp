#include "ellconn/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ellconn/errors.hpp"

namespace ellconn {

double VerificationReport::max_residual() const {
    double m = 0.0;
    for (const auto& g : generators) m = std::max(m, g.residual);
    return m;
}

FlatnessResult flatness_check(const ConnectionMatrix& c, const SampleDomain& domain, const VerifyConfig& cfg) {
    ResidualResult r = sampled_max(flatten(curvature(c)), domain, cfg.samples, cfg.seed, c.context());
    return {r.max_residual, r.max_residual <= cfg.tol, r.accepted};
}

namespace {

std::vector<MembershipVerdict> memberships(const ConnectionMatrix& c, const SurfaceModel& model,
                                           const SampleDomain& domain, const VerifyConfig& cfg) {
    std::vector<MembershipVerdict> out;
    auto check = [&](const std::string& name, const std::vector<Expr>& es) {
        MembershipVerdict v;
        v.name = name;
        bool all_zero = true;
        for (const auto& e : es) all_zero = all_zero && e.is_zero();
        v.residual = all_zero ? 0.0
                              : sampled_max(es, domain, cfg.samples, derive_seed(cfg.seed, 102), c.context())
                                    .max_residual;
        v.member = v.residual <= cfg.tol;
        out.push_back(v);
    };
    try {
        if (std::holds_alternative<PrimaryKodairaModel>(model)) check("form_II (g12 = 0)", {c.G[0][1]});
        if (std::holds_alternative<HyperbolicModel>(model))
            check("codim3_subspace (g12 = g21 = 0, f12 = g22 - g11)",
                  {c.G[0][1], c.G[1][0], c.F[0][1] - (c.G[1][1] - c.G[0][0])});
    } catch (const UnableToSample&) {
    }
    return out;
}

}  // namespace

double max_generator_residual(const ConnectionMatrix& c, const SurfaceModel& model, const VerifyConfig& cfg) {
    ConnectionMatrix cc = c;
    if (!cc.ctx) cc.ctx = model_context(model);
    SampleDomain domain = default_domain(model);
    PullbackKind kind = pullback_kind(model);
    double m = 0.0;
    auto gens = deck_generators(model);
    for (std::size_t i = 0; i < gens.size(); ++i)
        m = std::max(m, invariance_residual(cc, gens[i], domain, cfg.samples, derive_seed(cfg.seed, i), kind)
                            .max_residual);
    return m;
}

VerificationReport verify(const ConnectionMatrix& c0, const SurfaceModel& model, const VerifyConfig& cfg,
                          const std::vector<Discrepancy>& discrepancies) {
    if (cfg.samples <= 0) throw InputError("sample count must be positive");
    if (!(cfg.tol > 0.0)) throw InputError("tolerance must be positive");
    ConnectionMatrix c = c0;
    if (!c.ctx) c.ctx = model_context(model);
    const SampleDomain domain = default_domain(model);
    const PullbackKind kind = pullback_kind(model);

    VerificationReport r;
    r.seed = cfg.seed;
    r.tol = cfg.tol;
    r.samples = cfg.samples;
    r.discrepancies = discrepancies;

    auto gens = deck_generators(model);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        ResidualResult rr = invariance_residual(c, gens[i], domain, cfg.samples, derive_seed(cfg.seed, i), kind);
        r.generators.push_back({gens[i].name, rr.max_residual, rr.accepted, rr.rejected});
    }
    r.pass = r.max_residual() <= cfg.tol;

    try {
        VerifyConfig cc = cfg;
        cc.seed = derive_seed(cfg.seed, 100);
        r.curvature_max = flatness_check(c, domain, cc).max_abs;
    } catch (const UnableToSample&) {
    }
    try {
        auto T = torsion(c);
        r.torsion_max =
            sampled_max({T[0], T[1]}, domain, cfg.samples, derive_seed(cfg.seed, 101), c.context()).max_residual;
    } catch (const UnableToSample&) {
    }
    r.membership = memberships(c, model, domain, cfg);
    return r;
}

VerificationReport verify_family(const FamilyMember& member, const SurfaceModel& model, const VerifyConfig& cfg) {
    VerificationReport r = verify(member.connection, model, cfg, member.discrepancies);
    bool wants = false;
    for (const auto& d : r.discrepancies) wants = wants || d.compare_printed;
    if (!wants || !member.printed) return r;
    std::optional<double> printed;
    try {
        VerifyConfig pc = cfg;
        pc.seed = derive_seed(cfg.seed, 200);
        printed = max_generator_residual(*member.printed, model, pc);
    } catch (const UnableToSample&) {
    }
    for (auto& d : r.discrepancies) {
        if (!d.compare_printed) continue;
        d.printed_residual = printed;
        d.derived_residual = r.max_residual();
    }
    return r;
}

nlohmann::json to_json(const VerificationReport& r) {
    using nlohmann::json;
    json gens = json::array();
    for (const auto& g : r.generators)
        gens.push_back({{"name", g.name}, {"residual", g.residual}, {"samples", g.samples}, {"rejected", g.rejected}});
    json mem = json::array();
    for (const auto& m : r.membership)
        mem.push_back({{"name", m.name}, {"member", m.member}, {"residual", m.residual}});
    json disc = json::array();
    for (const auto& d : r.discrepancies) disc.push_back(to_json(d));
    json curv = json::object();
    if (r.curvature_max) {
        curv["max"] = *r.curvature_max;
        curv["flat"] = *r.curvature_max <= r.tol;
    } else {
        curv["max"] = nullptr;
        curv["flat"] = nullptr;
    }
    json tors = json::object();
    if (r.torsion_max) {
        tors["max"] = *r.torsion_max;
        tors["torsion_free"] = *r.torsion_max <= r.tol;
    } else {
        tors["max"] = nullptr;
        tors["torsion_free"] = nullptr;
    }
    return {{"verdict", r.pass ? "pass" : "fail"},
            {"generators", gens},
            {"curvature", curv},
            {"torsion", tors},
            {"membership", mem},
            {"discrepancies", disc},
            {"seed", r.seed},
            {"tol", r.tol},
            {"samples", r.samples}};
}

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string("n/a"); }

}  // namespace

std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "verdict: " << (r.pass ? "pass" : "fail") << "  (tol " << num(r.tol) << ", seed " << r.seed << ", "
       << r.samples << " samples)\n";
    for (const auto& g : r.generators)
        os << "  generator " << g.name << ": residual " << num(g.residual) << " over " << g.samples << " samples ("
           << g.rejected << " rejected)\n";
    os << "  curvature max " << opt_num(r.curvature_max)
       << (r.curvature_max && *r.curvature_max <= r.tol ? " (flat)" : "") << "\n";
    os << "  torsion max " << opt_num(r.torsion_max) << "\n";
    for (const auto& m : r.membership)
        os << "  membership " << m.name << ": " << (m.member ? "yes" : "no") << " (residual " << num(m.residual)
           << ")\n";
    for (const auto& d : r.discrepancies) {
        os << "  discrepancy " << d.id << ": printed [" << d.printed << "] derived [" << d.derived << "]";
        if (d.printed_residual) os << " printed residual " << num(*d.printed_residual);
        if (d.derived_residual) os << " derived residual " << num(*d.derived_residual);
        os << "\n";
    }
    return os.str();
}

nlohmann::json round_numbers(const nlohmann::json& j) {
    if (j.is_number_float()) {
        double x = j.get<double>();
        if (!std::isfinite(x)) return nullptr;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.15g", x);
        return std::strtod(buf, nullptr);
    }
    if (j.is_array()) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& e : j) out.push_back(round_numbers(e));
        return out;
    }
    if (j.is_object()) {
        nlohmann::json out = nlohmann::json::object();
        for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = round_numbers(it.value());
        return out;
    }
    return j;
}

}  // namespace ellconn
