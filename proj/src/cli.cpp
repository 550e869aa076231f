#include "ellconn/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ellconn/acceptance.hpp"
#include "ellconn/errors.hpp"
#include "ellconn/family_catalog.hpp"
#include "ellconn/verifier.hpp"

namespace ellconn::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string spec;
    std::string out;
    int samples = 100;
    double tol = 1e-8;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
};

json read_spec(const std::string& path) {
    if (path.empty()) throw InputError("--spec FILE is required");
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("spec file '" + path + "' is not valid JSON: " + e.what());
    }
}

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    const char* env = std::getenv("ELLCONN_SEED");
    if (!env || !*env) return 0;
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || *end != '\0' || env[0] == '-') throw InputError("ELLCONN_SEED must be a non-negative integer");
    return v;
}

// Either a family spec or {"connection", "model"}.
struct Loaded {
    FamilyMember member;
    std::optional<SurfaceModel> model;
};

Loaded load(const json& j) {
    if (!j.is_object()) throw InputError("spec must be a JSON object");
    Loaded l;
    if (j.contains("family")) {
        FamilySpec s = family_spec_from_json(j);
        l.member = build_family(s);
        l.model = s.model;
        return l;
    }
    if (!j.contains("connection")) throw InputError("spec needs either 'family' or 'connection'");
    l.member.family = "custom";
    l.member.connection = connection_from_json(j["connection"]);
    if (j.contains("model")) {
        l.model = model_from_json(j["model"]);
        validate(*l.model);
    }
    return l;
}

std::string render(const json& j) { return round_numbers(j).dump(2) + "\n"; }

std::string num(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

std::string mat_text(const char* name, const ExprMat2& m) {
    std::string s;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            s += std::string(name) + std::to_string(i + 1) + std::to_string(k + 1) + " = " + to_string(m[i][k]) + "\n";
    return s;
}

int cmd_build(const Options& o, std::string& text) {
    Loaded l = load(read_spec(o.spec));
    if (o.format == "text") {
        text = "family: " + l.member.family + "\n" + mat_text("F", l.member.connection.F) +
               mat_text("G", l.member.connection.G);
        for (const auto& d : l.member.discrepancies) text += "discrepancy " + d.id + ": " + d.note + "\n";
        return kExitPass;
    }
    json j = to_json(l.member.connection);
    j["family"] = l.member.family;
    json disc = json::array();
    for (const auto& d : l.member.discrepancies) disc.push_back(to_json(d));
    j["discrepancies"] = disc;
    text = render(j);
    return kExitPass;
}

int cmd_verify(const Options& o, std::string& text) {
    Loaded l = load(read_spec(o.spec));
    if (!l.model) throw InputError("verify needs a 'model'");
    VerifyConfig cfg{o.samples, o.tol, resolve_seed(o)};
    VerificationReport r = verify_family(l.member, *l.model, cfg);
    text = o.format == "text" ? to_text(r) : render(to_json(r));
    return r.pass ? kExitPass : kExitFail;
}

int cmd_curvature(const Options& o, std::string& text) {
    Loaded l = load(read_spec(o.spec));
    ConnectionMatrix c = l.member.connection;
    SampleDomain dom;
    if (l.model) {
        dom = default_domain(*l.model);
        if (!c.ctx) c.ctx = model_context(*l.model);
    }
    VerifyConfig cfg{o.samples, o.tol, resolve_seed(o)};
    const ExprMat2 R = curvature(c);
    const auto T = torsion(c);
    const FlatnessResult fr = flatness_check(c, dom, cfg);
    const double tmax =
        sampled_max({T[0], T[1]}, dom, cfg.samples, derive_seed(cfg.seed, 101), c.context()).max_residual;
    if (o.format == "text") {
        text = mat_text("R", R) + "T1 = " + to_string(T[0]) + "\nT2 = " + to_string(T[1]) + "\n" +
               "curvature max " + num(fr.max_abs) + (fr.flat ? " (flat)" : "") + "\ntorsion max " + num(tmax) + "\n";
        return kExitPass;
    }
    json strs = json::array();
    for (const auto& row : R) strs.push_back({to_string(row[0]), to_string(row[1])});
    text = render({{"curvature", to_json(R)},
                   {"curvature_text", strs},
                   {"curvature_max", fr.max_abs},
                   {"flat", fr.flat},
                   {"torsion", {to_json(T[0]), to_json(T[1])}},
                   {"torsion_text", {to_string(T[0]), to_string(T[1])}},
                   {"torsion_max", tmax},
                   {"samples", fr.samples},
                   {"seed", cfg.seed},
                   {"tol", cfg.tol}});
    return kExitPass;
}

int cmd_catalog(const Options& o, std::string& text) {
    json listing = family_catalog_listing();
    if (o.format == "text") {
        for (const auto& f : listing) {
            text += f["family"].get<std::string>() + " (model " + f["model"].get<std::string>() + ")\n";
            for (auto it = f["params"].begin(); it != f["params"].end(); ++it)
                text += "  " + it.key() + ": " + it.value().get<std::string>() + "\n";
        }
        return kExitPass;
    }
    text = render(listing);
    return kExitPass;
}

int cmd_selftest(const Options& o, std::string& text) {
    const std::uint64_t seed = resolve_seed(o);
    auto results = run_acceptance(seed);
    json j = to_json(results);
    j["seed"] = seed;
    if (o.format == "text") {
        for (const auto& r : results)
            text += std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " " + r.name + "\n";
    } else {
        text = render(j);
    }
    return j["verdict"] == "pass" ? kExitPass : kExitFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Meromorphic affine connections on elliptic surfaces"};
    app.require_subcommand(1);
    Options o;
    std::uint64_t seed_value = 0;

    auto add_common = [&](CLI::App* sub, bool needs_spec) {
        if (needs_spec) sub->add_option("--spec", o.spec, "input JSON file")->required();
        sub->add_option("--out", o.out, "write output to FILE");
        sub->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
        sub->add_option("--tol", o.tol, "residual tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed_value, "sampling seed (falls back to ELLCONN_SEED)");
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    };
    CLI::App* build = app.add_subcommand("build", "build a family member from a spec");
    CLI::App* verify_cmd = app.add_subcommand("verify", "verify deck-group invariance");
    CLI::App* curv = app.add_subcommand("curvature", "curvature and torsion of a connection");
    CLI::App* catalog = app.add_subcommand("catalog", "list family constructors");
    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(build, true);
    add_common(verify_cmd, true);
    add_common(curv, true);
    add_common(catalog, false);
    add_common(selftest, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    for (CLI::App* s : {build, verify_cmd, curv, catalog, selftest})
        if (s->count("--seed") > 0) o.seed = seed_value;

    std::string text;
    int code = kExitPass;
    try {
        if (*build) code = cmd_build(o, text);
        else if (*verify_cmd) code = cmd_verify(o, text);
        else if (*curv) code = cmd_curvature(o, text);
        else if (*catalog) code = cmd_catalog(o, text);
        else code = cmd_selftest(o, text);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const UnableToSample& e) {
        err << "verification failed: " << e.what() << "\n";
        return kExitFail;
    } catch (const Error& e) {
        // unsolvable constraints, subspace violations and similar come from the spec
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    }

    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            err << "input error: cannot write '" << o.out << "'\n";
            return kExitInput;
        }
        f << text;
    }
    return code;
}

}  // namespace ellconn::cli
