#include "ellconn/mero_expr.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "ellconn/elliptic.hpp"
#include "ellconn/errors.hpp"

namespace ellconn {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_double(double d) {
    if (d == 0.0) d = 0.0;  // fold -0
    return std::hash<double>{}(d);
}

Expr make(Node n) {
    std::size_t h = std::hash<int>{}(static_cast<int>(n.op));
    switch (n.op) {
        case Op::constant:
            h = mix(h, hash_double(n.value.real()));
            h = mix(h, hash_double(n.value.imag()));
            break;
        case Op::z1:
            n.deps = 1;
            break;
        case Op::z2:
            n.deps = 2;
            break;
        case Op::power:
            h = mix(h, std::hash<int>{}(n.exponent));
            break;
        case Op::apply:
            h = mix(h, std::hash<int>{}(static_cast<int>(n.func)));
            h = mix(h, std::hash<std::string>{}(n.name));
            break;
        default:
            break;
    }
    int nest = 0;
    for (const Expr& a : n.args) {
        h = mix(h, a.hash());
        n.deps |= a.node().deps;
        nest = std::max(nest, a.node().nesting);
    }
    n.nesting = nest + (n.op == Op::apply ? 1 : 0);
    if (n.nesting > kMaxNesting) throw ExpressionTooDeep("function composition nested deeper than 64");
    n.hash = h;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr make_leaf(Op op) {
    Node n;
    n.op = op;
    return make(std::move(n));
}

const Expr& shared_z1() {
    static const Expr e = make_leaf(Op::z1);
    return e;
}
const Expr& shared_z2() {
    static const Expr e = make_leaf(Op::z2);
    return e;
}

cplx int_pow(cplx b, int k) {
    bool inv = k < 0;
    unsigned e = static_cast<unsigned>(inv ? -static_cast<long>(k) : k);
    cplx r = 1.0;
    while (e) {
        if (e & 1U) r *= b;
        b *= b;
        e >>= 1U;
    }
    return inv ? 1.0 / r : r;
}

// coefficient * rest decomposition used to collect like terms
std::pair<cplx, Expr> split_coefficient(const Expr& t) {
    const Node& n = t.node();
    if (n.op == Op::product && !n.args.empty() && n.args.front().is_constant()) {
        std::vector<Expr> rest(n.args.begin() + 1, n.args.end());
        Expr r = rest.size() == 1 ? rest.front() : raw::product(std::move(rest));
        return {n.args.front().node().value, r};
    }
    return {1.0, t};
}

std::pair<Expr, int> split_power(const Expr& f) {
    const Node& n = f.node();
    if (n.op == Op::power) return {n.args.front(), n.exponent};
    return {f, 1};
}

// Ordered grouping by structural equality.
template <class V>
struct Groups {
    std::vector<std::pair<Expr, V>> items;
    std::unordered_multimap<std::size_t, std::size_t> index;

    V& at(const Expr& key, V init) {
        auto range = index.equal_range(key.hash());
        for (auto it = range.first; it != range.second; ++it)
            if (structurally_equal(items[it->second].first, key)) return items[it->second].second;
        index.emplace(key.hash(), items.size());
        items.emplace_back(key, init);
        return items.back().second;
    }
};

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}
std::map<std::string, GeneratorRule>& registry() {
    static std::map<std::string, GeneratorRule> r;
    return r;
}

GeneratorRule lookup_generator(const std::string& name) {
    std::lock_guard lock(registry_mutex());
    auto it = registry().find(name);
    if (it == registry().end()) throw InputError("unknown generator '" + name + "'");
    return it->second;
}

}  // namespace

// ---------------------------------------------------------------- Expr

Expr::Expr() : Expr(cplx{0.0, 0.0}) {}
Expr::Expr(double c) : Expr(cplx{c, 0.0}) {}
Expr::Expr(int c) : Expr(cplx{static_cast<double>(c), 0.0}) {}
Expr::Expr(cplx c) {
    Node n;
    n.op = Op::constant;
    n.value = c;
    *this = make(std::move(n));
}

bool Expr::is_constant() const { return node_->op == Op::constant; }
bool Expr::is_zero() const { return is_constant() && node_->value == cplx{}; }
bool Expr::is_one() const { return is_constant() && node_->value == cplx{1.0, 0.0}; }
std::size_t Expr::hash() const { return node_->hash; }

// ---------------------------------------------------------------- raw builders

namespace raw {

Expr sum(std::vector<Expr> terms) {
    Node n;
    n.op = Op::sum;
    n.args = std::move(terms);
    return make(std::move(n));
}

Expr product(std::vector<Expr> factors) {
    Node n;
    n.op = Op::product;
    n.args = std::move(factors);
    return make(std::move(n));
}

Expr quotient(const Expr& num, const Expr& den) {
    Node n;
    n.op = Op::quotient;
    n.args = {num, den};
    return make(std::move(n));
}

Expr power(const Expr& base, int k) {
    Node n;
    n.op = Op::power;
    n.exponent = k;
    n.args = {base};
    return make(std::move(n));
}

Expr apply(Func f, const Expr& arg, const std::string& name) {
    Node n;
    n.op = Op::apply;
    n.func = f;
    n.name = f == Func::generator ? name : std::string{};
    n.args = {arg};
    return make(std::move(n));
}

}  // namespace raw

// ---------------------------------------------------------------- builders

Expr constant(cplx c) { return Expr(c); }
Expr z1() { return shared_z1(); }
Expr z2() { return shared_z2(); }
Expr g2_invariant() { return make_leaf(Op::invariant_g2); }
Expr g3_invariant() { return make_leaf(Op::invariant_g3); }

Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    for (auto& t : terms) {
        if (t.node().op == Op::sum)
            flat.insert(flat.end(), t.node().args.begin(), t.node().args.end());
        else
            flat.push_back(t);
    }
    cplx c{};
    Groups<cplx> groups;
    for (const Expr& t : flat) {
        if (t.is_constant()) {
            c += t.node().value;
            continue;
        }
        auto [coef, rest] = split_coefficient(t);
        groups.at(rest, cplx{}) += coef;
    }
    std::vector<Expr> out;
    if (c != cplx{}) out.push_back(constant(c));
    for (auto& [rest, coef] : groups.items) {
        if (coef == cplx{}) continue;
        out.push_back(coef == cplx{1.0, 0.0} ? rest : product({constant(coef), rest}));
    }
    if (out.empty()) return constant(0.0);
    if (out.size() == 1) return out.front();
    return raw::sum(std::move(out));
}

Expr product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    for (auto& f : factors) {
        if (f.node().op == Op::product)
            flat.insert(flat.end(), f.node().args.begin(), f.node().args.end());
        else
            flat.push_back(f);
    }
    cplx c{1.0, 0.0};
    Groups<int> groups;
    for (const Expr& f : flat) {
        if (f.is_constant()) {
            c *= f.node().value;
            continue;
        }
        auto [base, k] = split_power(f);
        groups.at(base, 0) += k;
    }
    if (c == cplx{}) return constant(0.0);
    std::vector<Expr> out;
    if (c != cplx{1.0, 0.0}) out.push_back(constant(c));
    for (auto& [base, k] : groups.items) {
        if (k == 0) continue;
        out.push_back(k == 1 ? base : raw::power(base, k));
    }
    if (out.empty()) return constant(c);
    if (out.size() == 1) return out.front();
    return raw::product(std::move(out));
}

Expr quotient(const Expr& num, const Expr& den) {
    if (num.is_zero() && !den.is_zero()) return constant(0.0);
    if (den.is_constant() && !den.is_zero()) return product({constant(1.0 / den.node().value), num});
    if (structurally_equal(num, den)) return constant(1.0);
    return raw::quotient(num, den);
}

Expr power(const Expr& base, int k) {
    if (k == 0) return constant(1.0);
    if (k == 1) return base;
    if (base.is_constant() && !(base.is_zero() && k < 0)) return constant(int_pow(base.node().value, k));
    if (base.node().op == Op::power) return power(base.node().args.front(), base.node().exponent * k);
    return raw::power(base, k);
}

Expr apply(Func f, const Expr& arg, const std::string& name) {
    if (arg.is_constant()) {
        if (f == Func::exp) return constant(std::exp(arg.node().value));
        if (f == Func::log && !arg.is_zero()) return constant(std::log(arg.node().value));
    }
    if (f == Func::generator && name.empty()) throw InputError("generator needs a name");
    return raw::apply(f, arg, name);
}

Expr wp(const Expr& arg) { return apply(Func::wp, arg); }
Expr wp_prime(const Expr& arg) { return apply(Func::wp_prime, arg); }
Expr zeta(const Expr& arg) { return apply(Func::zeta, arg); }
Expr exp_of(const Expr& arg) { return apply(Func::exp, arg); }
Expr log_of(const Expr& arg) { return apply(Func::log, arg); }
Expr generator(const std::string& name, const Expr& arg) { return apply(Func::generator, arg, name); }

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, product({constant(-1.0), b})}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
Expr operator-(const Expr& a) { return product({constant(-1.0), a}); }

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.get() == b.get()) return true;
    const Node& x = a.node();
    const Node& y = b.node();
    if (x.hash != y.hash || x.op != y.op || x.args.size() != y.args.size()) return false;
    switch (x.op) {
        case Op::constant:
            if (x.value != y.value) return false;
            break;
        case Op::power:
            if (x.exponent != y.exponent) return false;
            break;
        case Op::apply:
            if (x.func != y.func || x.name != y.name) return false;
            break;
        default:
            break;
    }
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (!structurally_equal(x.args[i], y.args[i])) return false;
    return true;
}

bool depends_on(const Expr& e, Coord c) {
    return (e.node().deps & (c == Coord::z1 ? 1U : 2U)) != 0;
}

void register_generator(const std::string& name, GeneratorRule rule) {
    if (name.empty()) throw InputError("generator needs a name");
    if (!rule.evaluate) throw InputError("generator '" + name + "' has no evaluator");
    std::lock_guard lock(registry_mutex());
    registry()[name] = std::move(rule);
}

bool has_generator(const std::string& name) {
    std::lock_guard lock(registry_mutex());
    return registry().count(name) != 0;
}

void unregister_generator(const std::string& name) {
    std::lock_guard lock(registry_mutex());
    registry().erase(name);
}

// ---------------------------------------------------------------- calculus

namespace {

Expr outer_derivative(const Node& n) {
    const Expr& u = n.args.front();
    switch (n.func) {
        case Func::wp:
            return wp_prime(u);
        case Func::wp_prime:
            return constant(6.0) * power(wp(u), 2) - constant(0.5) * g2_invariant();
        case Func::zeta:
            return -wp(u);
        case Func::exp:
            return exp_of(u);
        case Func::log:
            return quotient(constant(1.0), u);
        case Func::generator: {
            GeneratorRule rule = lookup_generator(n.name);
            if (!rule.derivative) throw DerivativeUnavailable("no derivative registered for '" + n.name + "'");
            return rule.derivative(u);
        }
    }
    return constant(0.0);
}

struct Differentiator {
    Coord var;
    std::unordered_map<const Node*, Expr> memo;

    Expr operator()(const Expr& e) {
        if (!depends_on(e, var)) return constant(0.0);
        auto it = memo.find(e.get());
        if (it != memo.end()) return it->second;
        Expr r = compute(e);
        memo.emplace(e.get(), r);
        return r;
    }

    Expr compute(const Expr& e) {
        const Node& n = e.node();
        switch (n.op) {
            case Op::z1:
            case Op::z2:
                return constant(1.0);  // dependency already checked
            case Op::sum: {
                std::vector<Expr> ts;
                for (const Expr& a : n.args) ts.push_back((*this)(a));
                return sum(std::move(ts));
            }
            case Op::product: {
                std::vector<Expr> ts;
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    Expr d = (*this)(n.args[i]);
                    if (d.is_zero()) continue;
                    std::vector<Expr> fs;
                    for (std::size_t j = 0; j < n.args.size(); ++j) fs.push_back(j == i ? d : n.args[j]);
                    ts.push_back(product(std::move(fs)));
                }
                return sum(std::move(ts));
            }
            case Op::quotient: {
                const Expr& u = n.args[0];
                const Expr& v = n.args[1];
                Expr du = (*this)(u);
                Expr dv = (*this)(v);
                if (dv.is_zero()) return quotient(du, v);
                return quotient(du * v - u * dv, power(v, 2));
            }
            case Op::power: {
                const Expr& b = n.args.front();
                return product({constant(static_cast<double>(n.exponent)), power(b, n.exponent - 1), (*this)(b)});
            }
            case Op::apply:
                return outer_derivative(n) * (*this)(n.args.front());
            default:
                return constant(0.0);
        }
    }
};

struct Substituter {
    Expr img1, img2;
    std::unordered_map<const Node*, Expr> memo;

    Expr operator()(const Expr& e) {
        if (e.node().deps == 0) return e;
        auto it = memo.find(e.get());
        if (it != memo.end()) return it->second;
        Expr r = compute(e);
        memo.emplace(e.get(), r);
        return r;
    }

    Expr compute(const Expr& e) {
        const Node& n = e.node();
        std::vector<Expr> as;
        for (const Expr& a : n.args) as.push_back((*this)(a));
        switch (n.op) {
            case Op::z1:
                return img1;
            case Op::z2:
                return img2;
            case Op::sum:
                return sum(std::move(as));
            case Op::product:
                return product(std::move(as));
            case Op::quotient:
                return quotient(as[0], as[1]);
            case Op::power:
                return power(as[0], n.exponent);
            case Op::apply:
                return apply(n.func, as[0], n.name);
            default:
                return e;
        }
    }
};

}  // namespace

Expr differentiate(const Expr& e, Coord var) {
    Differentiator d{var, {}};
    return d(e);
}

Expr substitute(const Expr& e, const Expr& z1_image, const Expr& z2_image) {
    Substituter s{z1_image, z2_image, {}};
    return s(e);
}

// ---------------------------------------------------------------- evaluation

namespace {

EvalResult finish(cplx v, bool near, double dist) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return EvalResult::pole();
    return near ? EvalResult::near(v, dist) : EvalResult::of(v);
}

const EllipticContext& need_ctx(const EllipticContext* ctx) {
    if (!ctx) throw InputError("elliptic quantity evaluated without a lattice context");
    return *ctx;
}

}  // namespace

EvalResult Evaluator::operator()(const Expr& e) {
    auto it = cache_.find(e.get());
    if (it != cache_.end()) return it->second;

    const Node& n = e.node();
    EvalResult r;
    bool near = false;
    double dist = 0.0;
    std::vector<cplx> vals;
    vals.reserve(n.args.size());
    for (const Expr& a : n.args) {
        EvalResult ar = (*this)(a);
        if (ar.is_pole()) {
            cache_.emplace(e.get(), EvalResult::pole());
            return EvalResult::pole();
        }
        if (ar.kind == EvalResult::Kind::near_pole) {
            near = true;
            dist = ar.distance;
        }
        vals.push_back(ar.value);
    }

    switch (n.op) {
        case Op::constant:
            r = EvalResult::of(n.value);
            break;
        case Op::z1:
            r = EvalResult::of(p_.z1);
            break;
        case Op::z2:
            r = EvalResult::of(p_.z2);
            break;
        case Op::invariant_g2:
            r = EvalResult::of(need_ctx(ctx_).g2());
            break;
        case Op::invariant_g3:
            r = EvalResult::of(need_ctx(ctx_).g3());
            break;
        case Op::sum: {
            cplx s{};
            for (cplx v : vals) s += v;
            r = finish(s, near, dist);
            break;
        }
        case Op::product: {
            cplx s{1.0, 0.0};
            for (cplx v : vals) s *= v;
            r = finish(s, near, dist);
            break;
        }
        case Op::quotient: {
            double scale = 1.0 + std::abs(vals[0]);
            double den = std::abs(vals[1]);
            if (den < kPoleThreshold * scale) {
                r = EvalResult::pole();
                break;
            }
            if (den < kNearPoleThreshold * scale) {
                near = true;
                dist = den;
            }
            r = finish(vals[0] / vals[1], near, dist);
            break;
        }
        case Op::power: {
            double mag = std::abs(vals[0]);
            if (n.exponent < 0 && mag < kPoleThreshold) {
                r = EvalResult::pole();
                break;
            }
            if (n.exponent < 0 && mag < kNearPoleThreshold) {
                near = true;
                dist = mag;
            }
            r = finish(int_pow(vals[0], n.exponent), near, dist);
            break;
        }
        case Op::apply: {
            cplx u = vals[0];
            EvalResult inner;
            switch (n.func) {
                case Func::wp:
                    inner = eval_elliptic(EllipticKind::wp, u, need_ctx(ctx_));
                    break;
                case Func::wp_prime:
                    inner = eval_elliptic(EllipticKind::wp_prime, u, need_ctx(ctx_));
                    break;
                case Func::zeta:
                    inner = eval_elliptic(EllipticKind::zeta, u, need_ctx(ctx_));
                    break;
                case Func::exp:
                    inner = EvalResult::of(std::exp(u));
                    break;
                case Func::log:
                    if (std::abs(u) < kPoleThreshold)
                        inner = EvalResult::pole();
                    else
                        inner = EvalResult::of(std::log(u));
                    break;
                case Func::generator:
                    inner = lookup_generator(n.name).evaluate(u, ctx_);
                    break;
            }
            if (inner.is_pole()) {
                r = inner;
                break;
            }
            if (inner.kind == EvalResult::Kind::near_pole) {
                near = true;
                dist = inner.distance;
            }
            r = finish(inner.value, near, dist);
            break;
        }
    }
    if (!r.is_pole()) peak_ = std::max(peak_, std::abs(r.value));
    cache_.emplace(e.get(), r);
    return r;
}

EvalResult evaluate(const Expr& e, const Point& p, const EllipticContext* ctx) {
    Evaluator ev(ctx, p);
    return ev(e);
}

NumericEqualResult numeric_equal(const Expr& a, const Expr& b, const SampleDomain& domain, int n, double tol,
                                 std::uint64_t seed, const EllipticContext* ctx) {
    if (n <= 0) throw InputError("sample count must be positive");
    Sampler sampler(domain, seed);
    NumericEqualResult res;
    const int max_attempts = 20 * n;
    for (int attempt = 0; attempt < max_attempts && res.accepted < n; ++attempt) {
        Point p = sampler.next();
        Evaluator ev(ctx, p);
        EvalResult va = ev(a);
        EvalResult vb = ev(b);
        if (!va.is_value() || !vb.is_value() || ev.peak() > kMagnitudeCap) {
            ++res.rejected;
            continue;
        }
        ++res.accepted;
        res.max_deviation = std::max(res.max_deviation, std::abs(va.value - vb.value));
    }
    if (res.accepted < (n + 1) / 2)
        throw UnableToSample("only " + std::to_string(res.accepted) + " pole-free samples out of " +
                             std::to_string(n) + " requested");
    res.equal = res.max_deviation <= tol;
    return res;
}

// ---------------------------------------------------------------- JSON

nlohmann::json complex_to_json(cplx c) { return nlohmann::json::array({c.real(), c.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("expected a complex number [re, im], got " + j.dump());
}

namespace {

const char* func_op(Func f) {
    switch (f) {
        case Func::wp:
            return "wp";
        case Func::wp_prime:
            return "wpprime";
        case Func::zeta:
            return "zeta";
        case Func::exp:
            return "exp";
        case Func::log:
            return "log";
        case Func::generator:
            return "gen";
    }
    return "?";
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("expression is missing '") + key + "': " + j.dump());
    return *it;
}

}  // namespace

nlohmann::json to_json(const Expr& e) {
    const Node& n = e.node();
    nlohmann::json j;
    switch (n.op) {
        case Op::constant:
            j["op"] = "const";
            j["value"] = complex_to_json(n.value);
            break;
        case Op::z1:
            j["op"] = "z1";
            break;
        case Op::z2:
            j["op"] = "z2";
            break;
        case Op::invariant_g2:
            j["op"] = "g2";
            break;
        case Op::invariant_g3:
            j["op"] = "g3";
            break;
        case Op::sum:
        case Op::product: {
            j["op"] = n.op == Op::sum ? "sum" : "prod";
            nlohmann::json args = nlohmann::json::array();
            for (const Expr& a : n.args) args.push_back(to_json(a));
            j["args"] = std::move(args);
            break;
        }
        case Op::quotient:
            j["op"] = "quot";
            j["num"] = to_json(n.args[0]);
            j["den"] = to_json(n.args[1]);
            break;
        case Op::power:
            j["op"] = "pow";
            j["base"] = to_json(n.args[0]);
            j["exp"] = n.exponent;
            break;
        case Op::apply:
            j["op"] = func_op(n.func);
            if (n.func == Func::generator) j["name"] = n.name;
            if (n.args[0].node().op != Op::z1) j["arg"] = to_json(n.args[0]);
            break;
    }
    return j;
}

Expr expr_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("expression must be a JSON object: " + j.dump());
    const std::string op = field(j, "op").get<std::string>();
    auto arg_of = [&]() { return j.contains("arg") ? expr_from_json(j["arg"]) : z1(); };
    if (op == "const") return constant(complex_from_json(field(j, "value")));
    if (op == "z1") return z1();
    if (op == "z2") return z2();
    if (op == "g2") return g2_invariant();
    if (op == "g3") return g3_invariant();
    if (op == "sum" || op == "prod") {
        const auto& args = field(j, "args");
        if (!args.is_array() || args.empty()) throw InputError("'" + op + "' needs a non-empty args array");
        std::vector<Expr> xs;
        for (const auto& a : args) xs.push_back(expr_from_json(a));
        return op == "sum" ? raw::sum(std::move(xs)) : raw::product(std::move(xs));
    }
    if (op == "quot") return raw::quotient(expr_from_json(field(j, "num")), expr_from_json(field(j, "den")));
    if (op == "pow") {
        const auto& k = field(j, "exp");
        if (!k.is_number_integer()) throw InputError("'pow' exponent must be an integer");
        return raw::power(expr_from_json(field(j, "base")), k.get<int>());
    }
    if (op == "wp") return raw::apply(Func::wp, arg_of());
    if (op == "wpprime") return raw::apply(Func::wp_prime, arg_of());
    if (op == "zeta") return raw::apply(Func::zeta, arg_of());
    if (op == "exp") return raw::apply(Func::exp, arg_of());
    if (op == "log") return raw::apply(Func::log, arg_of());
    if (op == "gen") {
        std::string name = field(j, "name").get<std::string>();
        if (!has_generator(name)) throw InputError("unknown generator '" + name + "'");
        return raw::apply(Func::generator, arg_of(), name);
    }
    throw InputError("unknown expression op '" + op + "'");
}

namespace {

std::string fmt_number(cplx c) {
    std::ostringstream os;
    os.precision(15);
    if (c.imag() == 0.0) {
        os << c.real();
    } else if (c.real() == 0.0) {
        os << c.imag() << "i";
    } else {
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    }
    return os.str();
}

void print(std::ostream& os, const Expr& e, int parent_prec) {
    const Node& n = e.node();
    // precedences: sum 1, product/quotient 2, power 3, atoms 4
    switch (n.op) {
        case Op::constant: {
            std::string s = fmt_number(n.value);
            bool neg = s[0] == '-';
            if (neg && parent_prec > 1) os << "(" << s << ")";
            else os << s;
            break;
        }
        case Op::z1:
            os << "z1";
            break;
        case Op::z2:
            os << "z2";
            break;
        case Op::invariant_g2:
            os << "g2";
            break;
        case Op::invariant_g3:
            os << "g3";
            break;
        case Op::sum: {
            if (parent_prec > 1) os << "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) os << " + ";
                print(os, n.args[i], 1);
            }
            if (parent_prec > 1) os << ")";
            break;
        }
        case Op::product: {
            if (parent_prec > 2) os << "(";
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (i) os << "*";
                print(os, n.args[i], 2);
            }
            if (parent_prec > 2) os << ")";
            break;
        }
        case Op::quotient:
            if (parent_prec > 2) os << "(";
            print(os, n.args[0], 2);
            os << "/";
            print(os, n.args[1], 3);
            if (parent_prec > 2) os << ")";
            break;
        case Op::power:
            print(os, n.args[0], 4);
            os << "^" << (n.exponent < 0 ? "(" + std::to_string(n.exponent) + ")" : std::to_string(n.exponent));
            break;
        case Op::apply: {
            const char* names[] = {"wp", "wp'", "zeta", "exp", "log"};
            if (n.func == Func::generator)
                os << n.name;
            else
                os << names[static_cast<int>(n.func)];
            os << "(";
            print(os, n.args[0], 0);
            os << ")";
            break;
        }
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print(os, e, 0);
    return os.str();
}

}  // namespace ellconn
