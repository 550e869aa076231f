#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ellconn/eval_result.hpp"
#include "ellconn/sampling.hpp"

namespace ellconn {

class EllipticContext;
struct Node;

enum class Coord { z1, z2 };

// Immutable, shared expression handle. Copies are cheap and share structure.
class Expr {
public:
    Expr();  // the constant 0
    Expr(cplx c);
    Expr(double c);
    Expr(int c);
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    const Node& node() const { return *node_; }
    const Node* get() const { return node_.get(); }

    bool is_constant() const;
    bool is_zero() const;
    bool is_one() const;
    std::size_t hash() const;

private:
    std::shared_ptr<const Node> node_;
};

enum class Op : std::uint8_t { constant, z1, z2, invariant_g2, invariant_g3, sum, product, quotient, power, apply };

// Named univariate functions usable under apply.
enum class Func : std::uint8_t { wp, wp_prime, zeta, exp, log, generator };

struct Node {
    Op op = Op::constant;
    cplx value{};
    int exponent = 0;
    Func func = Func::wp;
    std::string name;
    std::vector<Expr> args;
    std::uint8_t deps = 0;  // bit 0: z1, bit 1: z2
    int nesting = 0;        // depth of nested apply nodes
    std::size_t hash = 0;
};

inline constexpr int kMaxNesting = 64;

// --- builders (simplifying) ---
Expr constant(cplx c);
Expr z1();
Expr z2();
Expr g2_invariant();
Expr g3_invariant();
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr quotient(const Expr& num, const Expr& den);
Expr power(const Expr& base, int k);
Expr apply(Func f, const Expr& arg, const std::string& name = {});
Expr wp(const Expr& arg = z1());
Expr wp_prime(const Expr& arg = z1());
Expr zeta(const Expr& arg = z1());
Expr exp_of(const Expr& arg);
Expr log_of(const Expr& arg);
Expr generator(const std::string& name, const Expr& arg = z1());

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// Builders that keep the structure exactly as given.
namespace raw {
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr quotient(const Expr& num, const Expr& den);
Expr power(const Expr& base, int k);
Expr apply(Func f, const Expr& arg, const std::string& name = {});
}  // namespace raw

bool structurally_equal(const Expr& a, const Expr& b);
bool depends_on(const Expr& e, Coord c);

// User supplied named functions of one variable.
struct GeneratorRule {
    std::function<EvalResult(cplx arg, const EllipticContext* ctx)> evaluate;
    // Derivative expressed in terms of its argument; empty if unknown.
    std::function<Expr(const Expr& arg)> derivative;
};
void register_generator(const std::string& name, GeneratorRule rule);
bool has_generator(const std::string& name);
void unregister_generator(const std::string& name);

// --- calculus and composition ---
Expr differentiate(const Expr& e, Coord var);
Expr substitute(const Expr& e, const Expr& z1_image, const Expr& z2_image);

// --- numerics ---
EvalResult evaluate(const Expr& e, const Point& p, const EllipticContext* ctx = nullptr);

// Evaluates many expressions at one point, sharing common subtrees.
class Evaluator {
public:
    Evaluator(const EllipticContext* ctx, Point p) : ctx_(ctx), p_(p) {}
    EvalResult operator()(const Expr& e);
    // Largest magnitude among all values computed so far, subexpressions included.
    double peak() const { return peak_; }

private:
    const EllipticContext* ctx_;
    Point p_;
    double peak_ = 0.0;
    std::unordered_map<const Node*, EvalResult> cache_;
};

struct NumericEqualResult {
    bool equal = false;
    double max_deviation = 0.0;
    int accepted = 0;
    int rejected = 0;
};
NumericEqualResult numeric_equal(const Expr& a, const Expr& b, const SampleDomain& domain, int n, double tol,
                                 std::uint64_t seed, const EllipticContext* ctx = nullptr);

// --- serialisation and display ---
nlohmann::json to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);
std::string to_string(const Expr& e);

nlohmann::json complex_to_json(cplx c);
cplx complex_from_json(const nlohmann::json& j);

}  // namespace ellconn
