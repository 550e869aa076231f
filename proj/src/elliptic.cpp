#include "ellconn/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "ellconn/errors.hpp"
#include "ellconn/mero_expr.hpp"

namespace ellconn {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// pi*cot(pi*w) and pi^2/sin^2(pi*w), stable for large |Im w|.
void cot_csc2(cplx w, cplx& pcot, cplx& pcsc2) {
    cplx x = kPi * w;
    if (std::abs(x.imag()) < 5.0) {
        cplx s = std::sin(x), c = std::cos(x);
        pcot = kPi * c / s;
        pcsc2 = kPi * kPi / (s * s);
        return;
    }
    if (x.imag() > 0) {
        cplx e = std::exp(2.0 * kI * x);  // small
        pcot = kPi * kI * (e + 1.0) / (e - 1.0);
        pcsc2 = kPi * kPi * (-4.0 * e / ((e - 1.0) * (e - 1.0)));
    } else {
        cplx e = std::exp(-2.0 * kI * x);  // small
        pcot = kPi * kI * (1.0 + e) / (1.0 - e);
        pcsc2 = kPi * kPi * (-4.0 * e / ((1.0 - e) * (1.0 - e)));
    }
}

cplx sigma_sum(int n, int k) {
    double s = 0.0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += std::pow(static_cast<double>(d), k);
    return s;
}

// 1 + coef * sum sigma_k(n) q^n
cplx eisenstein_q(cplx q, int k, double coef) {
    cplx total = 1.0, qn = 1.0;
    for (int n = 1; n < 4000; ++n) {
        qn *= q;
        cplx term = coef * sigma_sum(n, k) * qn;
        total += term;
        if (std::abs(term) < 1e-18 * std::abs(total)) break;
    }
    return total;
}

// Row-summed zeta without reduction to a cell.
cplx zeta_rows(cplx z, cplx tau, cplx eta1, int rows) {
    cplx acc{}, c, s2;
    cot_csc2(z, c, s2);
    acc += c;
    for (int n = 1; n <= rows; ++n) {
        cplx c1, c2;
        cot_csc2(z - static_cast<double>(n) * tau, c1, s2);
        cot_csc2(z + static_cast<double>(n) * tau, c2, s2);
        acc += c1 + c2;
    }
    return acc + z * eta1;
}

}  // namespace

int EllipticContext::rows_for(double im_bound) const {
    // tail terms decay like exp(-2 pi (n Im tau - im_bound))
    double need = (std::abs(im_bound) + 6.7) / tau_.imag();
    return static_cast<int>(std::ceil(need)) + 1;
}

EllipticContext::EllipticContext(cplx tau) : tau_(tau) {
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw DomainError("tau must lie in the upper half-plane");

    cplx q = std::exp(2.0 * kPi * kI * tau);
    const double pi4 = std::pow(kPi, 4), pi6 = std::pow(kPi, 6);
    cplx G4 = pi4 / 45.0 * eisenstein_q(q, 3, 240.0);
    cplx G6 = 2.0 * pi6 / 945.0 * eisenstein_q(q, 5, -504.0);
    g2_ = 60.0 * G4;
    g3_ = 140.0 * G6;

    // eta1 = pi^2/3 + sum_{n != 0} pi^2 / sin^2(pi n tau)
    cplx e1 = kPi * kPi / 3.0;
    int rows = rows_for(0.0);
    for (int n = 1; n <= rows; ++n) {
        cplx c, s2;
        cot_csc2(static_cast<double>(n) * tau, c, s2);
        e1 += 2.0 * s2;
    }
    eta1_ = e1;

    // eta2 measured as a difference of zeta values, then certified constant.
    const cplx probes[] = {{0.213, 0.117}, {-0.31, 0.052}, {0.05, -0.21}, {0.377, 0.29}};
    cplx first{};
    for (int i = 0; i < 4; ++i) {
        cplx z = probes[i] * std::abs(tau);
        int r = rows_for(std::abs(z.imag()) + tau.imag()) + 1;
        cplx d = zeta_rows(z + tau, tau, eta1_, r) - zeta_rows(z, tau, eta1_, r);
        if (i == 0)
            first = d;
        else if (std::abs(d - first) > 1e-9 * (1.0 + std::abs(first)))
            throw DomainError("quasi-period eta2 failed its constancy check");
    }
    eta2_ = first;
}

nlohmann::json EllipticContext::to_json() const { return {{"tau", complex_to_json(tau_)}}; }

EllipticContext EllipticContext::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("tau")) throw InputError("context needs a 'tau' field");
    return EllipticContext(complex_from_json(j["tau"]));
}

EllipticContext make_context(cplx tau) { return EllipticContext(tau); }

Reduced reduce_to_cell(cplx z, cplx tau) {
    double n = std::round(z.imag() / tau.imag());
    cplx u = z - n * tau;
    double m = std::round(u.real());
    return {u - m, m, n};
}

double lattice_distance(cplx z, cplx tau) {
    Reduced r = reduce_to_cell(z, tau);
    double best = std::abs(r.w);
    for (int dm = -1; dm <= 1; ++dm)
        for (int dn = -1; dn <= 1; ++dn) best = std::min(best, std::abs(r.w - static_cast<double>(dm) - static_cast<double>(dn) * tau));
    return best;
}

EvalResult eval_elliptic(EllipticKind kind, cplx z, const EllipticContext& ctx) {
    const cplx tau = ctx.tau();
    double d = lattice_distance(z, tau);
    if (d * d < kPoleThreshold) return EvalResult::pole();

    Reduced r = reduce_to_cell(z, tau);
    const cplx w = r.w;
    const int rows = ctx.rows_for(std::abs(w.imag()));

    cplx val{};
    switch (kind) {
        case EllipticKind::wp: {
            cplx c, s2;
            cot_csc2(w, c, s2);
            val = s2;
            for (int n = 1; n <= rows; ++n) {
                cplx s2a, s2b;
                cot_csc2(w + static_cast<double>(n) * tau, c, s2a);
                cot_csc2(w - static_cast<double>(n) * tau, c, s2b);
                val += s2a + s2b;
            }
            val -= ctx.eta1();
            break;
        }
        case EllipticKind::wp_prime: {
            for (int n = -rows; n <= rows; ++n) {
                cplx c, s2;
                cot_csc2(w + static_cast<double>(n) * tau, c, s2);
                val += -2.0 * c * s2;
            }
            break;
        }
        case EllipticKind::zeta:
            val = zeta_rows(w, tau, ctx.eta1(), rows) + r.m * ctx.eta1() + r.n * ctx.eta2();
            break;
    }
    if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) return EvalResult::pole();
    if (d * d < kNearPoleThreshold) return EvalResult::near(val, d);
    return EvalResult::of(val);
}

cplx character_value(const E1Character& ch, int m, int n, const EllipticContext& ctx) {
    double dm = m, dn = n;
    return ch.alpha * (dm * ctx.eta1() + dn * ctx.eta2()) + ch.beta * (dm + dn * ctx.tau());
}

E1Character conjugation_character(const EllipticContext& ctx) {
    // alpha*eta1 + beta = 1, alpha*eta2 + beta*tau = conj(tau)
    cplx tau = ctx.tau();
    cplx det = ctx.eta1() * tau - ctx.eta2();
    E1Character ch;
    ch.alpha = (tau - std::conj(tau)) / det;
    ch.beta = 1.0 - ch.alpha * ctx.eta1();
    return ch;
}

}  // namespace ellconn
