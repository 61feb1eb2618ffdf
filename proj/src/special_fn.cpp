#include "bpsim/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bpsim {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)

// Lanczos coefficients, g = 607/128, N = 15 (Godfrey).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

double log_gamma_lanczos(double x) {
    // Valid for x >= 0.5.
    double series = kLanczos[0];
    for (int k = 1; k < 15; ++k) series += kLanczos[k] / (x - 1.0 + k);
    const double t = x + kLanczosG - 0.5;
    return (x - 0.5) * std::log(t) - t + kLogSqrt2Pi + std::log(series);
}

// Continued fraction for I_x(a,b), modified Lentz. Valid (and fast) for
// x < (a+1)/(a+b+2).
double ibeta_cf(double x, double a, double b) {
    constexpr double kFpMin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) return h;
    }
    throw numeric_error("reg_inc_beta: continued fraction did not converge", x, x);
}

// I_x(a,b) on the convergent branch x < (a+1)/(a+b+2). ln_beta = ln B(a,b).
double ibeta_lower(double x, double a, double b, double ln_beta) {
    if (x <= 0.0) return 0.0;
    const double lt = a * std::log(x) + b * std::log1p(-x) - ln_beta;
    return std::exp(lt) * ibeta_cf(x, a, b) / a;
}

double reg_inc_beta_impl(double x, double a, double b, double ln_beta) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0)) return ibeta_lower(x, a, b, ln_beta);
    return 1.0 - ibeta_lower(1.0 - x, b, a, ln_beta);
}

void check_shapes(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta shapes must be positive");
}

// Root of I_x(a,b) = p with the root known to lie in (0, 1/2]. Solves on
// t = ln x so roots far below DBL_MIN territory bracket in few steps.
// Returns 0.0 when even the smallest positive double overshoots p.
double solve_lower_tail(double p, double a, double b, double ln_beta) {
    const double t_min = std::log(std::numeric_limits<double>::denorm_min());
    auto f = [&](double t) { return reg_inc_beta_impl(std::exp(t), a, b, ln_beta) - p; };

    double t_hi = std::log(0.5);  // f(t_hi) >= 0 by the caller's branch choice
    if (f(t_min) > 0.0) return 0.0;

    // Leading-order start: I_x ~ x^a / (a B(a,b)) for small x.
    double t = (std::log(p) + std::log(a) + ln_beta) / a;
    t = std::min(t, std::log(0.4));
    double t_lo = std::max(t, t_min);
    while (f(t_lo) > 0.0) {
        t_hi = t_lo;
        t_lo = std::max(t_min, t_lo * 2.0 - 1.0);
        if (t_lo <= t_min) break;
    }

    const double tol = 1e-13 * std::max(p, 1.0 - p) + 1e-18;
    t = 0.5 * (t_lo + t_hi);
    double fv = f(t);
    for (int iter = 0; iter < 200; ++iter) {
        if (std::fabs(fv) <= tol) return std::exp(t);
        if (fv > 0.0) t_hi = t; else t_lo = t;
        if (t_hi - t_lo <= 4e-16 * std::max(1.0, std::fabs(t))) return std::exp(t);
        // Newton step on t: dI/dt = pdf(e^t) * e^t.
        const double x = std::exp(t);
        const double dldt = a * t + (b - 1.0) * std::log1p(-x) - ln_beta;
        const double deriv = std::exp(dldt);
        double t_next = (deriv > 0.0 && std::isfinite(deriv)) ? t - fv / deriv
                                                              : 0.5 * (t_lo + t_hi);
        if (!(t_next > t_lo && t_next < t_hi)) t_next = 0.5 * (t_lo + t_hi);
        t = t_next;
        fv = f(t);
    }
    throw numeric_error("beta_quantile: no convergence after 200 iterations",
                        std::exp(t_lo), std::exp(t_hi));
}

// One adaptive Simpson refinement layer.
template <typename F>
double adaptive_simpson_rec(const F& f, double lo, double mid, double hi, double flo, double fmid,
                            double fhi, double whole, double tol, int depth) {
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = f(lmid);
    const double frm = f(rmid);
    const double s_left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double s_right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double split = s_left + s_right;
    if (depth <= 0 || std::fabs(split - whole) <= 15.0 * tol) {
        return split + (split - whole) / 15.0;
    }
    return adaptive_simpson_rec(f, lo, lmid, mid, flo, flm, fmid, s_left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, mid, rmid, hi, fmid, frm, fhi, s_right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double lo, double hi, double tol) {
    if (!(hi > lo)) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fmid = f(mid);
    const double fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return adaptive_simpson_rec(f, lo, mid, hi, flo, fmid, fhi, whole, tol, 48);
}

// Integral_x^1 s^-1 (1-s)^(c-1) ds for x in [1/2, 1): geometric series
// sum_k (1-x)^(c+k) / (c+k), ratio (1-x) <= 1/2.
double upper_tail_series(double x, double c) {
    const double om = 1.0 - x;
    if (om <= 0.0) return 0.0;
    double pw = std::pow(om, c);
    double sum = 0.0;
    for (int k = 0; k < 4000; ++k) {
        const double term = pw / (c + k);
        sum += term;
        if (term <= sum * 1e-17 + 1e-300) return sum;
        pw *= om;
    }
    return sum;
}

// Integral over u = ln(1/s) of (1 - e^-u)^(c-1) on [u_lo, u_hi], with the
// far range beyond u = 40 handled analytically (integrand is 1 + O(e^-u)).
double body_integral_u(double u_lo, double u_hi, double c) {
    constexpr double kFarCut = 40.0;
    auto g = [c](double u) { return std::pow(-std::expm1(-u), c - 1.0); };
    double total = 0.0;
    const double quad_hi = std::min(u_hi, kFarCut);
    if (quad_hi > u_lo) total += adaptive_simpson(g, u_lo, quad_hi, 1e-14);
    if (u_hi > kFarCut) {
        total += (u_hi - kFarCut) - (c - 1.0) * (std::exp(-kFarCut) - std::exp(-u_hi));
    }
    return total;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    if (x < 0.5) return log_gamma_lanczos(x + 1.0) - std::log(x);
    return log_gamma_lanczos(x);
}

double log_beta(double a, double b) {
    check_shapes(a, b);
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_log_density(double x, double a, double b) {
    check_shapes(a, b);
    if (!(x > 0.0) || !(x < 1.0)) throw std::domain_error("beta_log_density: x must be in (0,1)");
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b);
}

double beta_density(double x, double a, double b) { return std::exp(beta_log_density(x, a, b)); }

double reg_inc_beta(double x, double a, double b) {
    check_shapes(a, b);
    if (!(x >= 0.0) || !(x <= 1.0)) throw std::domain_error("reg_inc_beta: x must be in [0,1]");
    return reg_inc_beta_impl(x, a, b, log_beta(a, b));
}

namespace detail {

BetaTail::BetaTail(double a_, double b_) : a(a_), b(b_), ln_beta(0.0) {
    check_shapes(a_, b_);
    ln_beta = log_beta(a_, b_);
}

double beta_quantile_cached(double p, const BetaTail& tail) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::domain_error("beta_quantile: p must be in [0,1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const double i_half = reg_inc_beta_impl(0.5, tail.a, tail.b, tail.ln_beta);
    if (p <= i_half) return solve_lower_tail(p, tail.a, tail.b, tail.ln_beta);
    // Mirror: Q_{a,b}(p) = 1 - Q_{b,a}(1-p); ln B is symmetric.
    return 1.0 - solve_lower_tail(1.0 - p, tail.b, tail.a, tail.ln_beta);
}

bool levy_tail_has_integer_form(double c) {
    return c == std::floor(c) && c >= 1.0 && c <= 12.0;
}

double levy_tail_integer_c(double x, const LevyTailSpec& spec) {
    // Integral_x^1 s^-1 (1-s)^(c-1) ds
    //   = ln(1/x) + sum_{k=1}^{c-1} binom(c-1,k) (-1)^k (1 - x^k)/k.
    const int cm1 = static_cast<int>(spec.c) - 1;
    double sum = -std::log(x);
    double binom = 1.0;
    double sign = 1.0;
    for (int k = 1; k <= cm1; ++k) {
        binom = binom * (cm1 - k + 1) / k;
        sign = -sign;
        sum += sign * binom * (1.0 - std::pow(x, k)) / k;
    }
    // gamma outermost: levy_tail(x,c,gamma) == gamma * levy_tail(x,c,1) exactly.
    return spec.gamma * (spec.c * sum);
}

double levy_tail_general(double x, const LevyTailSpec& spec) {
    double base;
    if (x >= 0.5) {
        base = upper_tail_series(x, spec.c);
    } else {
        base = upper_tail_series(0.5, spec.c) +
               body_integral_u(std::log(2.0), -std::log(x), spec.c);
    }
    return spec.gamma * (spec.c * base);
}

}  // namespace detail

double beta_quantile(double p, double a, double b) {
    return detail::beta_quantile_cached(p, detail::BetaTail(a, b));
}

double levy_tail(double x, const LevyTailSpec& spec) {
    if (!(x > 0.0) || !(x < 1.0)) throw std::domain_error("levy_tail: x must be in (0,1)");
    if (detail::levy_tail_has_integer_form(spec.c)) return detail::levy_tail_integer_c(x, spec);
    return detail::levy_tail_general(x, spec);
}

double levy_tail_inverse(double t, const LevyTailSpec& spec) {
    if (!(t > 0.0)) throw std::domain_error("levy_tail_inverse: t must be positive");
    const double cg = spec.c * spec.gamma;
    // Solve h(u) = levy_tail(e^-u) = t on u = ln(1/x); h is increasing.
    auto h = [&](double u) { return levy_tail(std::exp(-u), spec); };
    double u_lo;
    double u_hi;
    if (spec.c >= 1.0) {
        // integrand <= 1 gives h(u) <= c*gamma*u.
        u_lo = t / cg;
        u_hi = std::max(2.0 * u_lo, 1.0);
        int guard = 0;
        while (h(u_hi) < t) {
            u_hi *= 2.0;
            if (++guard > 80) throw numeric_error("levy_tail_inverse: bracket failure", u_lo, u_hi);
        }
    } else {
        // h(u) >= c*gamma*u and h(u) <= gamma*u^c for c < 1.
        u_hi = t / cg;
        u_lo = std::min(u_hi, std::pow(std::min(t / spec.gamma, 1e12), 1.0 / spec.c));
        int guard = 0;
        while (h(u_lo) > t) {
            u_lo *= 0.5;
            if (++guard > 200) throw numeric_error("levy_tail_inverse: bracket failure", u_lo, u_hi);
        }
    }

    const double tol = 1e-12 * std::max(1.0, t);
    double u = std::clamp(t / cg, u_lo, u_hi);
    double hv = h(u) - t;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::fabs(hv) <= tol) return std::exp(-u);
        if (hv > 0.0) u_hi = u; else u_lo = u;
        if (u_hi - u_lo <= 4e-16 * std::max(1.0, u_hi)) return std::exp(-u);
        const double deriv = cg * std::pow(-std::expm1(-u), spec.c - 1.0);
        double u_next = (deriv > 0.0 && std::isfinite(deriv)) ? u - hv / deriv
                                                              : 0.5 * (u_lo + u_hi);
        if (!(u_next > u_lo && u_next < u_hi)) u_next = 0.5 * (u_lo + u_hi);
        u = u_next;
        hv = h(u) - t;
    }
    throw numeric_error("levy_tail_inverse: no convergence after 200 iterations", u_lo, u_hi);
}

double finite_tail(double x, const LevyTailSpec& spec, int n) {
    if (!(n > spec.gamma)) throw std::invalid_argument("finite_tail: requires n > gamma");
    if (!(x >= 0.0) || !(x <= 1.0)) throw std::domain_error("finite_tail: x must be in [0,1]");
    const double a = spec.c * spec.gamma / n;
    const double b = spec.c * (1.0 - spec.gamma / n);
    // Small x: 1 - I_x directly (I_x is the small branch, no cancellation
    // worse than one digit). Large x: the mirrored tail I_{1-x}(b,a)
    // avoids computing a difference of near-ones.
    if (x <= 0.5) return 1.0 - reg_inc_beta(x, a, b);
    return reg_inc_beta(1.0 - x, b, a);
}

double finite_tail_inverse(double u, const LevyTailSpec& spec, int n) {
    if (!(n > spec.gamma)) throw std::invalid_argument("finite_tail_inverse: requires n > gamma");
    if (!(u >= 0.0) || !(u <= 1.0)) throw std::domain_error("finite_tail_inverse: u must be in [0,1]");
    const double a = spec.c * spec.gamma / n;
    const double b = spec.c * (1.0 - spec.gamma / n);
    return beta_quantile(1.0 - u, a, b);
}

}  // namespace bpsim
