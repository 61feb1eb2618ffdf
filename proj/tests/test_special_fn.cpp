#include <doctest.h>

#include <cmath>
#include <vector>

#include "bpsim/special_fn.hpp"

using namespace bpsim;

namespace {

// Test-local oracle for I_x(a,b), independent of the continued-fraction
// path (uses std::lgamma, not bpsim::log_gamma): the t -> 0 endpoint is
// integrated by its binomial series, the rest by composite Simpson. The
// series split keeps Simpson away from the t^(a-1) endpoint where its
// error order degrades for non-integer a.
double ibeta_by_quadrature(double x, double a, double b) {
    const double ln_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double delta = std::min(0.05, 0.5 * x);
    // Integral_0^delta t^(a-1)(1-t)^(b-1) dt = sum_m C(b-1,m)(-1)^m delta^(a+m)/(a+m)
    double series = 0.0;
    double binom = 1.0;
    for (int m = 0; m < 80; ++m) {
        if (m > 0) binom *= (b - m) / m;
        const double term = (m % 2 ? -1.0 : 1.0) * binom * std::pow(delta, a + m) / (a + m);
        series += term;
        if (std::fabs(term) < 1e-18) break;
    }
    series *= std::exp(-ln_beta);

    auto pdf = [&](double t) {
        return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - ln_beta);
    };
    const int n = 20000;
    const double h = (x - delta) / n;
    double sum = pdf(delta) + pdf(x);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * pdf(delta + i * h);
    return series + sum * h / 3.0;
}

}  // namespace

TEST_CASE("log_gamma matches exact values") {
    CHECK(std::fabs(log_gamma(1.0)) <= 1e-14);
    CHECK(std::fabs(log_gamma(2.0)) <= 1e-14);
    CHECK(log_gamma(0.5) == doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-14));
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
}

TEST_CASE("log_gamma recurrence and library agreement across [1e-6, 1e6]") {
    for (double lx = -6.0; lx <= 6.0001; lx += 0.05) {
        const double x = std::pow(10.0, lx);
        const double ours = log_gamma(x);
        const double ref = std::lgamma(x);
        CHECK(std::fabs(ours - ref) <= 1e-12 * std::max(1.0, std::fabs(ref)));
        // ln G(x+1) = ln G(x) + ln x
        CHECK(std::fabs(log_gamma(x + 1.0) - ours - std::log(x)) <=
              1e-12 * std::max(1.0, std::fabs(ours)));
    }
}

TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("reg_inc_beta closed forms") {
    CHECK(reg_inc_beta(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(reg_inc_beta(0.5, 1.0, 2.0) == doctest::Approx(0.75).epsilon(1e-13));
    CHECK(reg_inc_beta(0.3, 2.0, 1.0) == doctest::Approx(0.09).epsilon(1e-13));
    // a=1: I = 1-(1-x)^b; b=1: I = x^a; a=b=1/2: I = (2/pi) asin(sqrt x)
    for (double x = 0.05; x < 1.0; x += 0.05) {
        CHECK(std::fabs(reg_inc_beta(x, 1.0, 3.7) - (1.0 - std::pow(1.0 - x, 3.7))) <= 1e-12);
        CHECK(std::fabs(reg_inc_beta(x, 2.6, 1.0) - std::pow(x, 2.6)) <= 1e-12);
        CHECK(std::fabs(reg_inc_beta(x, 0.5, 0.5) - 2.0 / M_PI * std::asin(std::sqrt(x))) <= 1e-12);
    }
}

TEST_CASE("reg_inc_beta against independent quadrature") {
    const double shapes[] = {1.0, 1.99, 3.0, 7.5};
    for (double a : shapes) {
        for (double b : shapes) {
            for (double x = 0.1; x < 1.0; x += 0.2) {
                CHECK(std::fabs(reg_inc_beta(x, a, b) - ibeta_by_quadrature(x, a, b)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("reg_inc_beta tiny first shape stays accurate") {
    // b=1 closed form holds for any a: I = x^a = exp(a ln x).
    for (double x = 0.05; x < 1.0; x += 0.1) {
        CHECK(std::fabs(reg_inc_beta(x, 1e-6, 1.0) - std::exp(1e-6 * std::log(x))) <= 1e-13);
    }
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    for (double x = 0.05; x < 1.0; x += 0.1) {
        CHECK(std::fabs(reg_inc_beta(x, 1e-6, 2.0) + reg_inc_beta(1.0 - x, 2.0, 1e-6) - 1.0) <=
              1e-12);
    }
}

TEST_CASE("reg_inc_beta endpoints and domain") {
    CHECK(reg_inc_beta(0.0, 2.0, 3.0) == 0.0);
    CHECK(reg_inc_beta(1.0, 2.0, 3.0) == 1.0);
    CHECK_THROWS_AS(reg_inc_beta(-0.1, 2.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_beta(1.1, 2.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_beta(0.5, 0.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(reg_inc_beta(0.5, 2.0, -1.0), std::domain_error);
}

TEST_CASE("beta_quantile solves the stated examples") {
    CHECK(beta_quantile(0.0, 1.0, 1.0) == 0.0);
    CHECK(beta_quantile(1.0, 1.0, 1.0) == 1.0);
    CHECK(beta_quantile(0.25, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(beta_quantile(0.25, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));  // CDF x^2
    CHECK(beta_quantile(0.75, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));  // CDF 1-(1-x)^2
}

TEST_CASE("beta_quantile round trip over the shape grid") {
    const double shapes[] = {0.01, 0.1, 1.0, 2.0, 10.0};
    double worst_stable = 0.0;
    for (double a : shapes) {
        for (double b : shapes) {
            for (int k = 1; k <= 99; ++k) {
                const double p = k / 100.0;
                // Round-trip residual |I(Q(p)) - p| measured in the tail
                // where doubles can represent the root; the two calls are
                // the same mathematical composition by the mirror
                // identity Q_{a,b}(p) = 1 - Q_{b,a}(1-p).
                const double direct = std::fabs(reg_inc_beta(beta_quantile(p, a, b), a, b) - p);
                const double mirrored =
                    std::fabs(reg_inc_beta(beta_quantile(1.0 - p, b, a), b, a) - (1.0 - p));
                worst_stable = std::max(worst_stable, std::min(direct, mirrored));
                // Away from the x ~ 1 representability limit the direct
                // composition must meet the bound on its own.
                if (beta_quantile(p, a, b) < 0.9) CHECK(direct <= 1e-10);
            }
        }
    }
    CHECK(worst_stable <= 1e-10);
}

TEST_CASE("beta_quantile at the series-sampler shapes a = c*gamma/n") {
    // c=2, gamma=1, n=200 -> shapes (0.01, 1.99); the direct round trip
    // holds for every p here (roots stay far from 1).
    for (int k = 1; k <= 999; ++k) {
        const double p = k / 1000.0;
        const double x = beta_quantile(p, 0.01, 1.99);
        CHECK(std::fabs(reg_inc_beta(x, 0.01, 1.99) - p) <= 1e-10);
    }
}

TEST_CASE("beta_quantile monotone nondecreasing in p") {
    const double shapes[] = {0.01, 0.5, 1.0, 3.0};
    for (double a : shapes) {
        for (double b : shapes) {
            double prev = 0.0;
            for (int k = 0; k <= 100; ++k) {
                const double x = beta_quantile(k / 100.0, a, b);
                CHECK(x >= prev);
                prev = x;
            }
            CHECK(prev == 1.0);
        }
    }
}

TEST_CASE("beta_quantile tiny-shape stability") {
    // a = 1e-6: roots below the subnormal range round to zero; the
    // near-one quantile is still solved properly.
    CHECK(beta_quantile(0.5, 1e-6, 2.0) == 0.0);
    const double p = 1.0 - 1e-9;
    const double x = beta_quantile(p, 1e-6, 2.0);
    CHECK(x > 0.0);
    CHECK(x < 1.0);
    CHECK(std::fabs(reg_inc_beta(x, 1e-6, 2.0) - p) <= 1e-10);
    CHECK_THROWS_AS(beta_quantile(1.5, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(beta_quantile(0.5, -1.0, 1.0), std::domain_error);
}

TEST_CASE("levy_tail closed forms for c = 1 and c = 2") {
    for (double gamma : {0.5, 1.0, 2.5}) {
        const LevyTailSpec s1(1.0, gamma);
        const LevyTailSpec s2(2.0, gamma);
        for (int k = 1; k <= 99; ++k) {
            const double x = k / 100.0;
            CHECK(std::fabs(levy_tail(x, s1) - gamma * std::log(1.0 / x)) <= 1e-10);
            CHECK(std::fabs(levy_tail(x, s2) - 2.0 * gamma * (std::log(1.0 / x) - (1.0 - x))) <=
                  1e-10);
        }
    }
}

TEST_CASE("levy_tail c = 3 binomial expansion oracle") {
    // Integral_x^1 s^-1 (1-s)^2 ds = ln(1/x) - 2(1-x) + (1-x^2)/2.
    const LevyTailSpec s(3.0, 1.0);
    for (double x = 0.02; x < 1.0; x += 0.02) {
        const double exact = std::log(1.0 / x) - 2.0 * (1.0 - x) + 0.5 * (1.0 - x * x);
        CHECK(std::fabs(levy_tail(x, s) - 3.0 * exact) <= 1e-10);
    }
}

TEST_CASE("levy_tail general path agrees with the integer-c form") {
    for (double c : {1.0, 2.0, 3.0, 5.0}) {
        const LevyTailSpec s(c, 1.3);
        for (int k = 1; k <= 99; ++k) {
            const double x = k / 100.0;
            CHECK(std::fabs(detail::levy_tail_general(x, s) - detail::levy_tail_integer_c(x, s)) <=
                  1e-10);
        }
    }
}

TEST_CASE("levy_tail strictly decreasing and vanishing at 1") {
    for (double c : {0.6, 1.0, 1.7, 2.0}) {
        const LevyTailSpec s(c, 1.0);
        double prev = levy_tail(1e-3, s);
        for (int k = 2; k <= 1000; ++k) {
            const double x = k * 1e-3;
            const double v = levy_tail(std::min(x, 1.0 - 1e-9), s);
            CHECK(v < prev);
            prev = v;
        }
        // mu(x) ~ gamma (1-x)^c as x -> 1
        CHECK(levy_tail(1.0 - 1e-12, s) <= 1.01 * std::pow(1e-12, c) + 1e-12);
    }
}

TEST_CASE("levy_tail scales exactly linearly in gamma") {
    for (double c : {1.0, 1.7, 2.0}) {
        for (double gamma : {0.25, 1.0, 3.5}) {
            const LevyTailSpec sg(c, gamma);
            const LevyTailSpec s1(c, 1.0);
            for (double x = 0.1; x < 1.0; x += 0.1) {
                CHECK(levy_tail(x, sg) == gamma * levy_tail(x, s1));
            }
        }
    }
}

TEST_CASE("levy_tail domain checks") {
    const LevyTailSpec s(2.0, 1.0);
    CHECK_THROWS_AS(levy_tail(0.0, s), std::domain_error);
    CHECK_THROWS_AS(levy_tail(1.0, s), std::domain_error);
    CHECK_THROWS_AS(levy_tail(-0.2, s), std::domain_error);
    CHECK_THROWS_AS(LevyTailSpec(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(LevyTailSpec(2.0, -1.0), std::domain_error);
}

TEST_CASE("levy_tail_inverse c = 1 closed form and round trips") {
    for (double gamma : {0.5, 1.0, 2.5}) {
        const LevyTailSpec s(1.0, gamma);
        for (double t : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
            CHECK(std::fabs(levy_tail_inverse(t, s) - std::exp(-t / gamma)) <= 1e-10);
        }
    }
    for (double c : {0.6, 1.7, 2.0}) {
        const LevyTailSpec s(c, 1.0);
        double prev = 2.0;
        for (double t : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0, 300.0}) {
            const double x = levy_tail_inverse(t, s);
            CHECK(x < prev);  // strictly decreasing in t
            CHECK(std::fabs(levy_tail(x, s) - t) <= 1e-9);
            prev = x;
        }
    }
}

TEST_CASE("levy_tail_inverse approaches 1 as t -> 0+") {
    const LevyTailSpec s(2.0, 1.0);
    CHECK(levy_tail_inverse(1e-12, s) > 1.0 - 1e-5);
    CHECK_THROWS_AS(levy_tail_inverse(0.0, s), std::domain_error);
    CHECK_THROWS_AS(levy_tail_inverse(-1.0, s), std::domain_error);
}

TEST_CASE("levy_tail_inverse round-trips the c = 2 closed-form value") {
    // mu(0.5; c=2, gamma=1) = 2(ln 2 - 1/2) = 0.3862944...
    const LevyTailSpec s(2.0, 1.0);
    CHECK(levy_tail_inverse(2.0 * (std::log(2.0) - 0.5), s) ==
          doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("finite_tail reduces to the uniform complement at c=2, gamma=1, n=2") {
    const LevyTailSpec s(2.0, 1.0);  // shapes (1,1)
    for (double x = 0.0; x <= 1.0001; x += 0.05) {
        const double xa = std::min(x, 1.0);
        CHECK(std::fabs(finite_tail(xa, s, 2) - (1.0 - xa)) <= 1e-12);
    }
    for (double u = 0.0; u <= 1.0001; u += 0.05) {
        const double ua = std::min(u, 1.0);
        CHECK(std::fabs(finite_tail_inverse(ua, s, 2) - (1.0 - ua)) <= 1e-12);
    }
}

TEST_CASE("finite_tail endpoints, limit, and parameter checks") {
    const LevyTailSpec s(2.0, 1.0);
    CHECK(finite_tail(0.0, s, 10) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(finite_tail(1.0, s, 10) == doctest::Approx(0.0).epsilon(1e-14));
    // n * mu_n(x) -> mu(x)
    CHECK(std::fabs(1e4 * finite_tail(0.5, s, 10000) - levy_tail(0.5, s)) <= 1e-3);
    CHECK_THROWS_AS(finite_tail(0.5, s, 1), std::invalid_argument);
    CHECK_THROWS_AS(finite_tail_inverse(0.5, s, 1), std::invalid_argument);
    // monotone decreasing on a fine grid
    double prev = 2.0;
    for (int k = 1; k <= 1000; ++k) {
        const double v = finite_tail(k / 1001.0, s, 50);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("finite_tail round trip at the series-sampler setting") {
    const LevyTailSpec s(2.0, 1.0);
    for (int k = 1; k <= 99; ++k) {
        const double u = k / 100.0;
        const double x = finite_tail_inverse(u, s, 200);
        CHECK(std::fabs(finite_tail(x, s, 200) - u) <= 1e-9);
    }
}
