#include "bpsim/random.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "bpsim/special_fn.hpp"

namespace bpsim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t RandomStream::next_u64() {
    // xoshiro256++ (Blackman & Vigna, public domain).
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RandomStream::next_uniform() {
    // 53-bit mantissa, offset half a step: values lie strictly in (0,1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_exponential() { return -std::log(next_uniform()); }

double RandomStream::next_normal() {
    for (;;) {
        const double u = 2.0 * next_uniform() - 1.0;
        const double v = 2.0 * next_uniform() - 1.0;
        const double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double RandomStream::next_gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw std::domain_error("next_gamma: shape and rate must be positive");
    if (shape < 1.0) {
        // Boost: G(a) = G(a+1) * U^(1/a).
        return next_gamma(shape + 1.0, rate) * std::pow(next_uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double RandomStream::next_log_gamma(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("next_log_gamma: shape must be positive");
    if (shape < 1.0) {
        return std::log(next_gamma(shape + 1.0, 1.0)) + std::log(next_uniform()) / shape;
    }
    return std::log(next_gamma(shape, 1.0));
}

long long RandomStream::next_poisson(double mean) {
    if (!(mean >= 0.0)) throw std::domain_error("next_poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        // Knuth's product-of-uniforms inversion.
        const double limit = std::exp(-mean);
        long long k = 0;
        double prod = next_uniform();
        while (prod > limit) {
            ++k;
            prod *= next_uniform();
        }
        return k;
    }
    // Hormann's PTRS transformed rejection; exact for mean >= 10.
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = next_uniform() - 0.5;
        const double v = next_uniform();
        const double us = 0.5 - std::fabs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = -mean + kf * log_mean - log_gamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<long long>(kf);
    }
}

double RandomStream::next_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("next_beta: shapes must be positive");
    if (a == 1.0 && b == 1.0) return next_uniform();
    if (a == 1.0) return 1.0 - std::pow(next_uniform(), 1.0 / b);  // CDF 1-(1-x)^b inverted
    if (b == 1.0) return std::pow(next_uniform(), 1.0 / a);
    if (std::min(a, b) < 0.1) {
        // Gamma ratio in log space; tiny shapes would underflow otherwise.
        const double lg_a = next_log_gamma(a);
        const double lg_b = next_log_gamma(b);
        const double delta = lg_a - lg_b;
        return delta >= 0.0 ? 1.0 / (1.0 + std::exp(-delta))
                            : std::exp(delta) / (1.0 + std::exp(delta));
    }
    const double ga = next_gamma(a, 1.0);
    const double gb = next_gamma(b, 1.0);
    return ga / (ga + gb);
}

RandomStream make_stream(std::uint64_t seed) { return RandomStream(seed); }

RandomStream derive_substream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ mix64(index + 0xD1B54A32D192ED03ULL));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) { return mix64(seed ^ mix64(salt)); }

std::uint64_t label_salt(const char* label) {
    // FNV-1a.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char* p = label; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 0x100000001B3ULL;
    }
    return h;
}

ArrivalTimes arrival_times(RandomStream& stream, int count) {
    if (count < 1) throw std::invalid_argument("arrival_times: count must be >= 1");
    ArrivalTimes out;
    out.gammas.resize(static_cast<std::size_t>(count));
    double acc = 0.0;
    for (auto& g : out.gammas) {
        acc += stream.next_exponential();
        g = acc;
    }
    return out;
}

double sample_dist(RandomStream& stream, const DistSpec& spec) {
    struct Visitor {
        RandomStream& s;
        double operator()(const UniformDist&) const { return s.next_uniform(); }
        double operator()(const ExponentialDist&) const { return s.next_exponential(); }
        double operator()(const GammaDist& d) const { return s.next_gamma(d.shape, d.rate); }
        double operator()(const PoissonDist& d) const {
            return static_cast<double>(s.next_poisson(d.mean));
        }
        double operator()(const BetaDist& d) const { return s.next_beta(d.a, d.b); }
    };
    return std::visit(Visitor{stream}, spec);
}

}  // namespace bpsim
