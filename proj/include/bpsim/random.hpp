#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace bpsim {

// Seedable stream over xoshiro256++, state-expanded with splitmix64.
// Identical seed gives a bit-identical draw sequence; substreams derived
// from (seed, index) are deterministic and statistically independent
// across indices. A stream is single-owner: do not share one instance
// across threads, give each worker its own substream.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();
    double next_uniform();      // open (0,1)
    double next_exponential();  // mean 1
    double next_normal();       // standard normal (polar rejection)

    // gamma(shape, rate); Marsaglia-Tsang, with the U^(1/shape) boost for
    // shape < 1 (exact). next_log_gamma returns ln of a gamma(shape, 1)
    // draw and stays finite where the draw itself would underflow.
    double next_gamma(double shape, double rate = 1.0);
    double next_log_gamma(double shape);

    // Exact for all means: Knuth product below 10, Hormann's transformed
    // rejection (PTRS) above; never a normal approximation.
    long long next_poisson(double mean);

    double next_beta(double a, double b);

  private:
    std::uint64_t s_[4];
};

RandomStream make_stream(std::uint64_t seed);
RandomStream derive_substream(std::uint64_t seed, std::uint64_t index);

// Mixes a 64-bit label into a seed; used to give each benchmark algorithm
// its own substream family.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t label_salt(const char* label);

// Poisson-process arrival times: cumulative sums of unit exponentials,
// strictly increasing.
struct ArrivalTimes {
    std::vector<double> gammas;
};
ArrivalTimes arrival_times(RandomStream& stream, int count);

// Tagged distribution spec for the generic draw entry point.
struct UniformDist {};
struct ExponentialDist {};
struct GammaDist {
    double shape;
    double rate;
};
struct PoissonDist {
    double mean;
};
struct BetaDist {
    double a;
    double b;
};
using DistSpec = std::variant<UniformDist, ExponentialDist, GammaDist, PoissonDist, BetaDist>;

double sample_dist(RandomStream& stream, const DistSpec& spec);

}  // namespace bpsim
