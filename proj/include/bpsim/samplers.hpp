#pragma once

#include <span>
#include <string>
#include <vector>

#include "bpsim/measures.hpp"
#include "bpsim/random.hpp"

namespace bpsim {

enum class Algorithm { pc, as, fk, stick, poisson_rep, dls, lee_kim, lee };
enum class PoissonRepVariant { eq5, eq6 };

// Parameters for one path construction. Only the fields the chosen
// algorithm consumes are read; validate() checks those.
struct SamplerSpec {
    Algorithm algorithm = Algorithm::as;
    int n = 0;                      // pc, as (> gamma); dls, lee (>= 1)
    int rounds = 0;                 // stick, poisson_rep
    int jumps = 0;                  // fk (no silent default)
    double epsilon = 0.0;           // lee_kim, lee; in (0,1)
    std::vector<double> partition;  // dls: increasing interval endpoints
    PoissonRepVariant variant = PoissonRepVariant::eq5;

    void validate(const BetaProcessParams& params) const;
    std::string params_string() const;
};

const char* algorithm_id(Algorithm alg);
Algorithm algorithm_from_id(const std::string& id);  // also maps prep5/prep6

// Finite-dimensional construction: n i.i.d. Beta(c*gamma/n, c(1-gamma/n))
// weights at i.i.d. base/gamma locations. Requires n > gamma.
AtomicMeasure sample_pc(const BetaProcessParams& params, int n, RandomStream& stream);

// Almost-sure series construction: weights are the Beta(c*gamma/n,
// c(1-gamma/n)) quantile at 1 - Gamma_i/Gamma_{n+1}, strictly decreasing
// in i. Requires n > gamma. The _with form takes injected arrivals
// (size n+1) and locations (size n).
AtomicMeasure sample_as(const BetaProcessParams& params, int n, RandomStream& stream);
AtomicMeasure sample_as_with(const BetaProcessParams& params, int n, const ArrivalTimes& arrivals,
                             std::span<const double> locations);

// Series representation truncated at a fixed jump count: weights
// levy_tail_inverse(Gamma_i), strictly decreasing.
AtomicMeasure sample_fk(const BetaProcessParams& params, int jumps, RandomStream& stream);
AtomicMeasure sample_fk_with(const BetaProcessParams& params, const ArrivalTimes& arrivals,
                             std::span<const double> locations);

// Stick-breaking rounds: C_i ~ Poisson(gamma) atoms per round, weight
// V * prod of (i-1) independent complements, all V ~ Beta(1,c).
AtomicMeasure sample_stick(const BetaProcessParams& params, int rounds, RandomStream& stream);

// Poisson-embedding forms of the round construction. eq5: V * exp(-T),
// T ~ gamma(i-1, c) with the first round using V alone. eq6: telescoped
// exponential increments exp(-G_{i-1}/c) - exp(-G_i/c).
AtomicMeasure sample_poisson_rep(const BetaProcessParams& params, int rounds, RandomStream& stream,
                                 PoissonRepVariant variant);

// Increment-based construction over a fixed partition; inner resolution n.
// Keeps all m atoms (right endpoints), weights are nonnegative compound
// sums and may be zero or exceed 1.
AtomicMeasure sample_dls(const BetaProcessParams& params, std::span<const double> partition, int n,
                         RandomStream& stream);

// Jump-count construction: Poisson(c*gamma/eps) atoms at order statistics
// of i.i.d. locations, weights i.i.d. Beta(eps, c).
AtomicMeasure sample_lee_kim(const BetaProcessParams& params, double epsilon, RandomStream& stream);

// Compound construction: x_i ~ Beta(eps, c), y_i Poisson with rate
// gamma*b(x:1,c)/(n*x*b(x:eps,c)); zero-weight atoms are dropped.
AtomicMeasure sample_lee(const BetaProcessParams& params, int n, double epsilon,
                         RandomStream& stream);

AtomicMeasure sample_path(const BetaProcessParams& params, const SamplerSpec& spec,
                          RandomStream& stream);

// Round count that brings the expected residual mass gamma*(c/(c+1))^R
// below tol.
int default_rounds(double c, double gamma, double tol = 1e-6);

// The eq6 per-atom weight and the Lee Poisson rate, exposed for direct
// checks against their defining formulas.
double poisson_rep_increment(double prev_gamma, double gamma_i, double c);
double lee_poisson_rate(double x, double c, double gamma, int n, double epsilon);

// Equispaced partition of [0,1]-like support: lo + k*(hi-lo)/m, k = 0..m.
std::vector<double> equispaced_partition(double lo, double hi, int m);

}  // namespace bpsim
