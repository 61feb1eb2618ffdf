#include "bpsim/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bpsim/special_fn.hpp"

namespace bpsim {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_continuous(const BetaProcessParams& params, const char* who) {
    if (params.base.mixed())
        throw std::invalid_argument(std::string(who) + ": requires a continuous base measure");
}

double draw_location(const BetaProcessParams& params, RandomStream& stream) {
    return params.base.continuous_quantile01(stream.next_uniform());
}

}  // namespace

const char* algorithm_id(Algorithm alg) {
    switch (alg) {
        case Algorithm::pc: return "pc";
        case Algorithm::as: return "as";
        case Algorithm::fk: return "fk";
        case Algorithm::stick: return "stick";
        case Algorithm::poisson_rep: return "prep";
        case Algorithm::dls: return "dls";
        case Algorithm::lee_kim: return "leekim";
        case Algorithm::lee: return "lee";
    }
    return "?";
}

Algorithm algorithm_from_id(const std::string& id) {
    if (id == "pc") return Algorithm::pc;
    if (id == "as") return Algorithm::as;
    if (id == "fk") return Algorithm::fk;
    if (id == "stick") return Algorithm::stick;
    if (id == "prep" || id == "prep5" || id == "prep6") return Algorithm::poisson_rep;
    if (id == "dls") return Algorithm::dls;
    if (id == "leekim") return Algorithm::lee_kim;
    if (id == "lee") return Algorithm::lee;
    throw std::invalid_argument("unknown algorithm id: " + id);
}

void SamplerSpec::validate(const BetaProcessParams& params) const {
    const double gamma = params.base.mass();
    switch (algorithm) {
        case Algorithm::pc:
        case Algorithm::as:
            require(n > gamma, "sampler: requires n > gamma");
            break;
        case Algorithm::fk:
            require(jumps >= 1, "sampler: requires jumps >= 1");
            break;
        case Algorithm::stick:
        case Algorithm::poisson_rep:
            require(rounds >= 1, "sampler: requires rounds >= 1");
            break;
        case Algorithm::dls:
            require(partition.size() >= 2, "sampler: partition needs at least two endpoints");
            require(n >= 1, "sampler: requires n >= 1");
            break;
        case Algorithm::lee_kim:
            require(epsilon > 0.0 && epsilon < 1.0, "sampler: requires epsilon in (0,1)");
            break;
        case Algorithm::lee:
            require(n >= 1, "sampler: requires n >= 1");
            require(epsilon > 0.0 && epsilon < 1.0, "sampler: requires epsilon in (0,1)");
            break;
    }
}

std::string SamplerSpec::params_string() const {
    switch (algorithm) {
        case Algorithm::pc:
        case Algorithm::as: return "n=" + std::to_string(n);
        case Algorithm::fk: return "N=" + std::to_string(jumps);
        case Algorithm::stick: return "R=" + std::to_string(rounds);
        case Algorithm::poisson_rep:
            return std::string(variant == PoissonRepVariant::eq5 ? "eq5" : "eq6") +
                   ";R=" + std::to_string(rounds);
        case Algorithm::dls:
            return "m=" + std::to_string(partition.empty() ? 0 : partition.size() - 1) +
                   ";n=" + std::to_string(n);
        case Algorithm::lee_kim: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "eps=%g", epsilon);
            return buf;
        }
        case Algorithm::lee: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "n=%d;eps=%g", n, epsilon);
            return buf;
        }
    }
    return {};
}

AtomicMeasure sample_pc(const BetaProcessParams& params, int n, RandomStream& stream) {
    require_continuous(params, "sample_pc");
    const double gamma = params.base.mass();
    require(n > gamma, "sample_pc: requires n > gamma");
    const double a = params.c * gamma / n;
    const double b = params.c * (1.0 - gamma / n);
    std::vector<Atom> atoms(static_cast<std::size_t>(n));
    for (auto& atom : atoms) {
        atom.location = draw_location(params, stream);
        atom.weight = stream.next_beta(a, b);
    }
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure sample_as_with(const BetaProcessParams& params, int n, const ArrivalTimes& arrivals,
                             std::span<const double> locations) {
    require_continuous(params, "sample_as");
    const double gamma = params.base.mass();
    require(n > gamma, "sample_as: requires n > gamma");
    require(arrivals.gammas.size() == static_cast<std::size_t>(n) + 1,
            "sample_as: arrivals must have n+1 entries");
    require(locations.size() == static_cast<std::size_t>(n),
            "sample_as: locations must have n entries");
    const detail::BetaTail tail(params.c * gamma / n, params.c * (1.0 - gamma / n));
    const double last = arrivals.gammas.back();
    std::vector<Atom> atoms(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double p = 1.0 - arrivals.gammas[static_cast<std::size_t>(i)] / last;
        atoms[static_cast<std::size_t>(i)] = {locations[static_cast<std::size_t>(i)],
                                              detail::beta_quantile_cached(p, tail)};
    }
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure sample_as(const BetaProcessParams& params, int n, RandomStream& stream) {
    const double gamma = params.base.mass();
    require(n > gamma, "sample_as: requires n > gamma");
    std::vector<double> locations(static_cast<std::size_t>(n));
    for (auto& loc : locations) loc = draw_location(params, stream);
    const ArrivalTimes arrivals = arrival_times(stream, n + 1);
    return sample_as_with(params, n, arrivals, locations);
}

AtomicMeasure sample_fk_with(const BetaProcessParams& params, const ArrivalTimes& arrivals,
                             std::span<const double> locations) {
    require_continuous(params, "sample_fk");
    require(!arrivals.gammas.empty(), "sample_fk: requires at least one jump");
    require(locations.size() == arrivals.gammas.size(),
            "sample_fk: locations must match arrivals");
    const LevyTailSpec spec(params.c, params.base.mass());
    std::vector<Atom> atoms(arrivals.gammas.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        atoms[i] = {locations[i], levy_tail_inverse(arrivals.gammas[i], spec)};
    }
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure sample_fk(const BetaProcessParams& params, int jumps, RandomStream& stream) {
    require(jumps >= 1, "sample_fk: requires jumps >= 1");
    const ArrivalTimes arrivals = arrival_times(stream, jumps);
    std::vector<double> locations(static_cast<std::size_t>(jumps));
    for (auto& loc : locations) loc = draw_location(params, stream);
    return sample_fk_with(params, arrivals, locations);
}

AtomicMeasure sample_stick(const BetaProcessParams& params, int rounds, RandomStream& stream) {
    require(rounds >= 1, "sample_stick: requires rounds >= 1");
    const double gamma = params.base.mass();
    std::vector<Atom> atoms;
    for (int round = 1; round <= rounds; ++round) {
        const long long count = stream.next_poisson(gamma);
        for (long long j = 0; j < count; ++j) {
            const double loc = draw_location(params, stream);
            // V^(round) * prod_{l<round} (1 - V^(l)), all fresh Beta(1,c).
            double weight = stream.next_beta(1.0, params.c);
            for (int l = 1; l < round; ++l) weight *= 1.0 - stream.next_beta(1.0, params.c);
            atoms.push_back({loc, weight});
        }
    }
    return AtomicMeasure(std::move(atoms));
}

double poisson_rep_increment(double prev_gamma, double gamma_i, double c) {
    return std::exp(-prev_gamma / c) - std::exp(-gamma_i / c);
}

AtomicMeasure sample_poisson_rep(const BetaProcessParams& params, int rounds, RandomStream& stream,
                                 PoissonRepVariant variant) {
    require(rounds >= 1, "sample_poisson_rep: requires rounds >= 1");
    const double gamma = params.base.mass();
    std::vector<Atom> atoms;
    for (int round = 1; round <= rounds; ++round) {
        const long long count = stream.next_poisson(gamma);
        for (long long j = 0; j < count; ++j) {
            const double loc = draw_location(params, stream);
            double weight;
            if (variant == PoissonRepVariant::eq5) {
                weight = stream.next_beta(1.0, params.c);
                if (round > 1) weight *= std::exp(-stream.next_gamma(round - 1.0, params.c));
            } else {
                double acc = 0.0;
                for (int l = 1; l < round; ++l) acc += stream.next_exponential();
                const double prev = acc;
                acc += stream.next_exponential();
                weight = poisson_rep_increment(prev, acc, params.c);
            }
            atoms.push_back({loc, weight});
        }
    }
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure sample_dls(const BetaProcessParams& params, std::span<const double> partition, int n,
                         RandomStream& stream) {
    require(partition.size() >= 2, "sample_dls: partition needs at least two endpoints");
    require(n >= 1, "sample_dls: requires n >= 1");
    for (std::size_t i = 1; i < partition.size(); ++i) {
        require(partition[i] > partition[i - 1], "sample_dls: partition must be increasing");
    }
    std::vector<Atom> atoms;
    atoms.reserve(partition.size() - 1);
    for (std::size_t i = 1; i < partition.size(); ++i) {
        const double lambda = params.base.cdf(partition[i]) - params.base.cdf(partition[i - 1]);
        double increment = 0.0;
        if (lambda > 0.0) {
            for (int j = 0; j < n; ++j) {
                const double x = stream.next_beta(1.0, params.c);
                const long long y = stream.next_poisson(lambda / (n * x));
                if (y > 0) increment += x * static_cast<double>(y);
            }
        }
        atoms.push_back({partition[i], increment});
    }
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure sample_lee_kim(const BetaProcessParams& params, double epsilon,
                             RandomStream& stream) {
    require(epsilon > 0.0 && epsilon < 1.0, "sample_lee_kim: requires epsilon in (0,1)");
    const double gamma = params.base.mass();
    const long long jumps = stream.next_poisson(params.c * gamma / epsilon);
    std::vector<double> locations(static_cast<std::size_t>(jumps));
    for (auto& loc : locations) loc = draw_location(params, stream);
    // Order statistics; distributionally redundant but kept as printed.
    std::sort(locations.begin(), locations.end());
    std::vector<Atom> atoms(locations.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        atoms[i] = {locations[i], stream.next_beta(epsilon, params.c)};
    }
    return AtomicMeasure(std::move(atoms));
}

double lee_poisson_rate(double x, double c, double gamma, int n, double epsilon) {
    // gamma * b(x:1,c) / (n x b(x:eps,c)) = gamma c B(eps,c) x^-eps / n.
    return std::exp(std::log(gamma) + std::log(c) + log_beta(epsilon, c) - epsilon * std::log(x) -
                    std::log(static_cast<double>(n)));
}

AtomicMeasure sample_lee(const BetaProcessParams& params, int n, double epsilon,
                         RandomStream& stream) {
    require(n >= 1, "sample_lee: requires n >= 1");
    require(epsilon > 0.0 && epsilon < 1.0, "sample_lee: requires epsilon in (0,1)");
    const double gamma = params.base.mass();
    // Step order as printed: all locations, then all jump sizes, then counts.
    std::vector<double> locations(static_cast<std::size_t>(n));
    for (auto& loc : locations) loc = draw_location(params, stream);
    std::vector<double> sizes(static_cast<std::size_t>(n));
    for (auto& x : sizes) x = stream.next_beta(epsilon, params.c);
    std::vector<Atom> atoms;
    for (int i = 0; i < n; ++i) {
        const double x = sizes[static_cast<std::size_t>(i)];
        if (x <= 0.0) continue;  // sub-denormal beta draw; the rate would overflow
        const long long y = stream.next_poisson(lee_poisson_rate(x, params.c, gamma, n, epsilon));
        if (y > 0) atoms.push_back({locations[static_cast<std::size_t>(i)],
                                    x * static_cast<double>(y)});
    }
    return AtomicMeasure(std::move(atoms));
}

AtomicMeasure sample_path(const BetaProcessParams& params, const SamplerSpec& spec,
                          RandomStream& stream) {
    spec.validate(params);
    switch (spec.algorithm) {
        case Algorithm::pc: return sample_pc(params, spec.n, stream);
        case Algorithm::as: return sample_as(params, spec.n, stream);
        case Algorithm::fk: return sample_fk(params, spec.jumps, stream);
        case Algorithm::stick: return sample_stick(params, spec.rounds, stream);
        case Algorithm::poisson_rep:
            return sample_poisson_rep(params, spec.rounds, stream, spec.variant);
        case Algorithm::dls: return sample_dls(params, spec.partition, spec.n, stream);
        case Algorithm::lee_kim: return sample_lee_kim(params, spec.epsilon, stream);
        case Algorithm::lee: return sample_lee(params, spec.n, spec.epsilon, stream);
    }
    throw std::invalid_argument("sample_path: unknown algorithm");
}

int default_rounds(double c, double gamma, double tol) {
    require(c > 0.0 && gamma > 0.0 && tol > 0.0, "default_rounds: parameters must be positive");
    const double r = std::log(tol / gamma) / std::log(c / (c + 1.0));
    return std::max(1, static_cast<int>(std::ceil(r)));
}

std::vector<double> equispaced_partition(double lo, double hi, int m) {
    require(m >= 1 && hi > lo, "equispaced_partition: need m >= 1 and hi > lo");
    std::vector<double> pts(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) pts[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / m;
    return pts;
}

}  // namespace bpsim
