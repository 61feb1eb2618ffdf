#include "bpsim/beta_bernoulli.hpp"

#include <stdexcept>

#include "bpsim/samplers.hpp"

namespace bpsim {

BernoulliDraw bep_draw(const AtomicMeasure& path, RandomStream& stream) {
    BernoulliDraw draw;
    for (const auto& atom : path.atoms()) {
        if (!(atom.weight >= 0.0) || !(atom.weight <= 1.0))
            throw std::domain_error("bep_draw: atom weight outside [0,1]");
        if (atom.weight == 0.0) continue;
        if (atom.weight == 1.0 || stream.next_uniform() < atom.weight)
            draw.locations.push_back(atom.location);
    }
    return draw;
}

BetaProcessParams posterior_update(const BetaProcessParams& prior,
                                   std::span<const BernoulliDraw> draws) {
    BaseMeasure mixed = mix_base(prior, draws);
    const double c0 = mixed.mixed() ? mixed.prior_concentration() : prior.c;
    return BetaProcessParams(c0 + mixed.observations(), std::move(mixed));
}

AtomicMeasure sample_posterior(const BetaProcessParams& posterior, int n, RandomStream& stream) {
    if (!posterior.base.mixed()) return sample_as(posterior, n, stream);

    const BetaProcessParams continuous_part(posterior.c, posterior.base.continuous_component());
    AtomicMeasure series = sample_as(continuous_part, n, stream);

    std::vector<Atom> atoms = series.atoms();
    atoms.reserve(atoms.size() + posterior.base.fixed_atoms().size());
    for (const auto& fixed : posterior.base.fixed_atoms()) {
        // base mass q = k/(c+m) gives shapes (c* q, c* (1-q)) = (k, c+m-k).
        const double a = static_cast<double>(fixed.count);
        const double b = posterior.c - fixed.count;
        if (!(b > 0.0)) throw std::domain_error("sample_posterior: atom base mass >= 1");
        atoms.push_back({fixed.location, stream.next_beta(a, b)});
    }
    return AtomicMeasure(std::move(atoms));
}

nlohmann::json posterior_to_json(const BetaProcessParams& params) {
    nlohmann::json j{{"c", params.c}, {"base", params.base.to_json()}};
    return j;
}

BetaProcessParams posterior_from_json(const nlohmann::json& j, const BaseMeasure& prior_base) {
    const auto& base = j.at("base");
    const int m = base.value("observations", 0);
    if (m == 0) return BetaProcessParams(j.at("c").get<double>(), prior_base);
    const double prior_c = base.at("prior_concentration").get<double>();
    // Rebuild the mixed base by replaying the counts as draws.
    std::vector<BernoulliDraw> draws(static_cast<std::size_t>(m));
    std::size_t next = 0;
    for (const auto& atom : base.at("atoms")) {
        const double loc = atom.at("loc").get<double>();
        const int count = atom.at("count").get<int>();
        for (int k = 0; k < count; ++k) {
            draws[next % draws.size()].locations.push_back(loc);
            ++next;
        }
    }
    return posterior_update(BetaProcessParams(prior_c, prior_base), draws);
}

}  // namespace bpsim
