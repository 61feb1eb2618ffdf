#pragma once

#include <span>

#include "bpsim/measures.hpp"
#include "bpsim/random.hpp"

namespace bpsim {

// One coin flip per atom; returns the locations that came up heads.
// Requires all weights in [0,1].
BernoulliDraw bep_draw(const AtomicMeasure& path, RandomStream& stream);

// Conjugate update: concentration c+m and the mixed base from mix_base.
// Pure parameter arithmetic; batching m1 then m2 draws equals one update
// with all m1+m2 draws, bit-exact.
BetaProcessParams posterior_update(const BetaProcessParams& prior,
                                   std::span<const BernoulliDraw> draws);

// Path draw from posterior parameters: the series construction applied to
// the scaled continuous component (requires n > its mass), plus one atom
// per observed location with weight ~ Beta(k, c+m-k). With no
// observations this reduces to sample_as on the prior.
AtomicMeasure sample_posterior(const BetaProcessParams& posterior, int n, RandomStream& stream);

// JSON form of posterior parameters: concentration plus the sufficient
// statistics of the mixed base (prior c, draw count, per-location
// counts). Loading takes the continuous prior base separately since a
// CDF cannot ride along in JSON.
nlohmann::json posterior_to_json(const BetaProcessParams& params);
BetaProcessParams posterior_from_json(const nlohmann::json& j, const BaseMeasure& prior_base);

}  // namespace bpsim
