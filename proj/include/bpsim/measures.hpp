#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bpsim {

struct Atom {
    double location;
    double weight;
};

// A sampled path: finite list of weighted atoms. Immutable after
// construction; safe to share across threads.
class AtomicMeasure {
  public:
    AtomicMeasure() = default;
    explicit AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }

    // B(x) = sum of weights at locations <= x; nondecreasing step function.
    double value_at(double x) const;
    double total_mass() const;

    // Serialized forms drop zero-weight atoms; count_zero_weight reports
    // how many a path carries.
    nlohmann::json to_json() const;
    static AtomicMeasure from_json(const nlohmann::json& j);
    void write_csv(std::ostream& os) const;  // header "loc,w"

  private:
    std::vector<Atom> atoms_;
};

std::size_t count_zero_weight(const AtomicMeasure& path);

// One Bernoulli-process realization: the set of locations whose coins
// came up heads. Serializes as a JSON array of locations.
struct BernoulliDraw {
    std::vector<double> locations;
};

nlohmann::json to_json(const BernoulliDraw& draw);

// Finite measure on the real line. Continuous kind: total mass gamma with
// a normalized CDF/quantile pair. Mixed kind (posterior case): the prior
// continuous measure scaled by c/(c+m) plus one fixed atom per distinct
// observed location with mass k/(c+m). The mixed kind keeps the exact
// sufficient statistics (prior c, draw count m, per-location counts) so
// repeated posterior updates stay bit-exact under batching.
class BaseMeasure {
  public:
    struct FixedAtom {
        double location;
        int count;   // draws containing this location
        double mass; // count / (prior_c + observations)
    };

    static BaseMeasure uniform01();
    static BaseMeasure continuous(double mass, std::function<double(double)> cdf01,
                                  std::function<double(double)> quantile01);
    // Piecewise-linear CDF through (x, cumulative mass) points; the last
    // cumulative value is the total mass.
    static BaseMeasure piecewise_linear(const std::vector<std::pair<double, double>>& points);

    double mass() const;
    double continuous_mass() const;
    double cdf(double x) const;  // in [0, mass]
    // Inverse of the normalized continuous CDF; location sampler.
    double continuous_quantile01(double u) const;

    bool mixed() const { return observations_ > 0; }
    const std::vector<FixedAtom>& fixed_atoms() const { return fixed_atoms_; }
    int observations() const { return observations_; }
    double prior_concentration() const { return prior_c_; }

    // The scaled continuous part of a mixed measure, as a continuous
    // measure of mass c*gamma0/(c+m).
    BaseMeasure continuous_component() const;

    nlohmann::json to_json() const;

    friend BaseMeasure mix_base_impl(const BaseMeasure& base, double prior_c,
                                     std::span<const BernoulliDraw> draws);

  private:
    BaseMeasure() = default;

    double cont_mass01_ = 0.0;  // mass of the underlying continuous measure
    std::function<double(double)> cdf01_;
    std::function<double(double)> quantile01_;

    // Mixed-kind bookkeeping.
    double prior_c_ = 0.0;
    int observations_ = 0;
    std::vector<FixedAtom> fixed_atoms_;  // sorted by location
};

// Prior (or posterior) parameters of the process: concentration and base.
struct BetaProcessParams {
    double c;
    BaseMeasure base;

    BetaProcessParams(double c_, BaseMeasure base_);
};

BaseMeasure base_uniform01();

// Conjugate mix: continuous part scaled by c/(c+m), one
// atom per distinct observed location with mass k/(c+m). Accepts a mixed
// prior base so batched updates merge counts exactly.
BaseMeasure mix_base(const BetaProcessParams& prior, std::span<const BernoulliDraw> draws);

}  // namespace bpsim
