#include "bpsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace bpsim {

double AtomicMeasure::value_at(double x) const {
    double sum = 0.0;
    for (const auto& a : atoms_) {
        if (a.location <= x) sum += a.weight;
    }
    return sum;
}

double AtomicMeasure::total_mass() const {
    double sum = 0.0;
    for (const auto& a : atoms_) sum += a.weight;
    return sum;
}

nlohmann::json AtomicMeasure::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& a : atoms_) {
        if (a.weight == 0.0) continue;
        arr.push_back({{"loc", a.location}, {"w", a.weight}});
    }
    return nlohmann::json{{"atoms", std::move(arr)}};
}

AtomicMeasure AtomicMeasure::from_json(const nlohmann::json& j) {
    std::vector<Atom> atoms;
    for (const auto& item : j.at("atoms")) {
        atoms.push_back({item.at("loc").get<double>(), item.at("w").get<double>()});
    }
    return AtomicMeasure(std::move(atoms));
}

void AtomicMeasure::write_csv(std::ostream& os) const {
    os << "loc,w\n";
    char buf[64];
    for (const auto& a : atoms_) {
        if (a.weight == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a.location, a.weight);
        os << buf;
    }
}

std::size_t count_zero_weight(const AtomicMeasure& path) {
    std::size_t n = 0;
    for (const auto& a : path.atoms()) {
        if (a.weight == 0.0) ++n;
    }
    return n;
}

nlohmann::json to_json(const BernoulliDraw& draw) { return nlohmann::json(draw.locations); }

BaseMeasure BaseMeasure::uniform01() {
    return continuous(
        1.0, [](double x) { return std::clamp(x, 0.0, 1.0); }, [](double u) { return u; });
}

BaseMeasure BaseMeasure::continuous(double mass, std::function<double(double)> cdf01,
                                    std::function<double(double)> quantile01) {
    if (!(mass > 0.0)) throw std::invalid_argument("BaseMeasure: mass must be positive");
    BaseMeasure m;
    m.cont_mass01_ = mass;
    m.cdf01_ = std::move(cdf01);
    m.quantile01_ = std::move(quantile01);
    return m;
}

BaseMeasure BaseMeasure::piecewise_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("piecewise_linear: need at least two points");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i].first > points[i - 1].first))
            throw std::invalid_argument("piecewise_linear: x values must be strictly increasing");
        if (points[i].second < points[i - 1].second)
            throw std::invalid_argument("piecewise_linear: cumulative values must not decrease");
    }
    if (!(points.front().second == 0.0))
        throw std::invalid_argument("piecewise_linear: first cumulative value must be 0");
    const double total = points.back().second;
    if (!(total > 0.0)) throw std::invalid_argument("piecewise_linear: total mass must be positive");

    auto pts = points;
    auto cdf01 = [pts, total](double x) {
        if (x <= pts.front().first) return 0.0;
        if (x >= pts.back().first) return 1.0;
        auto it = std::upper_bound(pts.begin(), pts.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double frac = (x - lo.first) / (hi.first - lo.first);
        return (lo.second + frac * (hi.second - lo.second)) / total;
    };
    auto quantile01 = [pts, total](double u) {
        const double target = std::clamp(u, 0.0, 1.0) * total;
        auto it = std::lower_bound(pts.begin(), pts.end(), target,
                                   [](const auto& p, double v) { return p.second < v; });
        if (it == pts.begin()) return pts.front().first;
        if (it == pts.end()) return pts.back().first;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        if (hi.second == lo.second) return lo.first;
        const double frac = (target - lo.second) / (hi.second - lo.second);
        return lo.first + frac * (hi.first - lo.first);
    };
    return continuous(total, std::move(cdf01), std::move(quantile01));
}

double BaseMeasure::mass() const {
    if (!mixed()) return cont_mass01_;
    double count_sum = 0.0;
    for (const auto& a : fixed_atoms_) count_sum += a.count;
    return (prior_c_ * cont_mass01_ + count_sum) / (prior_c_ + observations_);
}

double BaseMeasure::continuous_mass() const {
    if (!mixed()) return cont_mass01_;
    return prior_c_ / (prior_c_ + observations_) * cont_mass01_;
}

double BaseMeasure::cdf(double x) const {
    double v = continuous_mass() * cdf01_(x);
    for (const auto& a : fixed_atoms_) {
        if (a.location <= x) v += a.mass;
    }
    return v;
}

double BaseMeasure::continuous_quantile01(double u) const { return quantile01_(u); }

BaseMeasure BaseMeasure::continuous_component() const {
    if (!mixed()) return *this;
    return continuous(continuous_mass(), cdf01_, quantile01_);
}

nlohmann::json BaseMeasure::to_json() const {
    nlohmann::json j{{"total_mass", mass()}, {"continuous_mass", continuous_mass()}};
    if (mixed()) {
        j["prior_concentration"] = prior_c_;
        j["observations"] = observations_;
        nlohmann::json atoms = nlohmann::json::array();
        for (const auto& a : fixed_atoms_) {
            atoms.push_back({{"loc", a.location}, {"mass", a.mass}, {"count", a.count}});
        }
        j["atoms"] = std::move(atoms);
    }
    return j;
}

BetaProcessParams::BetaProcessParams(double c_, BaseMeasure base_) : c(c_), base(std::move(base_)) {
    if (!(c > 0.0)) throw std::invalid_argument("BetaProcessParams: c must be positive");
    if (!(base.mass() > 0.0)) throw std::invalid_argument("BetaProcessParams: base mass must be positive");
}

BaseMeasure base_uniform01() { return BaseMeasure::uniform01(); }

BaseMeasure mix_base_impl(const BaseMeasure& base, double prior_c,
                          std::span<const BernoulliDraw> draws) {
    // Locations are grouped by exact equality: Bernoulli draws reuse the
    // atom locations of the sampled path bit-for-bit.
    std::map<double, int> counts;
    for (const auto& a : base.fixed_atoms_) counts[a.location] = a.count;
    int m = base.observations_;
    for (const auto& d : draws) {
        ++m;
        for (double loc : d.locations) ++counts[loc];
    }

    BaseMeasure out;
    out.cont_mass01_ = base.cont_mass01_;
    out.cdf01_ = base.cdf01_;
    out.quantile01_ = base.quantile01_;
    out.prior_c_ = base.mixed() ? base.prior_c_ : prior_c;
    out.observations_ = m;
    if (m == 0) return out;
    const double denom = out.prior_c_ + m;
    out.fixed_atoms_.reserve(counts.size());
    for (const auto& [loc, k] : counts) {
        out.fixed_atoms_.push_back({loc, k, k / denom});
    }
    return out;
}

BaseMeasure mix_base(const BetaProcessParams& prior, std::span<const BernoulliDraw> draws) {
    const double prior_c = prior.base.mixed() ? prior.base.prior_concentration() : prior.c;
    return mix_base_impl(prior.base, prior_c, draws);
}

}  // namespace bpsim
