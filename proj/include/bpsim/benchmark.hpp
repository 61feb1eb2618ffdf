#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bpsim/measures.hpp"
#include "bpsim/samplers.hpp"

namespace bpsim {

struct BenchEntry {
    std::string id;  // row label and substream salt
    SamplerSpec spec;
};

struct BenchConfig {
    double c = 2.0;
    BaseMeasure base = BaseMeasure::uniform01();
    std::vector<double> grid = default_grid();  // 0.1, 0.2, ..., 1.0
    int paths = 3000;
    std::uint64_t master_seed = kDefaultSeed;
    int workers = 1;
    std::vector<BenchEntry> algorithms = default_algorithms();

    static constexpr std::uint64_t kDefaultSeed = 42;
    static std::vector<double> default_grid();
    // The five standard entries: dls m=n=200, leekim eps=0.01,
    // lee n=200 eps=0.05, pc n=200, as n=200.
    static std::vector<BenchEntry> default_algorithms();

    void validate() const;
};

// Per-grid-point sample mean and sample s.d. (denominator M-1) of B(x)
// over cfg.paths independent paths, path r drawn from
// derive_substream(algorithm seed, r). sd_defined is false when paths < 2
// (sd reported as 0).
struct GridMoments {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> sd;
    bool sd_defined = true;
};

using PathSampler = std::function<AtomicMeasure(RandomStream&)>;

GridMoments empirical_moments(const PathSampler& sampler, const BenchConfig& cfg,
                              std::uint64_t algorithm_seed);
GridMoments empirical_moments(const SamplerSpec& spec, const BenchConfig& cfg,
                              const std::string& algorithm_id);

// max over the grid of |mean - B0(x)| and |sd - sqrt(B0(x)/(c+1))|.
double max_mean_error(const GridMoments& moments, const BaseMeasure& base);
double max_sd_error(const GridMoments& moments, double c, const BaseMeasure& base);

// Exact variance of the finite-dimensional construction at resolution n:
// Var = B0(x) (1 + c*gamma/n)/(c+1) - B0(x)^2/n.
double pc_variance(double c, double gamma, int n, double b0x);

struct BenchRow {
    std::string algorithm;
    std::string params;
    double max_mean_error = 0.0;
    double max_sd_error = 0.0;
    double wall_time_s = 0.0;
    bool ok = true;
    std::string error;  // set when the algorithm failed; run continues
    GridMoments moments;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    std::string to_csv() const;  // algorithm,params,max_mean_error,max_sd_error,wall_time_s
    std::string to_markdown() const;
    nlohmann::json to_json() const;
    bool all_ok() const;
    // Plot-ready curves: algorithm,x,mean,sd rows across all ok rows.
    std::string moments_csv() const;
};

// One row per configured algorithm; error columns deterministic in
// master_seed, wall time measured around generation + evaluation.
BenchReport run_benchmark(const BenchConfig& cfg);

}  // namespace bpsim
