#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpsim/benchmark.hpp"
#include "bpsim/beta_bernoulli.hpp"
#include "bpsim/measures.hpp"
#include "bpsim/samplers.hpp"
#include "bpsim/special_fn.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

bpsim::BaseMeasure load_base(const std::string& cdf_file, double mass = 1.0) {
    if (cdf_file.empty()) {
        if (mass == 1.0) return bpsim::BaseMeasure::uniform01();
        // uniform shape on [0,1] scaled to total mass.
        return bpsim::BaseMeasure::continuous(
            mass, [](double x) { return std::clamp(x, 0.0, 1.0); }, [](double u) { return u; });
    }
    std::ifstream in(cdf_file);
    if (!in) throw std::invalid_argument("cannot open base CDF file: " + cdf_file);
    std::vector<std::pair<double, double>> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0;
        double cum = 0.0;
        if (row >> x >> cum) points.emplace_back(x, cum);
    }
    return bpsim::BaseMeasure::piecewise_linear(points);
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << payload;
}

struct SampleOptions {
    std::string alg = "as";
    double c = 2.0;
    double mass = 1.0;
    int n = 0;
    int rounds = 0;
    int jumps = 0;
    double eps = 0.0;
    int partitions = 0;
    int paths = 1;
    std::uint64_t seed = bpsim::BenchConfig::kDefaultSeed;
    std::string out;
    std::string format = "json";
    std::string base_cdf;
};

bpsim::SamplerSpec build_spec(const SampleOptions& opt, const bpsim::BaseMeasure& base) {
    bpsim::SamplerSpec spec;
    spec.algorithm = bpsim::algorithm_from_id(opt.alg);
    if (opt.alg == "prep6") spec.variant = bpsim::PoissonRepVariant::eq6;
    spec.n = opt.n;
    spec.jumps = opt.jumps;
    spec.epsilon = opt.eps;
    spec.rounds = opt.rounds;
    if ((spec.algorithm == bpsim::Algorithm::stick ||
         spec.algorithm == bpsim::Algorithm::poisson_rep) &&
        spec.rounds == 0) {
        spec.rounds = bpsim::default_rounds(opt.c, base.mass());
    }
    if (spec.algorithm == bpsim::Algorithm::dls) {
        if (opt.partitions < 1) throw std::invalid_argument("dls requires --partitions >= 1");
        spec.partition = bpsim::equispaced_partition(base.continuous_quantile01(0.0),
                                                     base.continuous_quantile01(1.0),
                                                     opt.partitions);
    }
    return spec;
}

int cmd_sample(const SampleOptions& opt) {
    if (opt.paths < 1) throw std::invalid_argument("--paths must be >= 1");
    const bpsim::BaseMeasure base = load_base(opt.base_cdf, opt.mass);
    const bpsim::BetaProcessParams params(opt.c, base);
    const bpsim::SamplerSpec spec = build_spec(opt, base);
    spec.validate(params);

    std::vector<bpsim::AtomicMeasure> paths;
    paths.reserve(static_cast<std::size_t>(opt.paths));
    for (int r = 0; r < opt.paths; ++r) {
        bpsim::RandomStream stream =
            bpsim::derive_substream(opt.seed, static_cast<std::uint64_t>(r));
        paths.push_back(bpsim::sample_path(params, spec, stream));
    }

    if (opt.format == "csv") {
        if (opt.paths != 1)
            throw std::invalid_argument("csv output supports a single path; use json for --paths > 1");
        std::ostringstream os;
        paths.front().write_csv(os);
        write_output(opt.out, os.str());
    } else {
        nlohmann::json j;
        if (opt.paths == 1) {
            j = paths.front().to_json();
        } else {
            j = nlohmann::json::array();
            for (const auto& p : paths) j.push_back(p.to_json());
        }
        write_output(opt.out, j.dump(2));
    }
    return kExitOk;
}

struct BenchOptions {
    double c = 2.0;
    int paths = 3000;
    std::uint64_t seed = bpsim::BenchConfig::kDefaultSeed;
    int workers = 1;
    std::vector<double> grid;
    std::vector<std::string> algs;
    std::string out;
    std::string moments_out;
    std::string format = "csv";
    std::string base_cdf;
};

int cmd_bench(const BenchOptions& opt) {
    bpsim::BenchConfig cfg;
    cfg.c = opt.c;
    cfg.base = load_base(opt.base_cdf);
    cfg.paths = opt.paths;
    cfg.master_seed = opt.seed;
    cfg.workers = opt.workers;
    if (!opt.grid.empty()) cfg.grid = opt.grid;
    if (!opt.algs.empty()) {
        std::vector<bpsim::BenchEntry> subset;
        for (const auto& id : opt.algs) {
            bool found = false;
            for (const auto& entry : cfg.algorithms) {
                if (entry.id == id) {
                    subset.push_back(entry);
                    found = true;
                    break;
                }
            }
            if (!found) throw std::invalid_argument("unknown benchmark algorithm: " + id);
        }
        cfg.algorithms = std::move(subset);
    }

    const bpsim::BenchReport report = bpsim::run_benchmark(cfg);
    if (!opt.moments_out.empty()) write_output(opt.moments_out, report.moments_csv());
    std::string payload;
    if (opt.format == "json") {
        payload = report.to_json().dump(2);
    } else if (opt.format == "md") {
        payload = report.to_markdown();
    } else {
        payload = report.to_csv();
    }
    write_output(opt.out, payload);
    return report.all_ok() ? kExitOk : kExitFailure;
}

struct PosteriorOptions {
    double c = 2.0;
    double mass = 1.0;
    int m = 1;
    int n = 200;
    std::uint64_t seed = bpsim::BenchConfig::kDefaultSeed;
    std::string out;
    std::string base_cdf;
};

int cmd_posterior_demo(const PosteriorOptions& opt) {
    const bpsim::BaseMeasure base = load_base(opt.base_cdf, opt.mass);
    const bpsim::BetaProcessParams prior(opt.c, base);

    bpsim::RandomStream stream = bpsim::make_stream(opt.seed);
    const bpsim::AtomicMeasure prior_path = bpsim::sample_as(prior, opt.n, stream);
    std::vector<bpsim::BernoulliDraw> draws;
    draws.reserve(static_cast<std::size_t>(opt.m));
    for (int i = 0; i < opt.m; ++i) draws.push_back(bpsim::bep_draw(prior_path, stream));

    const bpsim::BetaProcessParams posterior = bpsim::posterior_update(prior, draws);
    const bpsim::AtomicMeasure posterior_path =
        bpsim::sample_posterior(posterior, opt.n, stream);

    double observed = 0.0;
    for (const auto& d : draws) observed += static_cast<double>(d.locations.size());
    const double lhs = (prior.c + opt.m) * posterior.base.mass();
    const double rhs = prior.c * base.mass() + observed;

    std::printf("prior:      c = %g, base mass = %g\n", prior.c, base.mass());
    std::printf("observed:   m = %d draws, %g total locations\n", opt.m, observed);
    std::printf("posterior:  c* = %g, base mass = %.12g\n", posterior.c, posterior.base.mass());
    std::printf("mass identity: (c+m)*mass = %.12g vs c*gamma + sum|X_i| = %.12g\n", lhs, rhs);
    if (!posterior.base.fixed_atoms().empty()) {
        std::printf("fixed atoms (location, count, mass):\n");
        for (const auto& a : posterior.base.fixed_atoms()) {
            std::printf("  %.6f  %d  %.6f\n", a.location, a.count, a.mass);
        }
    }

    nlohmann::json j{{"c", prior.c},
                     {"m", opt.m},
                     {"c_star", posterior.c},
                     {"posterior", bpsim::posterior_to_json(posterior)},
                     {"posterior_base", posterior.base.to_json()},
                     {"posterior_path", posterior_path.to_json()}};
    nlohmann::json obs = nlohmann::json::array();
    for (const auto& d : draws) obs.push_back(bpsim::to_json(d));
    j["observations"] = std::move(obs);
    if (!opt.out.empty()) write_output(opt.out, j.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta process sampling, conjugate updates, and moment benchmarks"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI file with option defaults; flags override it");

    SampleOptions sopt;
    auto* sample = app.add_subcommand("sample", "draw paths and write them to JSON/CSV");
    sample->fallthrough();
    sample->add_option("--alg", sopt.alg, "pc|as|fk|stick|prep5|prep6|dls|leekim|lee")->required();
    sample->add_option("--c", sopt.c, "concentration");
    sample->add_option("--mass", sopt.mass, "base mass (uniform base only)");
    sample->add_option("--n", sopt.n, "resolution (pc, as, dls, lee)");
    sample->add_option("--rounds", sopt.rounds, "rounds (stick, prep5, prep6); 0 = auto");
    sample->add_option("--jumps", sopt.jumps, "jump count (fk)");
    sample->add_option("--eps", sopt.eps, "epsilon (leekim, lee)");
    sample->add_option("--partitions", sopt.partitions, "equispaced interval count (dls)");
    sample->add_option("--paths", sopt.paths, "number of paths to draw");
    sample->add_option("--seed", sopt.seed, "master seed")->envname("BPSIM_SEED");
    sample->add_option("--out", sopt.out, "output file (default stdout)");
    sample->add_option("--format", sopt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sample->add_option("--base-cdf", sopt.base_cdf, "two-column CSV of a piecewise-linear CDF");

    BenchOptions bopt;
    auto* bench = app.add_subcommand("bench", "run the error-metric comparison");
    bench->fallthrough();
    bench->add_option("--c", bopt.c, "concentration");
    bench->add_option("--paths", bopt.paths, "sample paths per algorithm");
    bench->add_option("--seed", bopt.seed, "master seed")->envname("BPSIM_SEED");
    bench->add_option("--workers", bopt.workers, "parallel workers (deterministic reduction)");
    bench->add_option("--grid", bopt.grid, "evaluation grid")->delimiter(',');
    bench->add_option("--algs", bopt.algs, "subset of dls,leekim,lee,pc,as")->delimiter(',');
    bench->add_option("--out", bopt.out, "output file (default stdout)");
    bench->add_option("--moments-out", bopt.moments_out, "write per-grid-point moment curves CSV");
    bench->add_option("--format", bopt.format, "csv|json|md")
        ->check(CLI::IsMember({"csv", "json", "md"}));
    bench->add_option("--base-cdf", bopt.base_cdf, "two-column CSV of a piecewise-linear CDF");

    PosteriorOptions popt;
    auto* post = app.add_subcommand("posterior-demo", "prior path, m observations, posterior");
    post->fallthrough();
    post->add_option("--c", popt.c, "concentration");
    post->add_option("--mass", popt.mass, "base mass (uniform base only)");
    post->add_option("--m", popt.m, "number of observations")->check(CLI::NonNegativeNumber);
    post->add_option("--n", popt.n, "series resolution");
    post->add_option("--seed", popt.seed, "master seed")->envname("BPSIM_SEED");
    post->add_option("--out", popt.out, "JSON output file");
    post->add_option("--base-cdf", popt.base_cdf, "two-column CSV of a piecewise-linear CDF");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sample->parsed()) return cmd_sample(sopt);
        if (bench->parsed()) return cmd_bench(bopt);
        if (post->parsed()) return cmd_posterior_demo(popt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
