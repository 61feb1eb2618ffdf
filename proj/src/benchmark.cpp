#include "bpsim/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace bpsim {

std::vector<double> BenchConfig::default_grid() {
    std::vector<double> g(10);
    for (int i = 1; i <= 10; ++i) g[static_cast<std::size_t>(i) - 1] = i / 10.0;
    return g;
}

std::vector<BenchEntry> BenchConfig::default_algorithms() {
    std::vector<BenchEntry> algs;
    {
        SamplerSpec s;
        s.algorithm = Algorithm::dls;
        s.partition = equispaced_partition(0.0, 1.0, 200);
        s.n = 200;
        algs.push_back({"dls", std::move(s)});
    }
    {
        SamplerSpec s;
        s.algorithm = Algorithm::lee_kim;
        s.epsilon = 0.01;
        algs.push_back({"leekim", std::move(s)});
    }
    {
        SamplerSpec s;
        s.algorithm = Algorithm::lee;
        s.n = 200;
        s.epsilon = 0.05;
        algs.push_back({"lee", std::move(s)});
    }
    {
        SamplerSpec s;
        s.algorithm = Algorithm::pc;
        s.n = 200;
        algs.push_back({"pc", std::move(s)});
    }
    {
        SamplerSpec s;
        s.algorithm = Algorithm::as;
        s.n = 200;
        algs.push_back({"as", std::move(s)});
    }
    return algs;
}

void BenchConfig::validate() const {
    if (grid.empty()) throw std::invalid_argument("BenchConfig: grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("BenchConfig: grid must be strictly increasing");
    }
    if (paths < 1) throw std::invalid_argument("BenchConfig: paths must be >= 1");
    if (workers < 1) throw std::invalid_argument("BenchConfig: workers must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("BenchConfig: c must be positive");
}

GridMoments empirical_moments(const PathSampler& sampler, const BenchConfig& cfg,
                              std::uint64_t algorithm_seed) {
    cfg.validate();
    const std::size_t g = cfg.grid.size();
    const std::size_t m = static_cast<std::size_t>(cfg.paths);

    // Per-replication values keyed by index: the reduction below is
    // deterministic no matter how the workers interleave.
    std::vector<double> values(m * g);
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            RandomStream stream = derive_substream(algorithm_seed, r);
            const AtomicMeasure path = sampler(stream);
            for (std::size_t j = 0; j < g; ++j) values[r * g + j] = path.value_at(cfg.grid[j]);
        }
    };

    const int workers = std::min<int>(cfg.workers, static_cast<int>(m));
    if (workers <= 1) {
        run_range(0, m);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const std::size_t chunk = (m + static_cast<std::size_t>(workers) - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = static_cast<std::size_t>(w) * chunk;
            const std::size_t hi = std::min(m, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }

    GridMoments out;
    out.grid = cfg.grid;
    out.mean.assign(g, 0.0);
    out.sd.assign(g, 0.0);
    for (std::size_t j = 0; j < g; ++j) {
        double sum = 0.0;
        for (std::size_t r = 0; r < m; ++r) sum += values[r * g + j];
        out.mean[j] = sum / static_cast<double>(m);
    }
    if (m < 2) {
        out.sd_defined = false;
        return out;
    }
    for (std::size_t j = 0; j < g; ++j) {
        double ss = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double d = values[r * g + j] - out.mean[j];
            ss += d * d;
        }
        out.sd[j] = std::sqrt(ss / static_cast<double>(m - 1));
    }
    return out;
}

GridMoments empirical_moments(const SamplerSpec& spec, const BenchConfig& cfg,
                              const std::string& algorithm_id) {
    const BetaProcessParams params(cfg.c, cfg.base);
    spec.validate(params);
    const std::uint64_t seed = mix_seed(cfg.master_seed, label_salt(algorithm_id.c_str()));
    return empirical_moments(
        [&params, &spec](RandomStream& stream) { return sample_path(params, spec, stream); }, cfg,
        seed);
}

double max_mean_error(const GridMoments& moments, const BaseMeasure& base) {
    double worst = 0.0;
    for (std::size_t j = 0; j < moments.grid.size(); ++j) {
        worst = std::max(worst, std::fabs(moments.mean[j] - base.cdf(moments.grid[j])));
    }
    return worst;
}

double max_sd_error(const GridMoments& moments, double c, const BaseMeasure& base) {
    double worst = 0.0;
    for (std::size_t j = 0; j < moments.grid.size(); ++j) {
        const double exact = std::sqrt(base.cdf(moments.grid[j]) / (c + 1.0));
        worst = std::max(worst, std::fabs(moments.sd[j] - exact));
    }
    return worst;
}

double pc_variance(double c, double gamma, int n, double b0x) {
    return b0x * (1.0 + c * gamma / n) / (c + 1.0) - b0x * b0x / n;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    return s;
}

}  // namespace

std::string BenchReport::to_csv() const {
    std::string out = "algorithm,params,max_mean_error,max_sd_error,wall_time_s\n";
    for (const auto& row : rows) {
        if (row.ok) {
            out += row.algorithm + "," + row.params + "," + format_double(row.max_mean_error) +
                   "," + format_double(row.max_sd_error) + "," + format_double(row.wall_time_s) +
                   "\n";
        } else {
            out += row.algorithm + "," + row.params + ",error,error," + csv_safe(row.error) + "\n";
        }
    }
    return out;
}

std::string BenchReport::to_markdown() const {
    std::string out =
        "| Algorithm | Parameters | max. mean error | max. s.d. error | Time (s) |\n"
        "|---|---|---|---|---|\n";
    char buf[128];
    for (const auto& row : rows) {
        if (row.ok) {
            std::snprintf(buf, sizeof buf, "| %s | %s | %.4f | %.4f | %.2f |\n",
                          row.algorithm.c_str(), row.params.c_str(), row.max_mean_error,
                          row.max_sd_error, row.wall_time_s);
            out += buf;
        } else {
            out += "| " + row.algorithm + " | " + row.params + " | error | error | " + row.error +
                   " |\n";
        }
    }
    return out;
}

nlohmann::json BenchReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j{{"algorithm", row.algorithm},
                         {"params", row.params},
                         {"wall_time_s", row.wall_time_s},
                         {"ok", row.ok}};
        if (row.ok) {
            j["max_mean_error"] = row.max_mean_error;
            j["max_sd_error"] = row.max_sd_error;
        } else {
            j["error"] = row.error;
        }
        arr.push_back(std::move(j));
    }
    return nlohmann::json{{"rows", std::move(arr)}};
}

bool BenchReport::all_ok() const {
    for (const auto& row : rows) {
        if (!row.ok) return false;
    }
    return true;
}

std::string BenchReport::moments_csv() const {
    std::string out = "algorithm,x,mean,sd\n";
    for (const auto& row : rows) {
        if (!row.ok) continue;
        for (std::size_t j = 0; j < row.moments.grid.size(); ++j) {
            out += row.algorithm + "," + format_double(row.moments.grid[j]) + "," +
                   format_double(row.moments.mean[j]) + "," + format_double(row.moments.sd[j]) +
                   "\n";
        }
    }
    return out;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    BenchReport report;
    report.rows.reserve(cfg.algorithms.size());
    for (const auto& entry : cfg.algorithms) {
        BenchRow row;
        row.algorithm = entry.id;
        row.params = entry.spec.params_string();
        const auto t0 = std::chrono::steady_clock::now();
        try {
            row.moments = empirical_moments(entry.spec, cfg, entry.id);
            row.max_mean_error = max_mean_error(row.moments, cfg.base);
            row.max_sd_error = max_sd_error(row.moments, cfg.c, cfg.base);
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        row.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace bpsim
