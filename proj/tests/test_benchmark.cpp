#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bpsim/benchmark.hpp"

using namespace bpsim;

TEST_CASE("moments of a deterministic stub sampler") {
    BenchConfig cfg;
    cfg.paths = 25;
    const PathSampler stub = [](RandomStream&) { return AtomicMeasure({{0.5, 0.5}}); };
    const GridMoments m = empirical_moments(stub, cfg, 1);
    CHECK(m.sd_defined);
    CHECK(m.mean.back() == 0.5);   // at x = 1.0
    CHECK(m.sd.back() == 0.0);
    CHECK(m.mean.front() == 0.0);  // at x = 0.1 < 0.5
}

TEST_CASE("single-path moments flag the undefined sd") {
    BenchConfig cfg;
    cfg.paths = 1;
    const PathSampler stub = [](RandomStream&) { return AtomicMeasure({{0.5, 0.5}}); };
    const GridMoments m = empirical_moments(stub, cfg, 1);
    CHECK(!m.sd_defined);
    for (double sd : m.sd) CHECK(sd == 0.0);
}

TEST_CASE("error reductions on injected moments") {
    const BaseMeasure base = BaseMeasure::uniform01();
    GridMoments exact;
    exact.grid = BenchConfig::default_grid();
    for (double x : exact.grid) {
        exact.mean.push_back(x);
        exact.sd.push_back(std::sqrt(x / 3.0));
    }
    CHECK(max_mean_error(exact, base) == 0.0);
    CHECK(max_sd_error(exact, 2.0, base) == 0.0);

    GridMoments shifted = exact;
    for (auto& v : shifted.mean) v += 0.01;
    CHECK(max_mean_error(shifted, base) == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("max errors are invariant to grid permutation") {
    const BaseMeasure base = BaseMeasure::uniform01();
    GridMoments m;
    m.grid = {0.1, 0.4, 0.8};
    m.mean = {0.12, 0.41, 0.77};
    m.sd = {0.2, 0.37, 0.51};
    GridMoments permuted;
    permuted.grid = {0.8, 0.1, 0.4};
    permuted.mean = {0.77, 0.12, 0.41};
    permuted.sd = {0.51, 0.2, 0.37};
    CHECK(max_mean_error(m, base) == max_mean_error(permuted, base));
    CHECK(max_sd_error(m, 2.0, base) == max_sd_error(permuted, 2.0, base));
}

TEST_CASE("pc_variance agrees with the expanded form") {
    // x*(gamma(1-gamma/n)/(c+1) + gamma^2/n) - gamma^2 x^2 / n at gamma=1.
    const double c = 2.0;
    const int n = 200;
    for (double x = 0.1; x <= 1.0; x += 0.1) {
        const double expanded = x * ((1.0 - 1.0 / n) / (c + 1.0) + 1.0 / n) - x * x / n;
        CHECK(pc_variance(c, 1.0, n, x) == doctest::Approx(expanded).epsilon(1e-14));
    }
}

TEST_CASE("pc empirical sd tracks the analytic finite-n variance") {
    BenchConfig cfg;
    cfg.paths = 2000;
    SamplerSpec spec;
    spec.algorithm = Algorithm::pc;
    spec.n = 50;
    const GridMoments m = empirical_moments(spec, cfg, "pc-var-check");
    for (std::size_t j = 0; j < m.grid.size(); ++j) {
        const double exact_sd = std::sqrt(pc_variance(cfg.c, 1.0, spec.n, m.grid[j]));
        CHECK(std::fabs(m.sd[j] - exact_sd) < 0.03);
    }
}

TEST_CASE("default report has the five standard rows and a stable header") {
    BenchConfig cfg;
    cfg.paths = 30;
    const BenchReport report = run_benchmark(cfg);
    REQUIRE(report.rows.size() == 5);
    CHECK(report.rows[0].algorithm == "dls");
    CHECK(report.rows[1].algorithm == "leekim");
    CHECK(report.rows[2].algorithm == "lee");
    CHECK(report.rows[3].algorithm == "pc");
    CHECK(report.rows[4].algorithm == "as");
    CHECK(report.all_ok());
    const std::string csv = report.to_csv();
    CHECK(csv.rfind("algorithm,params,max_mean_error,max_sd_error,wall_time_s\n", 0) == 0);
    CHECK(report.to_json()["rows"].size() == 5);
    CHECK(report.to_markdown().find("| dls |") != std::string::npos);
}

TEST_CASE("error columns are deterministic in the master seed") {
    BenchConfig cfg;
    cfg.paths = 40;
    cfg.master_seed = 777;
    const BenchReport a = run_benchmark(cfg);
    const BenchReport b = run_benchmark(cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].max_mean_error == b.rows[i].max_mean_error);
        CHECK(a.rows[i].max_sd_error == b.rows[i].max_sd_error);
    }
}

TEST_CASE("worker count does not change the reduction") {
    SamplerSpec spec;
    spec.algorithm = Algorithm::pc;
    spec.n = 30;
    BenchConfig serial;
    serial.paths = 200;
    serial.workers = 1;
    BenchConfig parallel = serial;
    parallel.workers = 3;
    const GridMoments a = empirical_moments(spec, serial, "worker-check");
    const GridMoments b = empirical_moments(spec, parallel, "worker-check");
    for (std::size_t j = 0; j < a.grid.size(); ++j) {
        CHECK(a.mean[j] == b.mean[j]);
        CHECK(a.sd[j] == b.sd[j]);
    }
}

TEST_CASE("doubling the path count keeps the mean error within its band") {
    SamplerSpec spec;
    spec.algorithm = Algorithm::pc;
    spec.n = 200;
    BenchConfig cfg;
    cfg.paths = 3000;
    const GridMoments m1 = empirical_moments(spec, cfg, "consistency");
    cfg.paths = 6000;
    const GridMoments m2 = empirical_moments(spec, cfg, "consistency");
    const double e1 = max_mean_error(m1, cfg.base);
    const double e2 = max_mean_error(m2, cfg.base);
    const double band = 3.0 * std::sqrt(1.0 / 3.0) / std::sqrt(3000.0);
    CHECK(e2 <= e1 + 2.0 * band);
}

TEST_CASE("a failing algorithm is recorded in-row and the run continues") {
    BenchConfig cfg;
    cfg.paths = 10;
    cfg.algorithms.clear();
    {
        SamplerSpec bad;
        bad.algorithm = Algorithm::fk;
        bad.jumps = 0;  // invalid
        cfg.algorithms.push_back({"fk-bad", bad});
    }
    {
        SamplerSpec ok;
        ok.algorithm = Algorithm::pc;
        ok.n = 20;
        cfg.algorithms.push_back({"pc", ok});
    }
    const BenchReport report = run_benchmark(cfg);
    REQUIRE(report.rows.size() == 2);
    CHECK(!report.rows[0].ok);
    CHECK(!report.rows[0].error.empty());
    CHECK(report.rows[1].ok);
    CHECK(!report.all_ok());
    CHECK(report.to_csv().find("error") != std::string::npos);
    // moment curves cover only the ok rows: header + 10 grid points
    const std::string curves = report.moments_csv();
    CHECK(curves.rfind("algorithm,x,mean,sd\n", 0) == 0);
    CHECK(std::count(curves.begin(), curves.end(), '\n') == 11);
    CHECK(curves.find("fk-bad") == std::string::npos);
}

TEST_CASE("config validation") {
    BenchConfig cfg;
    cfg.grid = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = BenchConfig{};
    cfg.grid = {0.5, 0.2};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = BenchConfig{};
    cfg.paths = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = BenchConfig{};
    cfg.workers = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
