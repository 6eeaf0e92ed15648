#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbabc/errors.hpp"
#include "cbabc/harness.hpp"
#include "cbabc/tsp.hpp"

using namespace cbabc;
using namespace cbabc::harness;

namespace {

CampaignConfig small_campaign(const std::string& name, std::size_t dim) {
    CampaignConfig cfg;
    cfg.problem = ProblemSpec::bench(name, dim);
    cfg.algorithms = {AlgorithmSpec::abc(), AlgorithmSpec::cbabc(0.2)};
    cfg.runs = 6;
    cfg.abc.sn = 10;
    cfg.abc.max_cycles = 150;
    cfg.abc.eval_budget = 2500;
    cfg.abc.seed = 9;
    return cfg;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

CampaignStats fake_tsp(std::size_t n, std::vector<std::size_t> grid, std::vector<std::vector<double>> means) {
    CampaignStats c;
    c.kind = ProblemSpec::Kind::Tsp;
    c.problem = "tsp-" + std::to_string(n);
    c.dimension = n;
    c.cycles_grid = grid;
    for (std::size_t a = 0; a < means.size(); ++a) {
        AlgorithmStats s;
        s.algorithm = a == 0 ? AlgorithmSpec::abc() : AlgorithmSpec::cbabc(0.1 * static_cast<double>(a));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            s.grid.push_back({grid[k], means[a][k], 0.0});
        }
        c.algorithms.push_back(s);
    }
    return c;
}

} // namespace

TEST_CASE("algorithm tags and labels") {
    CHECK(AlgorithmSpec::abc().tag() == "abc");
    CHECK(AlgorithmSpec::cbabc(0.1).tag() == "cbabc-pr0.1");
    CHECK(AlgorithmSpec::random_search().tag() == "random");
    CHECK(AlgorithmSpec::cbabc(0.3).label() == "CbABC Pr=0.3");
}

TEST_CASE("single-run statistics") {
    CampaignConfig cfg = small_campaign("sphere", 3);
    cfg.runs = 1;
    const CampaignStats stats = run_campaign(cfg);
    REQUIRE(stats.algorithms.size() == 2);
    for (const auto& a : stats.algorithms) {
        REQUIRE(a.runs.size() == 1);
        CHECK(a.mo == a.runs[0].result.best_objective);
        CHECK(a.mo_sd == 0.0);
        CHECK(a.ae == static_cast<double>(a.runs[0].result.evaluations_to_success));
    }
}

TEST_CASE("campaign output is independent of the thread count") {
    CampaignConfig cfg = small_campaign("rastrigin", 4);
    const CampaignStats serial = run_campaign(cfg);
    cfg.threads = 4;
    const CampaignStats parallel = run_campaign(cfg);
    CHECK(runs_csv(serial) == runs_csv(parallel));
    CHECK(plot_data_csv(serial.algorithms) == plot_data_csv(parallel.algorithms));
    const std::vector<CampaignStats> a{serial};
    const std::vector<CampaignStats> b{parallel};
    CHECK(compare_table(a).csv() == compare_table(b).csv());
}

TEST_CASE("run seeds are distinct and stable") {
    std::set<std::uint64_t> seen;
    for (const auto& alg : {AlgorithmSpec::abc(), AlgorithmSpec::cbabc(0.1), AlgorithmSpec::cbabc(0.2),
                            AlgorithmSpec::random_search()}) {
        for (std::size_t r = 0; r < 100; ++r) {
            CHECK(seen.insert(run_seed(1, alg, r)).second);
        }
    }
    CHECK(run_seed(5, AlgorithmSpec::abc(), 3) == run_seed(5, AlgorithmSpec::abc(), 3));
    CHECK(run_seed(5, AlgorithmSpec::abc(), 3) != run_seed(6, AlgorithmSpec::abc(), 3));
}

TEST_CASE("AE saturates at the budget when nothing succeeds") {
    CampaignConfig cfg = small_campaign("rosenbrock", 10);
    cfg.algorithms = {AlgorithmSpec::random_search()};
    cfg.success_threshold = 1e-12;
    const CampaignStats stats = run_campaign(cfg);
    const AlgorithmStats& a = stats.algorithms[0];
    CHECK(a.successes == 0);
    CHECK(a.ae == static_cast<double>(cfg.abc.eval_budget));
    CHECK(a.ae_sd == 0.0);
    for (const auto& r : a.runs) {
        CHECK(r.result.evaluations_to_success == cfg.abc.eval_budget);
    }
}

TEST_CASE("benchmark comparison table") {
    CampaignConfig cfg = small_campaign("sphere", 2);
    cfg.runs = 2;
    const std::vector<CampaignStats> one{run_campaign(cfg)};
    const ComparisonTable t = compare_table(one);
    CHECK(t.rows.size() == 1);
    CHECK(t.column_count() == 2);
    CHECK(t.rows[0].cells[0].ae.has_value());
    const auto marked = std::count_if(t.rows[0].cells.begin(), t.rows[0].cells.end(),
                                      [](const TableCell& c) { return c.best; });
    CHECK(marked >= 1);
    const auto csv = lines_of(t.csv());
    CHECK(csv[0] == "problem,dimension,algorithm,pr,mo,mo_sd,ae,ae_sd,best");
    CHECK(csv.size() == 3);

    CampaignConfig other = small_campaign("griewank", 2);
    other.runs = 2;
    other.algorithms = {AlgorithmSpec::abc()};
    const std::vector<CampaignStats> mixed{one[0], run_campaign(other)};
    CHECK_THROWS_AS(compare_table(mixed), ConfigError);
    CHECK_THROWS_AS(compare_table(std::vector<CampaignStats>{}), ConfigError);
}

TEST_CASE("tsp comparison table") {
    const std::vector<std::size_t> grid{500, 1000, 1500, 2000, 2500, 3000};
    const std::vector<CampaignStats> campaigns{
        fake_tsp(10, grid, {{5.0, 5.0, 5.0, 5.0, 5.0, 5.0}, {3.0, 3.0, 3.0, 3.0, 6.0, 3.0}}),
        fake_tsp(20, grid, {{9.0, 8.0, 7.0, 6.0, 5.0, 4.0}, {9.5, 8.0, 7.0, 6.0, 5.0, 4.0}})};
    const ComparisonTable t = compare_table(campaigns);
    CHECK(t.column_count() == 6);
    REQUIRE(t.rows.size() == 4);
    // Rows: (abc, 10), (abc, 20), (cbabc, 10), (cbabc, 20).
    CHECK(t.rows[0].dimension == 10);
    CHECK(t.rows[2].algorithm == AlgorithmSpec::cbabc(0.1));
    CHECK(t.rows[2].cells[0].best);
    CHECK_FALSE(t.rows[0].cells[0].best);
    CHECK(t.rows[0].cells[4].best);
    CHECK(t.rows[1].cells[0].best);
    CHECK(t.text().find('*') != std::string::npos);
    CHECK(lines_of(t.csv()).size() == 1 + 4 * 6);

    std::vector<CampaignStats> bad = campaigns;
    bad[1].cycles_grid = {500};
    CHECK_THROWS_AS(compare_table(bad), ConfigError);
    bad = campaigns;
    bad[0].kind = ProblemSpec::Kind::Benchmark;
    CHECK_THROWS_AS(compare_table(bad), ConfigError);
}

TEST_CASE("plot data") {
    CHECK(plot_data_csv(std::vector<AlgorithmStats>{}) == "cycle\n");

    CampaignConfig cfg = small_campaign("griewank", 3);
    cfg.abc.max_cycles = 10;
    cfg.abc.eval_budget = kUnlimitedBudget;
    const CampaignStats stats = run_campaign(cfg);
    const auto rows = lines_of(plot_data_csv(stats.algorithms));
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == "cycle,abc,cbabc-pr0.2");
    for (const auto& a : stats.algorithms) {
        REQUIRE(a.mean_best_curve.size() == 10);
        for (std::size_t c = 1; c < a.mean_best_curve.size(); ++c) {
            CHECK(a.mean_best_curve[c] <= a.mean_best_curve[c - 1]);
        }
    }
    CHECK(rows[10].rfind("10,", 0) == 0);
}

TEST_CASE("a cycle grid matches separate runs at each budget") {
    CampaignConfig cfg;
    cfg.problem = ProblemSpec::tsp(8);
    cfg.algorithms = {AlgorithmSpec::abc(), AlgorithmSpec::cbabc(0.1)};
    cfg.runs = 4;
    cfg.abc.sn = 10;
    cfg.abc.eval_budget = kUnlimitedBudget;
    cfg.cycles_grid = {20, 60, 100};
    const CampaignStats grid = run_campaign(cfg);
    for (std::size_t k = 0; k < cfg.cycles_grid.size(); ++k) {
        CampaignConfig single = cfg;
        single.cycles_grid.clear();
        single.abc.max_cycles = cfg.cycles_grid[k];
        const CampaignStats separate = run_campaign(single);
        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
            CHECK(grid.algorithms[a].grid[k].mean_best == separate.algorithms[a].mo);
            CHECK(grid.algorithms[a].grid[k].sd_best == separate.algorithms[a].mo_sd);
        }
    }
    for (const auto& a : grid.algorithms) {
        for (std::size_t k = 1; k < a.grid.size(); ++k) {
            CHECK(a.grid[k].mean_best <= a.grid[k - 1].mean_best);
        }
    }
}

TEST_CASE("problem and campaign errors") {
    CHECK_THROWS_AS(static_cast<void>(ProblemSpec::bench("ackley", 3).build()), ConfigError);
    ProblemSpec spec = ProblemSpec::tsp(5);
    spec.instance_file = "/nonexistent/cities.tsp";
    CHECK_THROWS_AS(static_cast<void>(spec.build()), IoError);
    CampaignConfig cfg = small_campaign("sphere", 2);
    cfg.runs = 0;
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    cfg = small_campaign("sphere", 2);
    cfg.algorithms = {AlgorithmSpec::abc(), AlgorithmSpec::abc()};
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    cfg.algorithms = {AlgorithmSpec::cbabc(1.5)};
    CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    CHECK_THROWS_AS(write_file("/nonexistent/dir/out.csv", "x"), IoError);
}

TEST_CASE("format_real") {
    CHECK(format_real(0.0) == "0.00000e+00");
    CHECK(format_real(1234.5678) == "1.23457e+03");
}

TEST_CASE("ABC solves sphere D=10 across a campaign") {
    CampaignConfig cfg;
    cfg.problem = ProblemSpec::bench("sphere", 10);
    cfg.runs = 30;
    cfg.abc.seed = 1;
    cfg.threads = 4;
    const CampaignStats stats = run_campaign(cfg);
    CHECK(stats.algorithms[0].mo < 1e-3);
}
