// Command-line front end: benchmark campaigns, TSP cycle-grid campaigns and
// instance generation.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cbabc/errors.hpp"
#include "cbabc/harness.hpp"
#include "cbabc/tsp.hpp"

namespace fs = std::filesystem;
using namespace cbabc;
using namespace cbabc::harness;

namespace {

struct OptimizerFlags {
    std::vector<std::string> algos{"abc", "cbabc"};
    std::vector<double> prs;
    std::size_t sn = 20;
    std::size_t limit = 100;
    std::size_t cycles = 2000;
    std::optional<std::uint64_t> budget;
    std::size_t runs = 30;
    std::uint64_t seed = 1;
    double threshold = 1e-5;
    std::string replacement = "pair-worst";
    std::size_t threads = 1;
    std::string out = "results";
};

void add_optimizer_flags(CLI::App& cmd, OptimizerFlags& f) {
    cmd.add_option("--algo", f.algos, "Algorithms: abc, cbabc, random (comma separated)")->delimiter(',');
    cmd.add_option("--pr", f.prs, "Crossover probabilities for cbabc (comma separated, default 0.1,0.2,0.3)")
        ->delimiter(',');
    cmd.add_option("--sn", f.sn, "Food sources")->capture_default_str();
    cmd.add_option("--limit", f.limit, "Abandonment limit")->capture_default_str();
    cmd.add_option("--budget", f.budget, "Objective-evaluation budget");
    cmd.add_option("--runs", f.runs, "Independent runs per algorithm")->capture_default_str();
    cmd.add_option("--seed", f.seed, "Master seed")->capture_default_str();
    cmd.add_option("--threshold", f.threshold, "Success threshold for AE")->capture_default_str();
    cmd.add_option("--replace", f.replacement, "Crossover replacement target: pair-worst | population-worst")
        ->capture_default_str();
    cmd.add_option("--threads", f.threads, "Worker threads (output is identical for any value)")->capture_default_str();
    cmd.add_option("--out", f.out, "Output directory")->capture_default_str();
}

std::vector<AlgorithmSpec> algorithms_from(const OptimizerFlags& f) {
    std::vector<double> prs = f.prs.empty() ? std::vector<double>{0.1, 0.2, 0.3} : f.prs;
    std::vector<AlgorithmSpec> out;
    for (const auto& name : f.algos) {
        if (name == "random") {
            out.push_back(AlgorithmSpec::random_search());
        } else if (parse_variant(name) == Variant::Abc) {
            out.push_back(AlgorithmSpec::abc());
        } else {
            for (double pr : prs) {
                out.push_back(AlgorithmSpec::cbabc(pr));
            }
        }
    }
    return out;
}

CampaignConfig campaign_from(const OptimizerFlags& f, std::uint64_t default_budget) {
    CampaignConfig cfg;
    cfg.algorithms = algorithms_from(f);
    cfg.runs = f.runs;
    cfg.success_threshold = f.threshold;
    cfg.threads = f.threads;
    cfg.abc.sn = f.sn;
    cfg.abc.limit = f.limit;
    cfg.abc.max_cycles = f.cycles;
    cfg.abc.eval_budget = f.budget.value_or(default_budget);
    cfg.abc.replacement = parse_replacement_target(f.replacement);
    cfg.abc.seed = f.seed;
    return cfg;
}

std::string file_stem(const CampaignStats& stats) {
    return fmt::format("{}_d{}", stats.problem, stats.dimension);
}

void write_outputs(const std::vector<CampaignStats>& campaigns, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
    const ComparisonTable table = compare_table(campaigns);
    std::cout << table.text();
    write_file(dir / "table.csv", table.csv());
    for (const auto& c : campaigns) {
        write_file(dir / fmt::format("runs_{}.csv", file_stem(c)), runs_csv(c));
        emit_plot_data(c, dir / fmt::format("plot_{}.csv", file_stem(c)));
    }
    std::cout << fmt::format("wrote {}\n", dir.string());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Artificial bee colony and crossover-based ABC experiment runner"};
    app.require_subcommand(1);

    OptimizerFlags bench_flags;
    std::vector<std::string> problems{"sphere"};
    std::size_t dim = 30;
    auto* bench = app.add_subcommand("bench", "Multi-run campaign on the benchmark functions");
    bench->add_option("--problem", problems, "sphere, griewank, rastrigin, rosenbrock (comma separated)")
        ->delimiter(',');
    bench->add_option("--dim", dim, "Problem dimension")->capture_default_str();
    bench->add_option("--cycles", bench_flags.cycles, "Maximum cycles")->capture_default_str();
    add_optimizer_flags(*bench, bench_flags);

    OptimizerFlags tsp_flags;
    std::vector<std::size_t> cities{10, 20, 30};
    std::optional<std::uint64_t> instance_seed;
    std::string instance_file;
    std::vector<std::size_t> grid{500, 1000, 1500, 2000, 2500, 3000};
    auto* tsp_cmd = app.add_subcommand("tsp", "Cycle-grid campaign on Euclidean TSP instances (random-key encoding)");
    tsp_cmd->add_option("--n", cities, "City counts (comma separated)")->delimiter(',');
    tsp_cmd->add_option("--instance", instance_file, "Read the instance from this file instead of generating it");
    tsp_cmd->add_option("--instance-seed", instance_seed, "Generator seed (default depends on n)");
    tsp_cmd->add_option("--cycles-grid", grid, "Cycle budgets to report (comma separated)")->delimiter(',');
    add_optimizer_flags(*tsp_cmd, tsp_flags);

    std::size_t gen_n = 10;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-instance", "Write a uniform random TSP instance");
    gen->add_option("--n", gen_n, "City count")->required();
    gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bench->parsed()) {
            std::vector<CampaignStats> campaigns;
            for (const auto& name : problems) {
                CampaignConfig cfg = campaign_from(bench_flags, 20000);
                cfg.problem = ProblemSpec::bench(name, dim);
                campaigns.push_back(run_campaign(cfg));
            }
            write_outputs(campaigns, bench_flags.out);
        } else if (tsp_cmd->parsed()) {
            if (!instance_file.empty()) {
                cities.assign(1, 0);
            }
            std::vector<CampaignStats> campaigns;
            for (std::size_t n : cities) {
                CampaignConfig cfg = campaign_from(tsp_flags, kUnlimitedBudget);
                cfg.problem = ProblemSpec::tsp(n, instance_seed);
                if (!instance_file.empty()) {
                    cfg.problem.instance_file = instance_file;
                }
                cfg.cycles_grid = grid;
                campaigns.push_back(run_campaign(cfg));
            }
            write_outputs(campaigns, tsp_flags.out);
        } else if (gen->parsed()) {
            tsp::save_instance(tsp::generate_instance(gen_n, gen_seed), gen_out);
            std::cout << fmt::format("wrote {} cities to {}\n", gen_n, gen_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
