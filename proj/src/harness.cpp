#include "cbabc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "cbabc/errors.hpp"
#include "cbabc/tsp.hpp"

namespace cbabc::harness {

std::string AlgorithmSpec::tag() const {
    switch (kind) {
    case Kind::Abc: return "abc";
    case Kind::CbAbc: return fmt::format("cbabc-pr{}", pr);
    case Kind::RandomSearch: return "random";
    }
    return "?";
}

std::string AlgorithmSpec::label() const {
    switch (kind) {
    case Kind::Abc: return "ABC";
    case Kind::CbAbc: return fmt::format("CbABC Pr={}", pr);
    case Kind::RandomSearch: return "Random";
    }
    return "?";
}

ProblemSpec ProblemSpec::bench(std::string name, std::size_t dimension) {
    ProblemSpec spec;
    spec.kind = Kind::Benchmark;
    spec.benchmark = std::move(name);
    spec.dimension = dimension;
    return spec;
}

ProblemSpec ProblemSpec::tsp(std::size_t n, std::optional<std::uint64_t> instance_seed) {
    ProblemSpec spec;
    spec.kind = Kind::Tsp;
    spec.dimension = n;
    spec.instance_seed = instance_seed;
    return spec;
}

Problem ProblemSpec::build() const {
    if (kind == Kind::Benchmark) {
        return make_benchmark(benchmark, dimension);
    }
    if (instance_file) {
        return tsp::as_problem(std::make_shared<const tsp::Instance>(tsp::load_instance(*instance_file)));
    }
    const std::uint64_t seed = instance_seed.value_or(tsp::default_instance_seed(dimension));
    return tsp::as_problem(std::make_shared<const tsp::Instance>(tsp::generate_instance(dimension, seed)));
}

void CampaignConfig::validate() const {
    if (runs == 0) {
        throw ConfigError("runs must be at least 1");
    }
    if (algorithms.empty()) {
        throw ConfigError("campaign needs at least one algorithm");
    }
    std::set<std::string> tags;
    for (const auto& a : algorithms) {
        if (!(a.pr >= 0.0 && a.pr <= 1.0)) {
            throw ConfigError(fmt::format("crossover probability {} outside [0, 1]", a.pr));
        }
        if (!tags.insert(a.tag()).second) {
            throw ConfigError(fmt::format("algorithm '{}' listed twice", a.tag()));
        }
    }
    if (std::find(cycles_grid.begin(), cycles_grid.end(), std::size_t{0}) != cycles_grid.end()) {
        throw ConfigError("cycle grid entries must be positive");
    }
    abc.validate();
}

std::uint64_t run_seed(std::uint64_t master_seed, const AlgorithmSpec& algorithm, std::size_t run_index) {
    return derive_seed(master_seed, algorithm.tag(), run_index);
}

namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

Moments moments(std::span<const double> values) {
    Moments m;
    if (values.empty()) {
        return m;
    }
    for (double v : values) {
        m.mean += v;
    }
    m.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - m.mean) * (v - m.mean);
        }
        m.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return m;
}

AbcConfig config_for(const CampaignConfig& cfg, const AlgorithmSpec& algorithm, std::uint64_t seed) {
    AbcConfig abc = cfg.abc;
    abc.seed = seed;
    abc.variant = algorithm.kind == AlgorithmSpec::Kind::CbAbc ? Variant::CbAbc : Variant::Abc;
    abc.crossover_probability = algorithm.kind == AlgorithmSpec::Kind::CbAbc ? algorithm.pr : 0.0;
    if (!cfg.cycles_grid.empty()) {
        abc.max_cycles = *std::max_element(cfg.cycles_grid.begin(), cfg.cycles_grid.end());
    }
    return abc;
}

AlgorithmStats aggregate(const AlgorithmSpec& algorithm, std::vector<RunRecord> runs,
                         std::span<const std::size_t> cycles_grid) {
    AlgorithmStats stats;
    stats.algorithm = algorithm;
    std::vector<double> finals;
    std::vector<double> to_success;
    std::size_t longest = 0;
    for (const auto& r : runs) {
        finals.push_back(r.result.best_objective);
        to_success.push_back(static_cast<double>(r.result.evaluations_to_success));
        stats.successes += r.result.succeeded ? 1 : 0;
        longest = std::max(longest, r.result.trace.size());
    }
    const Moments mo = moments(finals);
    const Moments ae = moments(to_success);
    stats.mo = mo.mean;
    stats.mo_sd = mo.sd;
    stats.ae = ae.mean;
    stats.ae_sd = ae.sd;

    std::vector<double> column(runs.size());
    stats.mean_best_curve.reserve(longest);
    for (std::size_t c = 1; c <= longest; ++c) {
        double sum = 0.0;
        for (const auto& r : runs) {
            sum += best_at_cycle(r.result, c);
        }
        stats.mean_best_curve.push_back(sum / static_cast<double>(runs.size()));
    }
    for (std::size_t cycles : cycles_grid) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            column[i] = best_at_cycle(runs[i].result, cycles);
        }
        const Moments m = moments(column);
        stats.grid.push_back({cycles, m.mean, m.sd});
    }
    stats.runs = std::move(runs);
    return stats;
}

} // namespace

CampaignStats run_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    const Problem problem = cfg.problem.build();

    struct Task {
        std::size_t algorithm;
        std::size_t run;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::set<std::uint64_t> seeds;
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        for (std::size_t r = 0; r < cfg.runs; ++r) {
            const std::uint64_t seed = run_seed(cfg.abc.seed, cfg.algorithms[a], r);
            if (!seeds.insert(seed).second) {
                throw ConfigError(fmt::format("run seed collision for {} run {}", cfg.algorithms[a].tag(), r));
            }
            tasks.push_back({a, r, seed});
        }
    }

    std::vector<RunResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            try {
                const Task& task = tasks[t];
                const AlgorithmSpec& algorithm = cfg.algorithms[task.algorithm];
                const AbcConfig abc = config_for(cfg, algorithm, task.seed);
                const RunOptions options{cfg.success_threshold, nullptr};
                results[t] = algorithm.kind == AlgorithmSpec::Kind::RandomSearch ? random_search(problem, abc, options)
                                                                                 : run(problem, abc, options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = tasks.size();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, tasks.size());
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    CampaignStats stats;
    stats.kind = cfg.problem.kind;
    stats.problem = problem.name;
    stats.dimension = problem.dimension();
    stats.cycles_grid = cfg.cycles_grid;
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
        std::vector<RunRecord> runs;
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            if (tasks[t].algorithm == a) {
                runs.push_back({tasks[t].run, tasks[t].seed, std::move(results[t])});
            }
        }
        stats.algorithms.push_back(aggregate(cfg.algorithms[a], std::move(runs), cfg.cycles_grid));
    }
    return stats;
}

std::string format_real(double value) {
    return fmt::format("{:.5e}", value);
}

std::size_t ComparisonTable::column_count() const noexcept {
    return kind == ProblemSpec::Kind::Benchmark ? algorithms.size() : cycles.size();
}

namespace {

void mark_minimum(std::span<TableCell* const> cells) {
    if (cells.empty()) {
        return;
    }
    double lowest = cells.front()->mean;
    for (const TableCell* c : cells) {
        lowest = std::min(lowest, c->mean);
    }
    for (TableCell* c : cells) {
        c->best = c->mean == lowest;
    }
}

std::string marked(double value, bool best) {
    return format_real(value) + (best ? "*" : "");
}

} // namespace

ComparisonTable compare_table(std::span<const CampaignStats> campaigns) {
    if (campaigns.empty()) {
        throw ConfigError("comparison table needs at least one campaign");
    }
    const CampaignStats& first = campaigns.front();
    std::vector<AlgorithmSpec> algorithms;
    for (const auto& a : first.algorithms) {
        algorithms.push_back(a.algorithm);
    }
    for (const auto& c : campaigns) {
        if (c.kind != first.kind) {
            throw ConfigError("cannot tabulate benchmark and TSP campaigns together");
        }
        if (c.algorithms.size() != algorithms.size() ||
            !std::equal(algorithms.begin(), algorithms.end(), c.algorithms.begin(),
                        [](const AlgorithmSpec& s, const AlgorithmStats& a) { return s == a.algorithm; })) {
            throw ConfigError(fmt::format("campaign '{}' compares a different algorithm set", c.problem));
        }
        if (c.kind == ProblemSpec::Kind::Tsp && c.cycles_grid != first.cycles_grid) {
            throw ConfigError(fmt::format("campaign '{}' uses a different cycle grid", c.problem));
        }
    }
    if (first.kind == ProblemSpec::Kind::Tsp && first.cycles_grid.empty()) {
        throw ConfigError("TSP comparison needs a cycle grid");
    }

    ComparisonTable table;
    table.kind = first.kind;
    table.algorithms = algorithms;
    if (table.kind == ProblemSpec::Kind::Benchmark) {
        for (const auto& c : campaigns) {
            ComparisonTable::Row row{c.problem, c.dimension, std::nullopt, {}};
            for (const auto& a : c.algorithms) {
                row.cells.push_back({a.mo, a.mo_sd, a.ae, a.ae_sd, false});
            }
            std::vector<TableCell*> ptrs;
            for (auto& cell : row.cells) {
                ptrs.push_back(&cell);
            }
            mark_minimum(ptrs);
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    table.cycles = first.cycles_grid;
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        for (const auto& c : campaigns) {
            ComparisonTable::Row row{c.problem, c.dimension, algorithms[a], {}};
            for (const auto& g : c.algorithms[a].grid) {
                row.cells.push_back({g.mean_best, g.sd_best, std::nullopt, 0.0, false});
            }
            table.rows.push_back(std::move(row));
        }
    }
    // Rows are grouped by algorithm, so row (a, c) sits at a * campaigns + c.
    for (std::size_t c = 0; c < campaigns.size(); ++c) {
        for (std::size_t k = 0; k < table.cycles.size(); ++k) {
            std::vector<TableCell*> ptrs;
            for (std::size_t a = 0; a < algorithms.size(); ++a) {
                ptrs.push_back(&table.rows[a * campaigns.size() + c].cells[k]);
            }
            mark_minimum(ptrs);
        }
    }
    return table;
}

std::string ComparisonTable::text() const {
    std::string out;
    auto it = std::back_inserter(out);
    if (kind == ProblemSpec::Kind::Benchmark) {
        fmt::format_to(it, "{:<28} {:>4} {:<7}", "problem", "D", "measure");
        for (const auto& a : algorithms) {
            fmt::format_to(it, " {:>14}", a.label());
        }
        out += '\n';
        for (const auto& row : rows) {
            fmt::format_to(it, "{:<28} {:>4} {:<7}", row.problem, row.dimension, "MO");
            for (const auto& cell : row.cells) {
                fmt::format_to(it, " {:>14}", marked(cell.mean, cell.best));
            }
            out += '\n';
            fmt::format_to(it, "{:<28} {:>4} {:<7}", "", "", "AE");
            for (const auto& cell : row.cells) {
                fmt::format_to(it, " {:>14}", format_real(cell.ae.value_or(0.0)));
            }
            out += '\n';
        }
        return out;
    }
    fmt::format_to(it, "{:<16} {:>9}", "algorithm", "dimension");
    for (std::size_t c : cycles) {
        fmt::format_to(it, " {:>13}", c);
    }
    out += '\n';
    for (const auto& row : rows) {
        fmt::format_to(it, "{:<16} {:>9}", row.algorithm ? row.algorithm->label() : "", row.dimension);
        for (const auto& cell : row.cells) {
            fmt::format_to(it, " {:>13}", marked(cell.mean, cell.best));
        }
        out += '\n';
    }
    return out;
}

std::string ComparisonTable::csv() const {
    std::string out;
    auto it = std::back_inserter(out);
    if (kind == ProblemSpec::Kind::Benchmark) {
        out += "problem,dimension,algorithm,pr,mo,mo_sd,ae,ae_sd,best\n";
        for (const auto& row : rows) {
            for (std::size_t a = 0; a < row.cells.size(); ++a) {
                const TableCell& cell = row.cells[a];
                fmt::format_to(it, "{},{},{},{},{},{},{},{},{}\n", row.problem, row.dimension, algorithms[a].tag(),
                               format_real(algorithms[a].pr), format_real(cell.mean), format_real(cell.sd),
                               format_real(cell.ae.value_or(0.0)), format_real(cell.ae_sd), cell.best ? 1 : 0);
            }
        }
        return out;
    }
    out += "algorithm,pr,dimension,max_cycles,mean_best,sd_best,best\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.cells.size(); ++k) {
            const TableCell& cell = row.cells[k];
            fmt::format_to(it, "{},{},{},{},{},{},{}\n", row.algorithm->tag(), format_real(row.algorithm->pr),
                           row.dimension, cycles[k], format_real(cell.mean), format_real(cell.sd), cell.best ? 1 : 0);
        }
    }
    return out;
}

std::string runs_csv(const CampaignStats& stats) {
    std::string out = "algorithm,pr,run,seed,best_objective,evaluations,evaluations_to_success,cycles\n";
    auto it = std::back_inserter(out);
    for (const auto& a : stats.algorithms) {
        for (const auto& r : a.runs) {
            fmt::format_to(it, "{},{},{},{},{},{},{},{}\n", a.algorithm.tag(), format_real(a.algorithm.pr), r.run,
                           r.seed, format_real(r.result.best_objective), r.result.evaluations,
                           r.result.evaluations_to_success, r.result.cycles);
        }
    }
    return out;
}

std::string plot_data_csv(std::span<const AlgorithmStats> algorithms) {
    std::string out = "cycle";
    auto it = std::back_inserter(out);
    std::size_t longest = 0;
    for (const auto& a : algorithms) {
        fmt::format_to(it, ",{}", a.algorithm.tag());
        longest = std::max(longest, a.mean_best_curve.size());
    }
    out += '\n';
    for (std::size_t c = 0; c < longest; ++c) {
        fmt::format_to(it, "{}", c + 1);
        for (const auto& a : algorithms) {
            const auto& curve = a.mean_best_curve;
            // A shorter curve ended on budget; its last value holds.
            fmt::format_to(it, ",{}", curve.empty() ? std::string{} : format_real(curve[std::min(c, curve.size() - 1)]));
        }
        out += '\n';
    }
    return out;
}

void emit_plot_data(const CampaignStats& stats, const std::filesystem::path& path) {
    write_file(path, plot_data_csv(stats.algorithms));
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
}

} // namespace cbabc::harness
