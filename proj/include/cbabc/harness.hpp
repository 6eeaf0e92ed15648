#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbabc/colony.hpp"

namespace cbabc::harness {

struct AlgorithmSpec {
    enum class Kind { Abc, CbAbc, RandomSearch };
    Kind kind = Kind::Abc;
    /// Crossover probability; only meaningful for CbAbc.
    double pr = 0.0;

    static AlgorithmSpec abc() { return {Kind::Abc, 0.0}; }
    static AlgorithmSpec cbabc(double pr) { return {Kind::CbAbc, pr}; }
    static AlgorithmSpec random_search() { return {Kind::RandomSearch, 0.0}; }

    /// Stable identifier used for seeding and CSV headers, e.g. "cbabc-pr0.1".
    [[nodiscard]] std::string tag() const;
    /// Human-readable column label, e.g. "CbABC Pr=0.1".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

struct ProblemSpec {
    enum class Kind { Benchmark, Tsp };
    Kind kind = Kind::Benchmark;
    /// Benchmark name; ignored for TSP.
    std::string benchmark = "sphere";
    /// Benchmark dimension, or city count for a generated TSP instance.
    std::size_t dimension = 30;
    /// TSP only: read cities from this file instead of generating them.
    std::optional<std::filesystem::path> instance_file;
    /// TSP only: generator seed; defaults to tsp::default_instance_seed(dimension).
    std::optional<std::uint64_t> instance_seed;

    static ProblemSpec bench(std::string name, std::size_t dimension);
    static ProblemSpec tsp(std::size_t n, std::optional<std::uint64_t> instance_seed = std::nullopt);

    /// Throws ConfigError for an unknown benchmark, IoError for an unreadable instance file.
    [[nodiscard]] Problem build() const;
};

struct CampaignConfig {
    ProblemSpec problem;
    std::vector<AlgorithmSpec> algorithms{AlgorithmSpec::abc()};
    std::size_t runs = 30;
    double success_threshold = 1e-5;
    /// Optimizer settings shared by all algorithms. `seed` is the master seed;
    /// `variant` and `crossover_probability` are overridden per algorithm.
    AbcConfig abc;
    /// When non-empty, every run lasts max(cycles_grid) cycles and the mean best
    /// is reported at each grid point.
    std::vector<std::size_t> cycles_grid;
    /// Worker threads; results do not depend on this.
    std::size_t threads = 1;

    void validate() const;
};

struct RunRecord {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    RunResult result;
};

struct GridCell {
    std::size_t max_cycles = 0;
    double mean_best = 0.0;
    double sd_best = 0.0;
};

struct AlgorithmStats {
    AlgorithmSpec algorithm;
    /// Mean and sample standard deviation of the final best objective.
    double mo = 0.0;
    double mo_sd = 0.0;
    /// Mean and sample standard deviation of evaluations to success.
    double ae = 0.0;
    double ae_sd = 0.0;
    std::size_t successes = 0;
    /// Mean best-so-far after each cycle, 1-based cycle c at index c - 1.
    std::vector<double> mean_best_curve;
    std::vector<GridCell> grid;
    std::vector<RunRecord> runs;
};

struct CampaignStats {
    ProblemSpec::Kind kind = ProblemSpec::Kind::Benchmark;
    std::string problem;
    std::size_t dimension = 0;
    std::vector<std::size_t> cycles_grid;
    std::vector<AlgorithmStats> algorithms;
};

/// Seed of run `run_index` of `algorithm` under `master_seed`.
std::uint64_t run_seed(std::uint64_t master_seed, const AlgorithmSpec& algorithm, std::size_t run_index);

/// Executes cfg.runs independent runs per algorithm and aggregates them in
/// (algorithm, run index) order.
CampaignStats run_campaign(const CampaignConfig& cfg);

struct TableCell {
    double mean = 0.0;
    double sd = 0.0;
    /// Benchmark tables only.
    std::optional<double> ae;
    double ae_sd = 0.0;
    bool best = false;
};

struct ComparisonTable {
    ProblemSpec::Kind kind = ProblemSpec::Kind::Benchmark;
    struct Row {
        std::string problem;
        std::size_t dimension = 0;
        /// TSP tables: the algorithm the row belongs to.
        std::optional<AlgorithmSpec> algorithm;
        std::vector<TableCell> cells;
    };
    /// Benchmark: one column per algorithm. TSP: one column per cycle budget.
    std::vector<AlgorithmSpec> algorithms;
    std::vector<std::size_t> cycles;
    std::vector<Row> rows;

    [[nodiscard]] std::size_t column_count() const noexcept;
    /// Aligned text rendering; best means carry a trailing '*'.
    [[nodiscard]] std::string text() const;
    [[nodiscard]] std::string csv() const;
};

/// Benchmark campaigns become rows of problems against algorithm columns, with
/// MO and AE per cell and the lowest MO of each row marked. TSP campaigns become
/// (algorithm, dimension) rows against cycle-budget columns, with the lowest mean
/// among algorithms at each (dimension, cycles) marked.
/// Throws ConfigError when campaigns mix kinds, algorithm lists or cycle grids.
ComparisonTable compare_table(std::span<const CampaignStats> campaigns);

/// Per-run CSV: algorithm,pr,run,seed,best_objective,evaluations,evaluations_to_success,cycles
std::string runs_csv(const CampaignStats& stats);

/// Plot series CSV: cycle,<tag>,<tag>,... with one row per cycle.
std::string plot_data_csv(std::span<const AlgorithmStats> algorithms);
void emit_plot_data(const CampaignStats& stats, const std::filesystem::path& path);

/// Writes `content` to `path`, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

/// Objective formatting used in every CSV: scientific, 6 significant digits.
std::string format_real(double value);

} // namespace cbabc::harness
