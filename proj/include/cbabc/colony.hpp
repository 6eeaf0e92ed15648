#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbabc/objective.hpp"
#include "cbabc/rng.hpp"

namespace cbabc {

enum class Variant { Abc, CbAbc };

/// Which source a better crossover offspring may overwrite.
enum class ReplacementTarget {
    PairWorst,       ///< the worse of the two selected parents
    PopulationWorst, ///< the worst source in the whole swarm
};

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view name);
std::string_view to_string(ReplacementTarget t) noexcept;
ReplacementTarget parse_replacement_target(std::string_view name);

inline constexpr std::uint64_t kUnlimitedBudget = std::numeric_limits<std::uint64_t>::max();

struct AbcConfig {
    /// Number of food sources held by the swarm.
    std::size_t sn = 20;
    /// Employed-bee updates per cycle, applied to sources [0, employed). Defaults to sn / 2.
    std::optional<std::size_t> employed_bees;
    /// Onlooker-bee updates per cycle. Defaults to sn / 2.
    std::optional<std::size_t> onlooker_bees;
    /// A source is abandoned once its trial counter exceeds this.
    std::size_t limit = 100;
    std::size_t max_cycles = 2000;
    /// Hard cap on objective calls, initialization included.
    std::uint64_t eval_budget = 20000;
    /// Per-slot crossover gate rate. Only read when variant == CbAbc.
    double crossover_probability = 0.0;
    Variant variant = Variant::Abc;
    ReplacementTarget replacement = ReplacementTarget::PairWorst;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t employed() const noexcept { return employed_bees.value_or(sn / 2); }
    [[nodiscard]] std::size_t onlookers() const noexcept { return onlooker_bees.value_or(sn / 2); }

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;
};

struct FoodSource {
    Vector position;
    double objective = 0.0;
    double fitness = 0.0;
    std::size_t trials = 0;
};

/// One strict improvement of the best-so-far objective.
struct Improvement {
    std::uint64_t evaluations = 0;
    double objective = 0.0;
};

struct SwarmCounters {
    std::uint64_t scouts = 0;
    std::uint64_t crossover_events = 0;
    std::uint64_t crossover_evaluations = 0;
    std::uint64_t crossover_replacements = 0;
};

struct Swarm {
    std::vector<FoodSource> sources;
    Vector best_position;
    double best_objective = std::numeric_limits<double>::infinity();
    std::uint64_t evaluations = 0;
    std::size_t cycle = 0;
    /// Every strict improvement of best_objective, in evaluation order.
    std::vector<Improvement> improvements;
    SwarmCounters counters;
};

enum class Phase { Init, Employed, Crossover, Onlooker, Scout };
std::string_view to_string(Phase p) noexcept;

enum class PhaseStatus { Completed, BudgetExhausted };

/// Instrumentation hooks. All default to no-ops.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    /// After each neighborhood attempt in the employed or onlooker phase.
    virtual void on_attempt(Phase, std::size_t /*source*/, bool /*improved*/) {}
    /// Probability vector the onlooker phase is about to sample from.
    virtual void on_probabilities(std::span<const double>) {}
    /// A source is about to be re-initialized by the scout phase.
    virtual void on_scout(std::size_t /*source*/, std::size_t /*trials*/) {}
    /// A crossover offspring overwrote `source`.
    virtual void on_crossover_replacement(std::size_t /*source*/) {}
    /// After every phase, whether it completed or ran out of budget.
    virtual void on_phase_end(Phase, const Swarm&) {}
};

/// fit = 1 / (1 + f) for f >= 0, 1 + |f| otherwise. Throws EvaluationError on non-finite f.
double fitness_of(double objective_value);

/// Builds a swarm of cfg.sn sources drawn uniformly in the box.
Swarm init_swarm(const Problem& problem, const AbcConfig& cfg, RandomSource& rng, RunObserver* observer = nullptr);

/// Candidate from source `i`: one random dimension j moved by phi * (x_ij - x_kj),
/// k != i, phi uniform in [-1, 1], clamped to the box. Draw order: j, k, phi.
Vector neighbor(std::size_t i, const Swarm& swarm, const BoxBounds& bounds, RandomSource& rng);

/// Evaluates `position` against the budget. Returns nullopt, without calling the
/// objective, once swarm.evaluations has reached `budget`.
std::optional<double> evaluate(Swarm& swarm, const Problem& problem, std::uint64_t budget, std::span<const double> position);

/// Overwrites source `i` and refreshes the best-so-far memory. Does not touch trials.
void replace_source(Swarm& swarm, std::size_t i, Vector position, double objective);

/// P_i = fit_i / sum(fit).
Vector selection_probabilities(const Swarm& swarm);

/// Index whose cumulative probability first exceeds u. Falls back to the last
/// index with positive probability when rounding leaves the sum short of u.
std::size_t roulette_select(std::span<const double> probabilities, double u);

PhaseStatus employed_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                           RunObserver* observer = nullptr);
PhaseStatus onlooker_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                           RunObserver* observer = nullptr);
/// Re-initializes at most one source: the one with the most trials above cfg.limit,
/// lowest index on ties.
PhaseStatus scout_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                        RunObserver* observer = nullptr);

struct RunResult {
    Vector best_position;
    double best_objective = 0.0;
    /// Best of the initial swarm, before any cycle.
    double initial_best = 0.0;
    std::uint64_t evaluations = 0;
    /// Evaluations when the best first reached success_threshold; eval_budget when it never did.
    std::uint64_t evaluations_to_success = 0;
    bool succeeded = false;
    std::size_t cycles = 0;
    /// Best-so-far objective at the end of each cycle (size == cycles).
    std::vector<double> trace;
    std::vector<Improvement> improvements;
    SwarmCounters counters;
};

/// Best-so-far objective after `cycle` cycles; 0 means the initial swarm. Cycles past
/// the end of the run report the final value, matching what a run capped at that
/// many cycles would return.
double best_at_cycle(const RunResult& result, std::size_t cycle);

/// evaluations_to_success recomputed for another threshold.
std::uint64_t evaluations_to_success(const RunResult& result, double threshold, std::uint64_t budget);

struct RunOptions {
    double success_threshold = 1e-5;
    RunObserver* observer = nullptr;
};

/// Seed of the crossover-phase stream. The crossover phase draws from its own
/// stream so enabling it never shifts the draws seen by the other phases.
std::uint64_t crossover_stream_seed(std::uint64_t run_seed) noexcept;

/// Full optimization loop: employed, [crossover], onlooker, scout, repeated until
/// max_cycles or the evaluation budget is reached.
RunResult run(const Problem& problem, const AbcConfig& cfg, const RunOptions& options = {});

/// Baseline: eval_budget uniform samples in the box, seeded by cfg.seed. The trace
/// records the best after every cfg.sn samples.
RunResult random_search(const Problem& problem, const AbcConfig& cfg, const RunOptions& options = {});

} // namespace cbabc
