#include "cbabc/colony.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cbabc/crossover.hpp"
#include "cbabc/errors.hpp"

namespace cbabc {

std::string_view to_string(Variant v) noexcept {
    return v == Variant::Abc ? "abc" : "cbabc";
}

Variant parse_variant(std::string_view name) {
    if (name == "abc") {
        return Variant::Abc;
    }
    if (name == "cbabc") {
        return Variant::CbAbc;
    }
    throw ConfigError(fmt::format("unknown algorithm '{}' (expected abc or cbabc)", name));
}

std::string_view to_string(ReplacementTarget t) noexcept {
    return t == ReplacementTarget::PairWorst ? "pair-worst" : "population-worst";
}

ReplacementTarget parse_replacement_target(std::string_view name) {
    if (name == "pair-worst") {
        return ReplacementTarget::PairWorst;
    }
    if (name == "population-worst") {
        return ReplacementTarget::PopulationWorst;
    }
    throw ConfigError(fmt::format("unknown replacement target '{}' (expected pair-worst or population-worst)", name));
}

std::string_view to_string(Phase p) noexcept {
    switch (p) {
    case Phase::Init: return "init";
    case Phase::Employed: return "employed";
    case Phase::Crossover: return "crossover";
    case Phase::Onlooker: return "onlooker";
    case Phase::Scout: return "scout";
    }
    return "?";
}

void AbcConfig::validate() const {
    if (sn < 2) {
        throw ConfigError(fmt::format("sn must be at least 2 so every source has a distinct partner, got {}", sn));
    }
    if (employed() > sn) {
        throw ConfigError(fmt::format("employed bees ({}) exceed food sources ({})", employed(), sn));
    }
    if (limit == 0) {
        throw ConfigError("limit must be positive");
    }
    if (eval_budget < sn) {
        throw ConfigError(fmt::format("eval_budget ({}) cannot cover initialization of {} sources", eval_budget, sn));
    }
    if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
        throw ConfigError(fmt::format("crossover probability must lie in [0, 1], got {}", crossover_probability));
    }
}

double fitness_of(double objective_value) {
    if (!std::isfinite(objective_value)) {
        throw EvaluationError(fmt::format("fitness of non-finite objective {}", objective_value));
    }
    return objective_value >= 0.0 ? 1.0 / (1.0 + objective_value) : 1.0 + std::fabs(objective_value);
}

namespace {

Vector random_position(const BoxBounds& bounds, RandomSource& rng) {
    Vector x(bounds.dimension());
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = bounds.lower(j) + rng.uniform() * (bounds.upper(j) - bounds.lower(j));
    }
    // u == 1 can round one ulp past the upper bound.
    bounds.clamp(x);
    return x;
}

void note_best(Swarm& swarm, std::span<const double> position, double objective) {
    if (objective < swarm.best_objective) {
        swarm.best_objective = objective;
        swarm.best_position.assign(position.begin(), position.end());
        swarm.improvements.push_back({swarm.evaluations, objective});
    }
}

void finish(RunObserver* observer, Phase phase, const Swarm& swarm) {
    if (observer != nullptr) {
        observer->on_phase_end(phase, swarm);
    }
}

enum class Attempt { Improved, Failed, Exhausted };

// Neighborhood move plus greedy selection on source i.
Attempt improve_source(Swarm& swarm, std::size_t i, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                       Phase phase, RunObserver* observer) {
    Vector candidate = neighbor(i, swarm, problem.bounds, rng);
    const auto value = evaluate(swarm, problem, cfg.eval_budget, candidate);
    if (!value) {
        return Attempt::Exhausted;
    }
    const bool improved = fitness_of(*value) > swarm.sources[i].fitness;
    if (improved) {
        replace_source(swarm, i, std::move(candidate), *value);
        swarm.sources[i].trials = 0;
    } else {
        ++swarm.sources[i].trials;
    }
    if (observer != nullptr) {
        observer->on_attempt(phase, i, improved);
    }
    return improved ? Attempt::Improved : Attempt::Failed;
}

} // namespace

std::optional<double> evaluate(Swarm& swarm, const Problem& problem, std::uint64_t budget,
                               std::span<const double> position) {
    if (swarm.evaluations >= budget) {
        return std::nullopt;
    }
    ++swarm.evaluations;
    return problem(position);
}

void replace_source(Swarm& swarm, std::size_t i, Vector position, double objective) {
    FoodSource& src = swarm.sources.at(i);
    src.position = std::move(position);
    src.objective = objective;
    src.fitness = fitness_of(objective);
    note_best(swarm, src.position, objective);
}

Swarm init_swarm(const Problem& problem, const AbcConfig& cfg, RandomSource& rng, RunObserver* observer) {
    cfg.validate();
    Swarm swarm;
    swarm.sources.reserve(cfg.sn);
    for (std::size_t i = 0; i < cfg.sn; ++i) {
        FoodSource src;
        src.position = random_position(problem.bounds, rng);
        src.objective = *evaluate(swarm, problem, cfg.eval_budget, src.position);
        src.fitness = fitness_of(src.objective);
        swarm.sources.push_back(std::move(src));
        note_best(swarm, swarm.sources.back().position, swarm.sources.back().objective);
    }
    finish(observer, Phase::Init, swarm);
    return swarm;
}

Vector neighbor(std::size_t i, const Swarm& swarm, const BoxBounds& bounds, RandomSource& rng) {
    const std::size_t sn = swarm.sources.size();
    if (sn < 2) {
        throw ConfigError("neighbor needs at least two food sources");
    }
    const Vector& x = swarm.sources.at(i).position;
    const std::size_t j = rng.index(x.size());
    std::size_t k = rng.index(sn - 1);
    if (k >= i) {
        ++k;
    }
    const double phi = rng.uniform(-1.0, 1.0);
    Vector v = x;
    v[j] = std::clamp(x[j] + phi * (x[j] - swarm.sources[k].position[j]), bounds.lower(j), bounds.upper(j));
    return v;
}

Vector selection_probabilities(const Swarm& swarm) {
    Vector p(swarm.sources.size());
    double total = 0.0;
    for (const auto& src : swarm.sources) {
        total += src.fitness;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = swarm.sources[i].fitness / total;
    }
    return p;
}

std::size_t roulette_select(std::span<const double> probabilities, double u) {
    if (probabilities.empty()) {
        throw ConfigError("roulette over an empty distribution");
    }
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 0.0) {
            last_positive = i;
            cumulative += probabilities[i];
            if (u < cumulative) {
                return i;
            }
        }
    }
    return last_positive;
}

PhaseStatus employed_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                           RunObserver* observer) {
    const std::size_t bees = std::min(cfg.employed(), swarm.sources.size());
    for (std::size_t i = 0; i < bees; ++i) {
        if (improve_source(swarm, i, problem, cfg, rng, Phase::Employed, observer) == Attempt::Exhausted) {
            finish(observer, Phase::Employed, swarm);
            return PhaseStatus::BudgetExhausted;
        }
    }
    finish(observer, Phase::Employed, swarm);
    return PhaseStatus::Completed;
}

PhaseStatus onlooker_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                           RunObserver* observer) {
    const std::size_t bees = cfg.onlookers();
    if (bees > 0) {
        const Vector probabilities = selection_probabilities(swarm);
        if (observer != nullptr) {
            observer->on_probabilities(probabilities);
        }
        for (std::size_t t = 0; t < bees; ++t) {
            const std::size_t i = roulette_select(probabilities, rng.uniform());
            if (improve_source(swarm, i, problem, cfg, rng, Phase::Onlooker, observer) == Attempt::Exhausted) {
                finish(observer, Phase::Onlooker, swarm);
                return PhaseStatus::BudgetExhausted;
            }
        }
    }
    finish(observer, Phase::Onlooker, swarm);
    return PhaseStatus::Completed;
}

PhaseStatus scout_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                        RunObserver* observer) {
    std::optional<std::size_t> abandoned;
    for (std::size_t i = 0; i < swarm.sources.size(); ++i) {
        const std::size_t trials = swarm.sources[i].trials;
        if (trials > cfg.limit && (!abandoned || trials > swarm.sources[*abandoned].trials)) {
            abandoned = i;
        }
    }
    PhaseStatus status = PhaseStatus::Completed;
    if (abandoned) {
        if (swarm.evaluations >= cfg.eval_budget) {
            status = PhaseStatus::BudgetExhausted;
        } else {
            if (observer != nullptr) {
                observer->on_scout(*abandoned, swarm.sources[*abandoned].trials);
            }
            Vector fresh = random_position(problem.bounds, rng);
            const double value = *evaluate(swarm, problem, cfg.eval_budget, fresh);
            replace_source(swarm, *abandoned, std::move(fresh), value);
            swarm.sources[*abandoned].trials = 0;
            ++swarm.counters.scouts;
        }
    }
    finish(observer, Phase::Scout, swarm);
    return status;
}

double best_at_cycle(const RunResult& result, std::size_t cycle) {
    if (cycle == 0 || result.trace.empty()) {
        return result.initial_best;
    }
    return result.trace[std::min(cycle, result.trace.size()) - 1];
}

std::uint64_t evaluations_to_success(const RunResult& result, double threshold, std::uint64_t budget) {
    for (const auto& imp : result.improvements) {
        if (imp.objective <= threshold) {
            return imp.evaluations;
        }
    }
    return budget;
}

std::uint64_t crossover_stream_seed(std::uint64_t run_seed) noexcept {
    return mix64(run_seed ^ 0x6a09e667f3bcc909ULL);
}

namespace {

RunResult collect(const Swarm& swarm, double initial_best, std::vector<double> trace, const AbcConfig& cfg,
                  const RunOptions& options) {
    RunResult r;
    r.best_position = swarm.best_position;
    r.best_objective = swarm.best_objective;
    r.initial_best = initial_best;
    r.evaluations = swarm.evaluations;
    r.cycles = swarm.cycle;
    r.trace = std::move(trace);
    r.improvements = swarm.improvements;
    r.counters = swarm.counters;
    r.evaluations_to_success = evaluations_to_success(r, options.success_threshold, cfg.eval_budget);
    r.succeeded = swarm.best_objective <= options.success_threshold;
    return r;
}

} // namespace

RunResult run(const Problem& problem, const AbcConfig& cfg, const RunOptions& options) {
    cfg.validate();
    Rng rng(cfg.seed);
    Rng crossover_rng(crossover_stream_seed(cfg.seed));
    RunObserver* observer = options.observer;

    Swarm swarm = init_swarm(problem, cfg, rng, observer);
    const double initial_best = swarm.best_objective;
    std::vector<double> trace;
    trace.reserve(cfg.max_cycles);

    while (swarm.cycle < cfg.max_cycles && swarm.evaluations < cfg.eval_budget) {
        PhaseStatus status = employed_phase(swarm, problem, cfg, rng, observer);
        if (status == PhaseStatus::Completed && cfg.variant == Variant::CbAbc) {
            status = crossover_phase(swarm, problem, cfg, crossover_rng, observer);
        }
        if (status == PhaseStatus::Completed) {
            status = onlooker_phase(swarm, problem, cfg, rng, observer);
        }
        if (status == PhaseStatus::Completed) {
            scout_phase(swarm, problem, cfg, rng, observer);
        }
        ++swarm.cycle;
        trace.push_back(swarm.best_objective);
    }
    return collect(swarm, initial_best, std::move(trace), cfg, options);
}

RunResult random_search(const Problem& problem, const AbcConfig& cfg, const RunOptions& options) {
    if (cfg.eval_budget == 0 || cfg.eval_budget == kUnlimitedBudget) {
        throw ConfigError("random search needs a finite positive evaluation budget");
    }
    Rng rng(cfg.seed);
    Swarm swarm;
    std::optional<double> initial_best;
    std::vector<double> trace;
    const std::size_t batch = std::max<std::size_t>(cfg.sn, 1);
    while (swarm.evaluations < cfg.eval_budget) {
        Vector x = random_position(problem.bounds, rng);
        const double value = *evaluate(swarm, problem, cfg.eval_budget, x);
        note_best(swarm, x, value);
        if (swarm.evaluations % batch == 0 || swarm.evaluations == cfg.eval_budget) {
            if (!initial_best) {
                initial_best = swarm.best_objective;
            } else {
                ++swarm.cycle;
                trace.push_back(swarm.best_objective);
            }
        }
    }
    return collect(swarm, initial_best.value_or(swarm.best_objective), std::move(trace), cfg, options);
}

} // namespace cbabc
