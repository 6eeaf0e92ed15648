#include "cbabc/crossover.hpp"

#include <fmt/format.h>

#include "cbabc/errors.hpp"

namespace cbabc {

Offspring linear_crossover_raw(std::span<const double> p1, std::span<const double> p2) {
    if (p1.size() != p2.size()) {
        throw DimensionError(fmt::format("crossover parents differ in length: {} vs {}", p1.size(), p2.size()));
    }
    Offspring out{Vector(p1.size()), Vector(p1.size()), Vector(p1.size())};
    for (std::size_t i = 0; i < p1.size(); ++i) {
        out[0][i] = 0.5 * (p1[i] + p2[i]);
        // 1.5 p1 - 0.5 p2 and -0.5 p1 + 1.5 p2, written so the rounding of
        // the half difference cancels in c2 + c3.
        const double half = 0.5 * (p1[i] - p2[i]);
        out[1][i] = p1[i] + half;
        out[2][i] = p2[i] - half;
    }
    return out;
}

Offspring linear_crossover(std::span<const double> p1, std::span<const double> p2, const BoxBounds& bounds) {
    if (p1.size() != bounds.dimension()) {
        throw DimensionError(fmt::format("crossover parents have length {}, bounds {}", p1.size(), bounds.dimension()));
    }
    Offspring out = linear_crossover_raw(p1, p2);
    for (auto& child : out) {
        bounds.clamp(child);
    }
    return out;
}

namespace {

std::size_t worst_source(const Swarm& swarm) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < swarm.sources.size(); ++i) {
        if (swarm.sources[i].fitness < swarm.sources[worst].fitness) {
            worst = i;
        }
    }
    return worst;
}

} // namespace

std::optional<CrossoverOutcome> crossover_pair(Swarm& swarm, std::size_t a, std::size_t b, const Problem& problem,
                                               const AbcConfig& cfg, RunObserver* observer) {
    CrossoverOutcome outcome;
    outcome.candidates = linear_crossover(swarm.sources.at(a).position, swarm.sources.at(b).position, problem.bounds);
    ++swarm.counters.crossover_events;

    std::array<double, 3> fitness{};
    for (std::size_t c = 0; c < outcome.candidates.size(); ++c) {
        const auto value = evaluate(swarm, problem, cfg.eval_budget, outcome.candidates[c]);
        if (!value) {
            return std::nullopt;
        }
        ++swarm.counters.crossover_evaluations;
        outcome.objectives[c] = *value;
        fitness[c] = fitness_of(*value);
        if (fitness[c] > fitness[outcome.chosen]) {
            outcome.chosen = c;
        }
    }

    if (cfg.replacement == ReplacementTarget::PairWorst) {
        outcome.target = swarm.sources[b].fitness < swarm.sources[a].fitness ? b : a;
    } else {
        outcome.target = worst_source(swarm);
    }

    if (fitness[outcome.chosen] > swarm.sources[outcome.target].fitness) {
        replace_source(swarm, outcome.target, outcome.candidates[outcome.chosen], outcome.objectives[outcome.chosen]);
        swarm.sources[outcome.target].trials = 0;
        ++swarm.counters.crossover_replacements;
        outcome.applied = true;
        if (observer != nullptr) {
            observer->on_crossover_replacement(outcome.target);
        }
    }
    return outcome;
}

PhaseStatus crossover_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                            RunObserver* observer) {
    const std::size_t sn = swarm.sources.size();
    if (sn < 2) {
        throw ConfigError("crossover needs at least two food sources");
    }
    for (std::size_t slot = 0; slot < sn; ++slot) {
        if (!(rng.uniform() < cfg.crossover_probability)) {
            continue;
        }
        const std::size_t a = rng.index(sn);
        std::size_t b = rng.index(sn - 1);
        if (b >= a) {
            ++b;
        }
        if (!crossover_pair(swarm, a, b, problem, cfg, observer)) {
            if (observer != nullptr) {
                observer->on_phase_end(Phase::Crossover, swarm);
            }
            return PhaseStatus::BudgetExhausted;
        }
    }
    if (observer != nullptr) {
        observer->on_phase_end(Phase::Crossover, swarm);
    }
    return PhaseStatus::Completed;
}

} // namespace cbabc
