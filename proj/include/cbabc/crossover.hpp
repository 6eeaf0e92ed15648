#pragma once

#include <array>
#include <optional>
#include <span>

#include "cbabc/colony.hpp"

namespace cbabc {

using Offspring = std::array<Vector, 3>;

/// Midpoint, p1-side extrapolation and p2-side extrapolation, without clamping:
///   0.5 p1 + 0.5 p2,   1.5 p1 - 0.5 p2,   -0.5 p1 + 1.5 p2
Offspring linear_crossover_raw(std::span<const double> p1, std::span<const double> p2);

/// linear_crossover_raw with every offspring clamped into `bounds`.
Offspring linear_crossover(std::span<const double> p1, std::span<const double> p2, const BoxBounds& bounds);

struct CrossoverOutcome {
    Offspring candidates;
    std::array<double, 3> objectives{};
    /// Offspring with the highest fitness (first on ties).
    std::size_t chosen = 0;
    /// Source compared against, and overwritten when applied.
    std::size_t target = 0;
    bool applied = false;
};

/// Crosses sources a and b, evaluates all three offspring and replaces the
/// target when the best offspring is strictly fitter. Returns nullopt when the
/// budget runs out before all offspring are evaluated; the swarm is then left
/// unchanged apart from the evaluation count.
std::optional<CrossoverOutcome> crossover_pair(Swarm& swarm, std::size_t a, std::size_t b, const Problem& problem,
                                               const AbcConfig& cfg, RunObserver* observer = nullptr);

/// One Bernoulli gate per food-source slot. On success two distinct random
/// parents are crossed via crossover_pair. A failed gate consumes exactly one
/// uniform draw.
PhaseStatus crossover_phase(Swarm& swarm, const Problem& problem, const AbcConfig& cfg, RandomSource& rng,
                            RunObserver* observer = nullptr);

} // namespace cbabc
