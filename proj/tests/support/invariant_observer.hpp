#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <memory>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cbabc/colony.hpp"

namespace testing_support {

/// Checks the optimizer's structural invariants after every phase and records
/// the first violation instead of aborting the run.
class InvariantObserver : public cbabc::RunObserver {
public:
    InvariantObserver(const cbabc::Problem& problem, const cbabc::AbcConfig& cfg,
                      std::shared_ptr<const std::uint64_t> calls)
        : problem_(problem), cfg_(cfg), calls_(std::move(calls)) {}

    void on_attempt(cbabc::Phase, std::size_t source, bool improved) override {
        shadow_.at(source) = improved ? 0 : shadow_.at(source) + 1;
    }

    void on_probabilities(std::span<const double> p) override {
        ++probability_vectors;
        double sum = 0.0;
        for (double v : p) {
            if (!(v > 0.0 && v <= 1.0)) {
                fail(fmt::format("probability {} outside (0, 1]", v));
            }
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-12) {
            fail(fmt::format("probabilities sum to 1{:+.3e}", sum - 1.0));
        }
        for (std::size_t a = 0; a < p.size(); ++a) {
            for (std::size_t b = 0; b < p.size(); ++b) {
                if (last_.sources[a].fitness > last_.sources[b].fitness && !(p[a] > p[b])) {
                    fail("probability not increasing in fitness");
                }
            }
        }
    }

    void on_scout(std::size_t source, std::size_t trials) override {
        ++scouts_this_cycle_;
        ++scouts;
        std::size_t expected = last_.sources.size();
        for (std::size_t i = 0; i < last_.sources.size(); ++i) {
            const std::size_t t = last_.sources[i].trials;
            if (t > cfg_.limit && (expected == last_.sources.size() || t > last_.sources[expected].trials)) {
                expected = i;
            }
        }
        if (source != expected || trials <= cfg_.limit) {
            fail(fmt::format("scout picked source {} (trials {}), expected {}", source, trials, expected));
        }
        scouted_ = source;
        shadow_.at(source) = 0;
    }

    void on_crossover_replacement(std::size_t source) override { shadow_.at(source) = 0; }

    void on_phase_end(cbabc::Phase phase, const cbabc::Swarm& swarm) override {
        ++phases;
        if (phase == cbabc::Phase::Init) {
            shadow_.assign(swarm.sources.size(), 0);
        }
        if (swarm.sources.size() != cfg_.sn) {
            fail("swarm size changed");
        }
        for (std::size_t i = 0; i < swarm.sources.size(); ++i) {
            const auto& src = swarm.sources[i];
            if (!cbabc::in_bounds(src.position, problem_.bounds)) {
                fail(fmt::format("source {} out of bounds after {}", i, cbabc::to_string(phase)));
            }
            if (!(src.fitness > 0.0) || src.fitness != cbabc::fitness_of(src.objective)) {
                fail(fmt::format("source {} fitness inconsistent", i));
            }
            if (src.trials != shadow_[i]) {
                fail(fmt::format("source {} trials {} but shadow counter {}", i, src.trials, shadow_[i]));
            }
            if (phase != cbabc::Phase::Init && src.objective > last_.sources[i].objective &&
                !(phase == cbabc::Phase::Scout && scouted_ == i)) {
                fail(fmt::format("source {} worsened during {}", i, cbabc::to_string(phase)));
            }
            if (swarm.best_objective > src.objective) {
                fail("best-so-far is worse than a live source");
            }
        }
        if (phase != cbabc::Phase::Init && swarm.best_objective > last_.best_objective) {
            fail("best-so-far increased");
        }
        if (swarm.evaluations != *calls_ || swarm.evaluations > cfg_.eval_budget) {
            fail(fmt::format("evaluations {} vs objective calls {}", swarm.evaluations, *calls_));
        }
        if (phase == cbabc::Phase::Scout) {
            if (scouts_this_cycle_ > 1) {
                fail("more than one scout in a cycle");
            }
            if (scouts_this_cycle_ == 0 && swarm.evaluations < cfg_.eval_budget) {
                for (const auto& src : swarm.sources) {
                    if (src.trials > cfg_.limit) {
                        fail("exhausted source left in place");
                    }
                }
            }
            scouts_this_cycle_ = 0;
        }
        scouted_.reset();
        last_ = swarm;
    }

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }

    std::vector<std::string> violations;
    std::size_t phases = 0;
    std::size_t scouts = 0;
    std::size_t probability_vectors = 0;

private:
    void fail(std::string what) {
        if (violations.size() < 10) {
            violations.push_back(std::move(what));
        }
    }

    const cbabc::Problem& problem_;
    cbabc::AbcConfig cfg_;
    std::shared_ptr<const std::uint64_t> calls_;
    std::vector<std::size_t> shadow_;
    cbabc::Swarm last_;
    std::optional<std::size_t> scouted_;
    std::size_t scouts_this_cycle_ = 0;
};

} // namespace testing_support
