#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <stdexcept>

#include "cbabc/objective.hpp"
#include "cbabc/rng.hpp"

namespace testing_support {

/// Every uniform draw returns u; index(n) maps u onto [0, n).
class ConstantRandom final : public cbabc::RandomSource {
public:
    explicit ConstantRandom(double u) : u_(u) {}
    double uniform() override { return u_; }
    std::size_t index(std::size_t n) override {
        return std::min(static_cast<std::size_t>(std::floor(u_ * static_cast<double>(n))), n - 1);
    }
    using cbabc::RandomSource::uniform;

private:
    double u_;
};

/// Replays queued values; throws when a queue runs dry.
class ScriptedRandom final : public cbabc::RandomSource {
public:
    std::deque<double> uniforms;
    std::deque<std::size_t> indices;

    double uniform() override {
        if (uniforms.empty()) {
            throw std::logic_error("script exhausted: uniform");
        }
        const double u = uniforms.front();
        uniforms.pop_front();
        return u;
    }
    std::size_t index(std::size_t n) override {
        if (indices.empty()) {
            throw std::logic_error("script exhausted: index");
        }
        const std::size_t k = indices.front();
        indices.pop_front();
        if (k >= n) {
            throw std::logic_error("scripted index out of range");
        }
        return k;
    }
    using cbabc::RandomSource::uniform;
};

/// Wraps a problem so every objective call bumps a shared counter.
inline cbabc::Problem counting(cbabc::Problem p, std::shared_ptr<std::uint64_t> counter) {
    auto inner = p.objective;
    p.objective = [inner, counter](std::span<const double> x) {
        ++*counter;
        return inner(x);
    };
    return p;
}

} // namespace testing_support
