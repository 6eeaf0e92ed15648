#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cbabc {

/// The two random primitives the optimizer consumes. Every stochastic decision
/// goes through one of these, so tests can script the stream.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    /// Uniform real in [0, 1].
    virtual double uniform() = 0;

    /// Uniform integer in [0, n). Requires n > 0.
    virtual std::size_t index(std::size_t n) = 0;

    /// Uniform real in [lo, hi].
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
};

/// Seeded 64-bit Mersenne Twister. Both primitives are computed from raw engine
/// output rather than std distributions, so a seed produces the same stream
/// with any standard library.
class Rng final : public RandomSource {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() override;
    std::size_t index(std::size_t n) override;
    using RandomSource::uniform;

    /// Number of primitive draws served so far.
    [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stable per-run seed from (master seed, algorithm tag, run index).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t run_index) noexcept;

} // namespace cbabc
