#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cbabc/objective.hpp"

namespace cbabc::tsp {

struct City {
    double x = 0.0;
    double y = 0.0;
};

/// Symmetric Euclidean instance with a precomputed distance matrix.
class Instance {
public:
    Instance(std::string name, std::vector<City> cities, std::uint64_t seed = 0);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::size_t size() const noexcept { return cities_.size(); }
    [[nodiscard]] const std::vector<City>& cities() const noexcept { return cities_; }
    [[nodiscard]] double cost(std::size_t i, std::size_t j) const noexcept { return cost_[i * cities_.size() + j]; }

private:
    std::string name_;
    std::vector<City> cities_;
    std::vector<double> cost_;
    std::uint64_t seed_;
};

using Order = std::vector<std::size_t>;

struct Tour {
    Order order;
    double length = 0.0;
};

/// n cities uniform in [0, 100]^2, deterministic in (n, seed). Requires n >= 3.
Instance generate_instance(std::size_t n, std::uint64_t seed);

/// Text format: first line n, then n lines "x y".
Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Random-key decoding: indices sorted by ascending key, ties by lower index.
Order decode_keys(std::span<const double> keys);

/// Closed tour cost including the return edge. Throws ConfigError unless
/// `order` is a permutation of 0..n-1.
double tour_length(std::span<const std::size_t> order, const Instance& instance);

/// Continuous problem over [0, 1]^n whose objective is the length of the decoded tour.
Problem as_problem(std::shared_ptr<const Instance> instance);

inline constexpr std::size_t kBruteForceLimit = 10;

/// Exact optimum by enumerating (n-1)!/2 tours: city 0 fixed first, and
/// order[1] < order[n-1] so each undirected tour is visited once.
/// Throws ConfigError for n > kBruteForceLimit.
Tour brute_force_optimum(const Instance& instance);

/// Default instance seed used by the harness for an n-city instance.
std::uint64_t default_instance_seed(std::size_t n) noexcept;

} // namespace cbabc::tsp
