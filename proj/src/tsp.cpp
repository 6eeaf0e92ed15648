#include "cbabc/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "cbabc/errors.hpp"
#include "cbabc/rng.hpp"

namespace cbabc::tsp {

Instance::Instance(std::string name, std::vector<City> cities, std::uint64_t seed)
    : name_(std::move(name)), cities_(std::move(cities)), seed_(seed) {
    const std::size_t n = cities_.size();
    if (n < 3) {
        throw ConfigError(fmt::format("a tour needs at least 3 cities, got {}", n));
    }
    cost_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(cities_[i].x) || !std::isfinite(cities_[i].y)) {
            throw ConfigError(fmt::format("city {} has non-finite coordinates", i));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::hypot(cities_[i].x - cities_[j].x, cities_[i].y - cities_[j].y);
            cost_[i * n + j] = d;
            cost_[j * n + i] = d;
        }
    }
}

Instance generate_instance(std::size_t n, std::uint64_t seed) {
    if (n < 3) {
        throw ConfigError(fmt::format("a tour needs at least 3 cities, got {}", n));
    }
    Rng rng(seed);
    std::vector<City> cities(n);
    for (auto& c : cities) {
        c.x = rng.uniform(0.0, 100.0);
        c.y = rng.uniform(0.0, 100.0);
    }
    return Instance(fmt::format("rand{}-s{}", n, seed), std::move(cities), seed);
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(fmt::format("cannot open instance file '{}'", path.string()));
    }
    long long n = 0;
    if (!(in >> n) || n < 0) {
        throw IoError(fmt::format("'{}': first line must hold the city count", path.string()));
    }
    std::vector<City> cities(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        if (!(in >> cities[i].x >> cities[i].y)) {
            throw IoError(fmt::format("'{}': expected {} coordinate lines, failed at city {}", path.string(), n, i));
        }
    }
    std::string trailing;
    if (in >> trailing) {
        throw IoError(fmt::format("'{}': unexpected trailing content '{}'", path.string(), trailing));
    }
    return Instance(path.stem().string(), std::move(cities));
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError(fmt::format("cannot write instance file '{}'", path.string()));
    }
    out << instance.size() << '\n';
    for (const auto& c : instance.cities()) {
        // Shortest representation that round-trips exactly.
        out << fmt::format("{} {}\n", c.x, c.y);
    }
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
}

Order decode_keys(std::span<const double> keys) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!std::isfinite(keys[i])) {
            throw EvaluationError(fmt::format("non-finite key at index {}", i));
        }
    }
    Order order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return order;
}

double tour_length(std::span<const std::size_t> order, const Instance& instance) {
    const std::size_t n = instance.size();
    if (order.size() != n) {
        throw ConfigError(fmt::format("tour visits {} cities, instance has {}", order.size(), n));
    }
    std::vector<bool> seen(n, false);
    for (std::size_t c : order) {
        if (c >= n || seen[c]) {
            throw ConfigError(fmt::format("tour is not a permutation (city {} repeated or out of range)", c));
        }
        seen[c] = true;
    }
    double length = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        length += instance.cost(order[t], order[(t + 1) % n]);
    }
    return length;
}

Problem as_problem(std::shared_ptr<const Instance> instance) {
    if (!instance) {
        throw ConfigError("null TSP instance");
    }
    const std::size_t n = instance->size();
    std::string name = fmt::format("tsp-{}", instance->name());
    return Problem{std::move(name), BoxBounds::uniform(n, 0.0, 1.0),
                   [inst = std::move(instance)](std::span<const double> keys) {
                       if (keys.size() != inst->size()) {
                           throw DimensionError(fmt::format("expected {} keys, got {}", inst->size(), keys.size()));
                       }
                       return tour_length(decode_keys(keys), *inst);
                   },
                   std::nullopt};
}

Tour brute_force_optimum(const Instance& instance) {
    const std::size_t n = instance.size();
    if (n > kBruteForceLimit) {
        throw ConfigError(fmt::format("brute force refuses n = {} (limit {})", n, kBruteForceLimit));
    }
    Order order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Tour best{order, tour_length(order, instance)};
    do {
        if (order[1] > order[n - 1]) {
            continue;
        }
        double length = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            length += instance.cost(order[t], order[(t + 1) % n]);
        }
        if (length < best.length) {
            best = {order, length};
        }
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return best;
}

std::uint64_t default_instance_seed(std::size_t n) noexcept {
    return 1000 + n;
}

} // namespace cbabc::tsp
