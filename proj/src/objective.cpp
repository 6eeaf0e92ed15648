#include "cbabc/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cbabc/errors.hpp"

namespace cbabc {

BoxBounds::BoxBounds(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) {
        throw ConfigError("bounds must have at least one dimension");
    }
    if (lower_.size() != upper_.size()) {
        throw ConfigError(fmt::format("bounds length mismatch: {} lower vs {} upper", lower_.size(), upper_.size()));
    }
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!(lower_[j] < upper_[j]) || !std::isfinite(lower_[j]) || !std::isfinite(upper_[j])) {
            throw ConfigError(fmt::format("bounds invalid at dimension {}: [{}, {}]", j, lower_[j], upper_[j]));
        }
    }
}

BoxBounds BoxBounds::uniform(std::size_t dimension, double lo, double hi) {
    return BoxBounds(Vector(dimension, lo), Vector(dimension, hi));
}

void BoxBounds::clamp(std::span<double> x) const {
    if (x.size() != dimension()) {
        throw DimensionError(fmt::format("vector of length {} clamped to {}-dimensional box", x.size(), dimension()));
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = std::clamp(x[j], lower_[j], upper_[j]);
    }
}

namespace {

void require_finite(std::span<const double> x, const char* fn) {
    if (x.empty()) {
        throw DimensionError(fmt::format("{}: empty input", fn));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw EvaluationError(fmt::format("{}: non-finite component at index {}", fn, i));
        }
    }
}

} // namespace

double sphere(std::span<const double> x) {
    require_finite(x, "sphere");
    double sum = 0.0;
    for (double xi : x) {
        sum += xi * xi;
    }
    return sum;
}

double griewank(std::span<const double> x) {
    require_finite(x, "griewank");
    double sum = 0.0;
    double prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * x[i];
        prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double rastrigin(std::span<const double> x) {
    require_finite(x, "rastrigin");
    double sum = 0.0;
    for (double xi : x) {
        sum += xi * xi - 10.0 * std::cos(2.0 * std::numbers::pi * xi) + 10.0;
    }
    return sum;
}

double rosenbrock(std::span<const double> x) {
    if (x.size() < 2) {
        throw DimensionError(fmt::format("rosenbrock needs at least 2 components, got {}", x.size()));
    }
    require_finite(x, "rosenbrock");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i] * x[i] - x[i + 1];
        const double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
    }
    return sum;
}

bool in_bounds(std::span<const double> x, const BoxBounds& bounds) {
    if (x.size() != bounds.dimension()) {
        throw DimensionError(fmt::format("vector of length {} tested against {}-dimensional box", x.size(), bounds.dimension()));
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(bounds.lower(j) <= x[j] && x[j] <= bounds.upper(j))) {
            return false;
        }
    }
    return true;
}

const std::vector<std::string>& benchmark_names() {
    static const std::vector<std::string> names{"sphere", "griewank", "rastrigin", "rosenbrock"};
    return names;
}

Problem make_benchmark(std::string_view name, std::size_t dimension) {
    if (dimension == 0) {
        throw ConfigError("benchmark dimension must be positive");
    }
    auto make = [&](double half_width, double (*fn)(std::span<const double>)) {
        return Problem{std::string(name), BoxBounds::uniform(dimension, -half_width, half_width), fn, 0.0};
    };
    if (name == "sphere") {
        return make(100.0, &sphere);
    }
    if (name == "griewank") {
        return make(600.0, &griewank);
    }
    if (name == "rastrigin") {
        return make(5.12, &rastrigin);
    }
    if (name == "rosenbrock") {
        if (dimension < 2) {
            throw ConfigError("rosenbrock requires dimension >= 2");
        }
        return make(30.0, &rosenbrock);
    }
    throw ConfigError(fmt::format("unknown problem '{}' (expected sphere, griewank, rastrigin or rosenbrock)", name));
}

} // namespace cbabc
