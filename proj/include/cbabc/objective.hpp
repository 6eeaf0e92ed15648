#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbabc {

using Vector = std::vector<double>;

/// Per-dimension search box. Construction validates the invariants.
class BoxBounds {
public:
    BoxBounds(Vector lower, Vector upper);

    /// The same [lo, hi] interval repeated over `dimension` coordinates.
    static BoxBounds uniform(std::size_t dimension, double lo, double hi);

    [[nodiscard]] std::size_t dimension() const noexcept { return lower_.size(); }
    [[nodiscard]] const Vector& lower() const noexcept { return lower_; }
    [[nodiscard]] const Vector& upper() const noexcept { return upper_; }
    [[nodiscard]] double lower(std::size_t j) const noexcept { return lower_[j]; }
    [[nodiscard]] double upper(std::size_t j) const noexcept { return upper_[j]; }

    /// Clamps every component of `x` into the box.
    void clamp(std::span<double> x) const;

private:
    Vector lower_;
    Vector upper_;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// A bounded minimization problem.
struct Problem {
    std::string name;
    BoxBounds bounds;
    ObjectiveFn objective;
    std::optional<double> known_optimum;

    [[nodiscard]] std::size_t dimension() const noexcept { return bounds.dimension(); }
    double operator()(std::span<const double> x) const { return objective(x); }
};

// Table-1 benchmark objectives. All throw EvaluationError on non-finite input.
double sphere(std::span<const double> x);
double griewank(std::span<const double> x);
double rastrigin(std::span<const double> x);
/// Sums over consecutive pairs; throws DimensionError when x has fewer than two components.
double rosenbrock(std::span<const double> x);

/// Inclusive box membership. Throws DimensionError on length mismatch.
bool in_bounds(std::span<const double> x, const BoxBounds& bounds);

/// Names accepted by make_benchmark, in table order.
const std::vector<std::string>& benchmark_names();

/// Builds one of "sphere", "griewank", "rastrigin", "rosenbrock" with its standard box.
/// Throws ConfigError for an unknown name or a dimension the function cannot take.
Problem make_benchmark(std::string_view name, std::size_t dimension);

} // namespace cbabc
