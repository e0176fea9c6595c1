#include "blindrate/optimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blindrate/errors.hpp"
#include "blindrate/theory.hpp"

namespace blindrate {

namespace {

long long grid_steps(double t1_step) {
    if (!(t1_step > 0.0 && t1_step <= 1.0))
        throw std::invalid_argument("optimize: t1 step must lie in (0, 1]");
    return std::llround(1.0 / t1_step);
}

void check_common(std::size_t n, double sigma) {
    if (n == 0) throw DimensionError("optimize: n must be at least 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("optimize: sigma must be positive");
}

}  // namespace

OptimizationResult optimize_unconstrained(std::size_t n, double sigma, double t1_step) {
    check_common(n, sigma);
    const long long steps = grid_steps(t1_step);

    OptimizationResult best;
    best.objective = std::numeric_limits<double>::infinity();
    best.grid_resolution = 1.0 / static_cast<double>(steps);

    for (long long i = 0; i <= steps; ++i) {
        const double t1 = static_cast<double>(i) / static_cast<double>(steps);
        const double p_u = p_unreliable(sigma, t1);
        const std::vector<double> f_n = binomial_cdf_table(n, p_u);
        const std::vector<double> f_n1 = binomial_cdf_table(n - 1, p_u);
        for (std::size_t t2 = 1; t2 <= n; ++t2) {
            const double denominator = f_n[t2];
            if (denominator <= 0.0) continue;
            const double objective = f_n1[t2 - 1] / denominator;
            // strict improvement, or tie broken toward smaller t2 then smaller t1
            if (objective < best.objective) {
                best.t1_star = t1;
                best.t2_star = t2;
                best.objective = objective;
                best.constraint_value = denominator;
            }
        }
    }
    if (!std::isfinite(best.objective))
        throw InfeasibleError("optimize_unconstrained: every grid point has zero acceptance probability");
    return best;
}

OptimizationResult optimize_constrained(std::size_t n, double sigma, std::size_t m_budget,
                                        double t1_step, double tolerance) {
    check_common(n, sigma);
    if (m_budget < n)
        throw DimensionError("optimize_constrained: budget " + std::to_string(m_budget) +
                             " cannot reach m_s = n = " + std::to_string(n) + " suitable frames");
    if (!(tolerance >= 0.0)) throw std::invalid_argument("optimize_constrained: tolerance must be >= 0");

    const long long steps = grid_steps(t1_step);
    const double f_low = static_cast<double>(n) / static_cast<double>(m_budget);
    const double f_high = f_low * (1.0 + tolerance);

    OptimizationResult best;
    best.grid_resolution = 1.0 / static_cast<double>(steps);
    double best_criterion = std::numeric_limits<double>::infinity();
    double nearest_above = std::numeric_limits<double>::infinity();

    for (long long i = 0; i <= steps; ++i) {
        const double t1 = static_cast<double>(i) / static_cast<double>(steps);
        const double p_u = p_unreliable(sigma, t1);
        const std::vector<double> f_n = binomial_cdf_table(n, p_u);
        const std::vector<double> f_n1 = binomial_cdf_table(n - 1, p_u);
        for (std::size_t t2 = 1; t2 <= n; ++t2) {
            const double f_value = f_n[t2];
            if (f_value >= f_low && f_value < nearest_above) nearest_above = f_value;
            if (f_value < f_low || f_value > f_high) continue;
            const double criterion = f_n1[t2 - 1];
            if (criterion < best_criterion) {
                best_criterion = criterion;
                best.t1_star = t1;
                best.t2_star = t2;
                best.objective = criterion / f_value;
                best.constraint_value = f_value;
            }
        }
    }

    if (!std::isfinite(best_criterion)) {
        std::string hint = std::isfinite(nearest_above)
                               ? "nearest acceptance probability at or above it is " + std::to_string(nearest_above)
                               : "no grid point reaches it";
        throw InfeasibleError("optimize_constrained: no grid point has acceptance probability in [" +
                              std::to_string(f_low) + ", " + std::to_string(f_high) + "]; " + hint +
                              " (widen the tolerance or raise the budget)");
    }
    return best;
}

std::vector<ContourRow> contour_grid(std::size_t n, double sigma, double t1_step) {
    check_common(n, sigma);
    const long long steps = grid_steps(t1_step);

    std::vector<ContourRow> rows;
    rows.reserve(static_cast<std::size_t>(steps + 1) * (n + 1));
    for (long long i = 0; i <= steps; ++i) {
        const double t1 = static_cast<double>(i) / static_cast<double>(steps);
        const double p_u = p_unreliable(sigma, t1);
        const std::vector<double> f_n = binomial_cdf_table(n, p_u);
        const std::vector<double> f_n1 = binomial_cdf_table(n - 1, p_u);
        rows.push_back({t1, 0, 0.0, f_n[0]});
        for (std::size_t t2 = 1; t2 <= n; ++t2) {
            const double denominator = f_n[t2];
            const double alg = denominator > 0.0 ? f_n1[t2 - 1] / denominator
                                                 : std::numeric_limits<double>::quiet_NaN();
            rows.push_back({t1, t2, alg, denominator});
        }
    }
    return rows;
}

}  // namespace blindrate
