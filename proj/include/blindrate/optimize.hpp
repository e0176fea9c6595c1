#pragma once

#include <cstddef>
#include <vector>

namespace blindrate {

struct OptimizationResult {
    double t1_star = 0.0;
    std::size_t t2_star = 0;
    double objective = 0.0;         // algorithmic error at the optimum
    double constraint_value = 0.0;  // F(t2*; n, p_u(t1*))
    double grid_resolution = 0.0;   // t1 step actually used
};

/// Exhaustive grid search of the algorithmic error over t1 in {0, step, .., 1}
/// and t2 in {1..n}; ties break toward smaller t2, then smaller t1.
///
/// t2 = 0 is excluded from the argmin: its formula value is identically 0
/// (empty-sum numerator) regardless of t1, which says nothing about the
/// residual errors of the all-reliable frames it selects. contour_grid still
/// reports the t2 = 0 row.
OptimizationResult optimize_unconstrained(std::size_t n, double sigma, double t1_step = 0.01);

/// Grid search of F(t2-1; n-1, p_u) restricted to points whose acceptance
/// probability F(t2; n, p_u) lies in [n/m_budget, n/m_budget * (1+tolerance)]
/// -- at least the rate the frame budget requires. The equality constraint
/// cannot be hit exactly on a finite grid, hence the one-sided band.
/// Requires m_budget >= n; throws InfeasibleError when no grid point lands in
/// the band, naming the nearest achievable acceptance probability.
OptimizationResult optimize_constrained(std::size_t n, double sigma, std::size_t m_budget,
                                        double t1_step = 0.01, double tolerance = 0.25);

/// Full grid dump for plotting, one row per (t1, t2) including t2 = 0.
struct ContourRow {
    double t1;
    std::size_t t2;
    double algorithmic_error;
    double f_value;
};
std::vector<ContourRow> contour_grid(std::size_t n, double sigma, double t1_step = 0.01);

}  // namespace blindrate
