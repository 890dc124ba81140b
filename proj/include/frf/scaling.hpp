#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "frf/coefficients.hpp"
#include "frf/errors.hpp"
#include "frf/series.hpp"

namespace frf {

// Least-squares line through (log x, log y).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;  // log-scale intercept
    double rms_residual = 0.0;
    int n_points = 0;
    double x_min = 0.0;
    double x_max = 0.0;
};

// Rung-trimming rule applied before fitting: the quarter of the ladder
// farthest from the asymptotic limit (smallest x, largest h, coarsest r)
// is dropped, rounding the count up, to suppress transients.
struct FitPolicy {
    double drop_low_fraction = 0.25;
};

enum class Component { Abs, Re, Im, Complex };

enum class Assumption { Unconditional, Grh, SquareRootConjecture, UserSupplied };

// Exact Hoelder exponent for the Moebius series with p = k under one of
// the standard hypotheses; eta = eta_num / eta_den exactly.
struct TheoryExponent {
    Assumption assumption;
    int k;
    std::int64_t eta_num;
    std::int64_t eta_den;
    double eta;
    double dim_graph_bound;  // 2 - eta
    // Bound holds for every epsilon > 0 (the underlying growth bounds
    // carry x^epsilon factors), so eta is a limiting exponent.
    bool epsilon_limit;
};

// Theory-side exponents for one series, with slots for the empirical
// fits next to them.
struct ExponentReport {
    double alpha = 0.0;          // hypothesis exponent used
    double eta_theory = 0.0;     // (p - alpha) / k
    double dim_graph_bound = 0.0;  // 2 - eta_theory
    double dim_path_bound = 0.0;   // 1 / eta_theory
    Assumption assumption_label = Assumption::UserSupplied;
    std::optional<LogLogFit> alpha_hat;
    std::optional<LogLogFit> eta_hat;
};

struct InequalityCheck {
    double slack = 0.0;
    double graph_estimate = 0.0, graph_bound = 0.0, graph_margin = 0.0;
    double path_estimate = 0.0, path_bound = 0.0, path_margin = 0.0;
    bool graph_ok = false;
    bool path_ok = false;
};

// OLS in log-log coordinates; x strictly ascending, all entries positive.
LogLogFit fit_loglog(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y);

// Scalar view of complex samples; Component::Complex has none and is
// rejected.
Eigen::ArrayXd component_values(const Eigen::ArrayXcd& values, Component component);

// M(x_i) = max over the t grid of |S_k(f; x_i, t)|.
Eigen::ArrayXd alpha_growth_profile(const CoefficientSource& f, int k,
                                    const Eigen::ArrayXd& x_points,
                                    const Eigen::ArrayXd& t_grid, int n_threads = 1);

// Slope of log M(x) vs log x after dropping zero rungs and the trimmed
// low end of the ladder.
LogLogFit estimate_alpha(const CoefficientSource& f, int k, const Eigen::ArrayXd& x_points,
                         const Eigen::ArrayXd& t_grid, const FitPolicy& policy = {},
                         int n_threads = 1);

// The fitting half of estimate_alpha, for callers that already hold the
// growth profile.
LogLogFit fit_growth_profile(const Eigen::ArrayXd& x_points, const Eigen::ArrayXd& growth,
                             const FitPolicy& policy = {});

// D(h) = max_i |g((t_i + h) mod 1) - g(t_i)| on a uniform grid over
// [0, 1); each h must be an integer multiple of the grid spacing.  With
// wrap = false the shifted index never crosses t = 1 (for non-periodic
// synthetic data).
Eigen::ArrayXd increment_profile(const SampleGrid& grid, const Eigen::ArrayXd& h_values,
                                 Component component, bool wrap = true);

// Hoelder exponent estimate: slope of log D(h) vs log h.
LogLogFit estimate_holder(const SampleGrid& grid, const Eigen::ArrayXd& h_values,
                          Component component, const FitPolicy& policy = {},
                          bool wrap = true);

// Uniform grid of m points joined with the Farey fractions of
// denominator <= max_den: resonant rationals where growth peaks.
Eigen::ArrayXd alpha_t_grid(std::int64_t m, int max_den = 16);

// Growth exponent under a named hypothesis: 3/4 for (Grh, k = 1),
// 1 - 2^(1-2k) for (Grh, k >= 2), 1/2 conjecturally, 1 unconditionally.
double alpha_for_assumption(Assumption assumption, int k);

// Table entry for the Moebius series with p = k.  (Unconditional, k = 1)
// has no known exponent and raises not_available_error.
TheoryExponent theoretical_exponents(int k, Assumption assumption);

// eta = (p - alpha)/k, graph bound 2 - eta, path bound 1/eta from the
// series' hypothesis.
ExponentReport theorem_bounds(const SeriesSpec& series);

// Compares fitted dimensions against the report's bounds; failures are
// recorded outcomes, never exceptions.
InequalityCheck check_theorem_inequalities(const ExponentReport& report,
                                           const LogLogFit& graph_fit,
                                           const LogLogFit& path_fit, double slack = 0.1);

}  // namespace frf
