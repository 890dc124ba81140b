#include "frf/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace frf {

namespace {

void check_policy(const FitPolicy& policy) {
    if (!(policy.drop_low_fraction >= 0.0) || !(policy.drop_low_fraction < 1.0))
        throw argument_error("FitPolicy: drop_low_fraction must lie in [0, 1)");
}

}  // namespace

Eigen::ArrayXd component_values(const Eigen::ArrayXcd& values, Component component) {
    switch (component) {
        case Component::Abs:
            return values.abs();
        case Component::Re:
            return values.real();
        case Component::Im:
            return values.imag();
        case Component::Complex:
            break;
    }
    throw argument_error("component_values: no scalar view of Component::Complex");
}

LogLogFit fit_loglog(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
    const Eigen::Index n = x.size();
    if (n != y.size()) throw argument_error("fit_loglog: x and y lengths differ");
    if (n < 2) throw argument_error("fit_loglog: need at least 2 points");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw argument_error("fit_loglog: points must be strictly positive");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw argument_error("fit_loglog: x must be strictly ascending");
    }
    Eigen::MatrixXd design(n, 2);
    design.col(0).setOnes();
    design.col(1) = x.log().matrix();
    const Eigen::VectorXd rhs = y.log().matrix();
    const Eigen::Vector2d beta = design.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd residual = rhs - design * beta;
    LogLogFit fit;
    fit.intercept = beta[0];
    fit.slope = beta[1];
    fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
    fit.n_points = static_cast<int>(n);
    fit.x_min = x[0];
    fit.x_max = x[n - 1];
    return fit;
}

Eigen::ArrayXd alpha_growth_profile(const CoefficientSource& f, int k,
                                    const Eigen::ArrayXd& x_points,
                                    const Eigen::ArrayXd& t_grid, int n_threads) {
    if (t_grid.size() == 0) throw argument_error("alpha_growth_profile: empty t grid");
    for (Eigen::Index j = 0; j < t_grid.size(); ++j)
        if (!(t_grid[j] >= 0.0) || !(t_grid[j] < 1.0))
            throw argument_error("alpha_growth_profile: t grid must lie in [0, 1)");
    const Eigen::MatrixXd profile = exp_sum_prefix_profile(
        f, k, std::span<const double>(x_points.data(), static_cast<std::size_t>(x_points.size())),
        std::span<const double>(t_grid.data(), static_cast<std::size_t>(t_grid.size())),
        n_threads);
    return profile.rowwise().maxCoeff().array();
}

LogLogFit estimate_alpha(const CoefficientSource& f, int k, const Eigen::ArrayXd& x_points,
                         const Eigen::ArrayXd& t_grid, const FitPolicy& policy,
                         int n_threads) {
    check_policy(policy);
    if (x_points.size() < 4)
        throw argument_error("estimate_alpha: ladder needs at least 4 rungs");
    for (Eigen::Index i = 1; i < x_points.size(); ++i)
        if (x_points[i] < x_points[i - 1] * (2.0 - 1e-9))
            throw argument_error("estimate_alpha: ladder must be geometric with ratio >= 2");
    const Eigen::ArrayXd growth = alpha_growth_profile(f, k, x_points, t_grid, n_threads);
    return fit_growth_profile(x_points, growth, policy);
}

LogLogFit fit_growth_profile(const Eigen::ArrayXd& x_points, const Eigen::ArrayXd& growth,
                             const FitPolicy& policy) {
    check_policy(policy);
    if (x_points.size() != growth.size())
        throw argument_error("fit_growth_profile: ladder/profile lengths differ");
    // Rungs where the sum vanishes exactly carry no log-scale information.
    std::vector<double> xs, ys;
    for (Eigen::Index i = 0; i < x_points.size(); ++i) {
        if (growth[i] > 0.0) {
            xs.push_back(x_points[i]);
            ys.push_back(growth[i]);
        }
    }
    const auto drop = static_cast<std::size_t>(std::ceil(
        policy.drop_low_fraction * static_cast<double>(xs.size()) - 1e-9));
    if (xs.size() - drop < 2)
        throw degenerate_data_error(
            "estimate_alpha: fewer than 2 usable rungs after trimming");
    const auto kept = static_cast<Eigen::Index>(xs.size() - drop);
    return fit_loglog(
        Eigen::Map<const Eigen::ArrayXd>(xs.data() + drop, kept),
        Eigen::Map<const Eigen::ArrayXd>(ys.data() + drop, kept));
}

Eigen::ArrayXd increment_profile(const SampleGrid& grid, const Eigen::ArrayXd& h_values,
                                 Component component, bool wrap) {
    const Eigen::Index m = grid.t_values.size();
    if (m < 2 || grid.values.size() != m)
        throw argument_error("increment_profile: grid needs matching t/values with >= 2 samples");
    for (Eigen::Index i = 0; i < m; ++i)
        if (std::fabs(grid.t_values[i] - static_cast<double>(i) / static_cast<double>(m)) > 1e-12)
            throw argument_error("increment_profile: grid must be the uniform t_i = i/m on [0, 1)");
    if (h_values.size() == 0) throw argument_error("increment_profile: empty h ladder");
    Eigen::ArrayXd scalar;
    if (component != Component::Complex) scalar = component_values(grid.values, component);
    Eigen::ArrayXd d(h_values.size());
    for (Eigen::Index hi = 0; hi < h_values.size(); ++hi) {
        const double h = h_values[hi];
        if (hi > 0 && !(h > h_values[hi - 1]))
            throw argument_error("increment_profile: h ladder must be strictly ascending");
        const double steps = h * static_cast<double>(m);
        const auto s = static_cast<Eigen::Index>(std::llround(steps));
        if (std::fabs(steps - static_cast<double>(s)) > 1e-9)
            throw argument_error("increment_profile: h must be an integer multiple of 1/m");
        if (s < 2)
            throw argument_error("increment_profile: h below grid resolution (need h >= 2/m)");
        if (s >= m) throw argument_error("increment_profile: h must be < 1");
        const Eigen::Index i_end = wrap ? m : m - s;
        double best = 0.0;
        if (component == Component::Complex) {
            for (Eigen::Index i = 0; i < i_end; ++i) {
                Eigen::Index j = i + s;
                if (j >= m) j -= m;
                best = std::max(best, std::abs(grid.values[j] - grid.values[i]));
            }
        } else {
            for (Eigen::Index i = 0; i < i_end; ++i) {
                Eigen::Index j = i + s;
                if (j >= m) j -= m;
                best = std::max(best, std::fabs(scalar[j] - scalar[i]));
            }
        }
        d[hi] = best;
    }
    return d;
}

LogLogFit estimate_holder(const SampleGrid& grid, const Eigen::ArrayXd& h_values,
                          Component component, const FitPolicy& policy, bool wrap) {
    check_policy(policy);
    if (h_values.size() < 4)
        throw argument_error("estimate_holder: h ladder needs at least 4 rungs");
    const Eigen::ArrayXd d = increment_profile(grid, h_values, component, wrap);
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (!(d[i] > 0.0))
            throw degenerate_data_error(
                "estimate_holder: increments vanish at the sampled resolution");
    // h ascends, and the h -> 0 limit is the target, so the trimmed
    // rungs are the largest (coarsest) steps at the tail.
    const auto drop = static_cast<Eigen::Index>(std::ceil(
        policy.drop_low_fraction * static_cast<double>(h_values.size()) - 1e-9));
    const Eigen::Index kept = h_values.size() - drop;
    if (kept < 2)
        throw degenerate_data_error("estimate_holder: fewer than 2 rungs after trimming");
    return fit_loglog(h_values.head(kept), d.head(kept));
}

Eigen::ArrayXd alpha_t_grid(std::int64_t m, int max_den) {
    if (m < 1) throw argument_error("alpha_t_grid: need m >= 1");
    if (max_den < 1) throw argument_error("alpha_t_grid: need max_den >= 1");
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(m) + 128);
    for (std::int64_t i = 0; i < m; ++i)
        points.push_back(static_cast<double>(i) / static_cast<double>(m));
    for (int q = 1; q <= max_den; ++q)
        for (int p = 0; p < q; ++p)
            if (std::gcd(p, q) == 1) points.push_back(static_cast<double>(p) / q);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return Eigen::Map<const Eigen::ArrayXd>(points.data(),
                                            static_cast<Eigen::Index>(points.size()));
}

double alpha_for_assumption(Assumption assumption, int k) {
    if (k < 1) throw argument_error("alpha_for_assumption: k must be >= 1");
    switch (assumption) {
        case Assumption::Unconditional:
            if (k == 1)
                throw not_available_error(
                    "alpha_for_assumption: no unconditional exponent below 1 for k = 1");
            return 1.0;
        case Assumption::Grh:
            return k == 1 ? 0.75 : 1.0 - std::ldexp(1.0, 1 - 2 * k);
        case Assumption::SquareRootConjecture:
            return 0.5;
        case Assumption::UserSupplied:
            break;
    }
    throw argument_error("alpha_for_assumption: needs a named assumption");
}

TheoryExponent theoretical_exponents(int k, Assumption assumption) {
    if (k < 1) throw argument_error("theoretical_exponents: k must be >= 1");
    if (k > 29)
        throw argument_error("theoretical_exponents: exact rational overflows int64 for k > 29");
    TheoryExponent row;
    row.assumption = assumption;
    row.k = k;
    row.epsilon_limit = true;  // every underlying growth bound carries x^epsilon
    std::int64_t num = 0, den = 1;
    switch (assumption) {
        case Assumption::Unconditional:
            if (k == 1)
                throw not_available_error(
                    "theoretical_exponents: no entry for (Unconditional, k = 1)");
            num = k - 1;
            den = k;
            break;
        case Assumption::Grh:
            if (k == 1) {
                num = 1;
                den = 4;
            } else {
                // eta = 1 - (1 - 2^(1-2k))/k over the common denominator k*2^(2k-1)
                const std::int64_t pow2 = std::int64_t{1} << (2 * k - 1);
                num = (static_cast<std::int64_t>(k) - 1) * pow2 + 1;
                den = static_cast<std::int64_t>(k) * pow2;
            }
            break;
        case Assumption::SquareRootConjecture:
            num = 2 * static_cast<std::int64_t>(k) - 1;
            den = 2 * static_cast<std::int64_t>(k);
            break;
        case Assumption::UserSupplied:
            throw argument_error("theoretical_exponents: needs a named assumption");
    }
    const std::int64_t g = std::gcd(num, den);
    row.eta_num = num / g;
    row.eta_den = den / g;
    row.eta = static_cast<double>(row.eta_num) / static_cast<double>(row.eta_den);
    row.dim_graph_bound = 2.0 - row.eta;
    return row;
}

ExponentReport theorem_bounds(const SeriesSpec& series) {
    if (!series.alpha_hypothesis())
        throw contract_error("theorem_bounds: series carries no alpha hypothesis");
    ExponentReport report;
    report.alpha = series.alpha_hypothesis()->alpha;
    report.eta_theory = (series.p() - report.alpha) / static_cast<double>(series.k());
    report.dim_graph_bound = 2.0 - report.eta_theory;
    report.dim_path_bound = 1.0 / report.eta_theory;
    return report;
}

InequalityCheck check_theorem_inequalities(const ExponentReport& report,
                                           const LogLogFit& graph_fit,
                                           const LogLogFit& path_fit, double slack) {
    if (!(slack >= 0.0)) throw argument_error("check_theorem_inequalities: slack must be >= 0");
    if (graph_fit.n_points < 2 || path_fit.n_points < 2)
        throw argument_error("check_theorem_inequalities: fits must be nondegenerate");
    if (!std::isfinite(graph_fit.slope) || !std::isfinite(path_fit.slope))
        throw argument_error("check_theorem_inequalities: estimates must be finite");
    InequalityCheck chk;
    chk.slack = slack;
    chk.graph_estimate = graph_fit.slope;
    chk.graph_bound = report.dim_graph_bound;
    chk.graph_margin = report.dim_graph_bound + slack - graph_fit.slope;
    chk.graph_ok = chk.graph_margin >= 0.0;
    chk.path_estimate = path_fit.slope;
    chk.path_bound = report.dim_path_bound;
    chk.path_margin = report.dim_path_bound + slack - path_fit.slope;
    chk.path_ok = chk.path_margin >= 0.0;
    return chk;
}

}  // namespace frf
