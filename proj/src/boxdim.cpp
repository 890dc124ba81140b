#include "frf/boxdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace frf {

namespace {

void check_levels(std::span<const int> levels) {
    if (levels.empty()) throw argument_error("boxcount: empty scale ladder");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] < 0 || levels[i] > 30)
            throw argument_error("boxcount: levels must lie in [0, 30]");
        if (i > 0 && levels[i] <= levels[i - 1])
            throw argument_error("boxcount: levels must be strictly ascending");
    }
}

void check_monotone(const BoxCountCurve& curve) {
    // Finer boxes can only reveal more structure; a drop means the
    // samples cannot resolve the finest scales.
    for (Eigen::Index i = 1; i < curve.counts.size(); ++i)
        if (curve.counts[i] < curve.counts[i - 1])
            throw resolution_error(
                "boxcount: counts decreased at a finer scale; increase samples");
}

}  // namespace

std::vector<int> dyadic_levels(int j0, int j1) {
    if (j0 < 0 || j1 > 30 || j0 > j1)
        throw argument_error("dyadic_levels: need 0 <= j0 <= j1 <= 30");
    std::vector<int> levels;
    for (int j = j0; j <= j1; ++j) levels.push_back(j);
    return levels;
}

BoxCountCurve boxcount_graph(const SampleGrid& grid, Component component,
                             std::span<const int> levels) {
    check_levels(levels);
    const Eigen::Index m = grid.t_values.size();
    if (m < 2 || grid.values.size() != m)
        throw argument_error("boxcount_graph: grid needs matching t/values with >= 2 samples");
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(grid.t_values[i] >= 0.0) || !(grid.t_values[i] <= 1.0))
            throw argument_error("boxcount_graph: t values must lie in [0, 1]");
        if (i > 0 && !(grid.t_values[i] > grid.t_values[i - 1]))
            throw argument_error("boxcount_graph: t values must be strictly ascending");
    }
    const Eigen::ArrayXd v = component_values(grid.values, component);
    for (Eigen::Index i = 0; i < m; ++i)
        if (!std::isfinite(v[i])) throw numeric_error("boxcount_graph: non-finite sample");
    // Sample spacing must stay below a quarter of the finest cell, or the
    // per-column ranges would be biased low.
    const double r_fine = std::ldexp(1.0, -levels.back());
    for (Eigen::Index i = 1; i < m; ++i)
        if (grid.t_values[i] - grid.t_values[i - 1] > r_fine / 4.0)
            throw resolution_error(
                "boxcount_graph: sample spacing exceeds min(scales)/4; add samples or coarsen scales");
    const double v_floor = v.minCoeff();

    BoxCountCurve curve;
    curve.target = BoxTarget::Graph;
    curve.component = component;
    curve.scales.resize(static_cast<Eigen::Index>(levels.size()));
    curve.counts.resize(static_cast<Eigen::Index>(levels.size()));
    curve.shifted_counts.resize(static_cast<Eigen::Index>(levels.size()));

    for (std::size_t li = 0; li < levels.size(); ++li) {
        const int j = levels[li];
        const double r = std::ldexp(1.0, -j);
        const std::int64_t cols = std::int64_t{1} << j;
        std::vector<double> lo(static_cast<std::size_t>(cols),
                               std::numeric_limits<double>::infinity());
        std::vector<double> hi(static_cast<std::size_t>(cols),
                               -std::numeric_limits<double>::infinity());
        for (Eigen::Index i = 0; i < m; ++i) {
            auto c = static_cast<std::int64_t>(grid.t_values[i] * static_cast<double>(cols));
            if (c >= cols) c = cols - 1;
            const auto ci = static_cast<std::size_t>(c);
            lo[ci] = std::min(lo[ci], v[i]);
            hi[ci] = std::max(hi[ci], v[i]);
        }
        std::int64_t count = 0;
        std::int64_t shifted = 0;
        const double anchor = v_floor - r / 2.0;
        for (std::int64_t c = 0; c < cols; ++c) {
            const auto ci = static_cast<std::size_t>(c);
            if (!(lo[ci] <= hi[ci])) continue;  // no samples landed here
            count += static_cast<std::int64_t>(std::ceil((hi[ci] - lo[ci]) / r)) + 1;
            shifted += static_cast<std::int64_t>(std::floor((hi[ci] - anchor) / r)) -
                       static_cast<std::int64_t>(std::floor((lo[ci] - anchor) / r)) + 1;
        }
        curve.scales[static_cast<Eigen::Index>(li)] = r;
        curve.counts[static_cast<Eigen::Index>(li)] = count;
        curve.shifted_counts[static_cast<Eigen::Index>(li)] = shifted;
    }
    check_monotone(curve);
    return curve;
}

BoxCountCurve boxcount_path(const SampleGrid& grid, std::span<const int> levels) {
    check_levels(levels);
    const Eigen::Index m = grid.values.size();
    if (m < 2) throw argument_error("boxcount_path: need >= 2 samples");
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& z = grid.values[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw numeric_error("boxcount_path: non-finite sample");
        x0 = std::min(x0, z.real());
        y0 = std::min(y0, z.imag());
    }
    const double r_min = std::ldexp(1.0, -levels.back());

    BoxCountCurve curve;
    curve.target = BoxTarget::Path;
    curve.component = Component::Complex;
    curve.scales.resize(static_cast<Eigen::Index>(levels.size()));
    curve.counts.resize(static_cast<Eigen::Index>(levels.size()));
    curve.shifted_counts.resize(static_cast<Eigen::Index>(levels.size()));

    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        if (std::abs(grid.values[i + 1] - grid.values[i]) > r_min / 2.0) {
            curve.lower_bound_only = true;
            break;
        }
    }

    std::vector<std::uint64_t> cells;
    cells.reserve(static_cast<std::size_t>(m));
    auto occupied = [&](double r, double ax, double ay) {
        cells.clear();
        for (Eigen::Index i = 0; i < m; ++i) {
            const double gx = (grid.values[i].real() - ax) / r;
            const double gy = (grid.values[i].imag() - ay) / r;
            if (gx > 2.0e9 || gy > 2.0e9)
                throw resource_error("boxcount_path: cell indices overflow at this scale");
            const auto kx = static_cast<std::uint64_t>(gx);
            const auto ky = static_cast<std::uint64_t>(gy);
            cells.push_back((kx << 32) | ky);
        }
        std::sort(cells.begin(), cells.end());
        return static_cast<std::int64_t>(
            std::unique(cells.begin(), cells.end()) - cells.begin());
    };

    for (std::size_t li = 0; li < levels.size(); ++li) {
        const double r = std::ldexp(1.0, -levels[li]);
        curve.scales[static_cast<Eigen::Index>(li)] = r;
        curve.counts[static_cast<Eigen::Index>(li)] = occupied(r, x0, y0);
        curve.shifted_counts[static_cast<Eigen::Index>(li)] =
            occupied(r, x0 - r / 2.0, y0 - r / 2.0);
    }
    check_monotone(curve);
    return curve;
}

LogLogFit estimate_dimension(const BoxCountCurve& curve, const FitPolicy& policy) {
    if (!(policy.drop_low_fraction >= 0.0) || !(policy.drop_low_fraction < 1.0))
        throw argument_error("FitPolicy: drop_low_fraction must lie in [0, 1)");
    const Eigen::Index n = curve.scales.size();
    if (n < 1 || curve.counts.size() != n)
        throw argument_error("estimate_dimension: empty or inconsistent curve");
    const auto drop = static_cast<Eigen::Index>(
        std::ceil(policy.drop_low_fraction * static_cast<double>(n) - 1e-9));
    const Eigen::Index kept = n - drop;
    if (kept < 4)
        throw degenerate_data_error("estimate_dimension: fewer than 4 scales after trimming");
    // x = 1/r grows as scales descend, so the trimmed head is the coarse end.
    Eigen::ArrayXd x(kept), y(kept);
    for (Eigen::Index i = 0; i < kept; ++i) {
        x[i] = 1.0 / curve.scales[drop + i];
        y[i] = static_cast<double>(curve.counts[drop + i]);
    }
    return fit_loglog(x, y);
}

}  // namespace frf
