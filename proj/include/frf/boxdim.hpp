#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>

#include "frf/errors.hpp"
#include "frf/scaling.hpp"
#include "frf/series.hpp"

namespace frf {

enum class BoxTarget { Graph, Path };

// Box counts N(r) over a descending dyadic ladder r = 2^-j.  counts is
// the primary count; shifted_counts re-runs the same scale with the cell
// anchor moved by half a cell, as an anchor-sensitivity probe.
struct BoxCountCurve {
    BoxTarget target = BoxTarget::Graph;
    Component component = Component::Abs;
    Eigen::ArrayXd scales;  // descending r
    Eigen::Array<std::int64_t, Eigen::Dynamic, 1> counts;
    Eigen::Array<std::int64_t, Eigen::Dynamic, 1> shifted_counts;
    // Set when consecutive samples jump farther than half the finest
    // cell: counts may miss cells, so the curve is only a lower bound.
    bool lower_bound_only = false;
};

// Column counting for the graph {(t, g(t))} over [0, 1]: at scale
// r = 2^-j the t axis splits into 2^j columns and each column contributes
// ceil((max - min)/r) + 1 cells from its sample range.
BoxCountCurve boxcount_graph(const SampleGrid& grid, Component component,
                             std::span<const int> levels);

// Occupied-cell counting for the planar curve (Re F, Im F), grid anchored
// at the bounding-box lower-left corner.
BoxCountCurve boxcount_path(const SampleGrid& grid, std::span<const int> levels);

// Slope of log N(r) vs log(1/r) after the policy trim of the coarsest
// scales.
LogLogFit estimate_dimension(const BoxCountCurve& curve, const FitPolicy& policy = {});

// Ascending dyadic levels j0..j1 for the scale ladder r = 2^-j.
std::vector<int> dyadic_levels(int j0, int j1);

}  // namespace frf
