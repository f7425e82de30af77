#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rst/paths.hpp"
#include "rst/tree.hpp"

namespace rst {

enum class LabelScheme { trigonometric, random_uniform };

/// Coloring of the non-origin vertices by the subtree rooted at each child of
/// the origin. Colors run 1..K where K is the number of children of O.
struct Coloring {
    LabelScheme scheme = LabelScheme::trigonometric;
    std::vector<std::int32_t> color_of;       // per vertex; 0 for the origin
    std::vector<std::int32_t> child_of_color; // [K+1], entry 0 unused

    std::int32_t color_count() const {
        return static_cast<std::int32_t>(child_of_color.size()) - 1;
    }
};

/// Labels the subtrees rooted at the children of O. Trigonometric scheme:
/// color 1 goes to the first child met counterclockwise from angle 0.
/// Random scheme: colors follow the ranking of independent uniform marks
/// drawn per child from `seed`. Rejects a tree whose origin has no children.
Coloring color_subtrees(const Tree& t, LabelScheme scheme, std::uint64_t seed);

/// One crossing of the circle of radius r, carrying the color of the edge's
/// descendant endpoint.
struct TracePoint {
    double angle = 0.0;  // in [0, 2pi)
    std::int32_t color = 0;
};

/// Normalized trace of the tree over the circle of radius r, sorted by angle.
std::vector<TracePoint> trace_at(const Tree& t, const Coloring& col, double r);

struct ThetaEstimate {
    std::optional<double> angle;
    bool ambiguous = false;  // more than one empty (i,j) arc found
};

/// Interface angle between colors i and j at one radius: the circular
/// midpoint of the empty arc running counterclockwise from a color-i trace
/// point to a color-j trace point. Undefined if no such adjacency exists;
/// undefined and flagged if several exist (numerical degeneracy).
ThetaEstimate theta_r(const std::vector<TracePoint>& trace, std::int32_t i, std::int32_t j);

struct InterfaceSample {
    double r = 0.0;
    double theta = 0.0;  // meaningful only when defined
    bool defined = false;
};

/// Sampled competition interface r -> theta_r(i,j) over a radius grid, with
/// birth/death bracketed by the smallest/largest defined grid radius.
struct InterfaceTrace {
    std::int32_t color_i = 0;
    std::int32_t color_j = 0;
    std::vector<InterfaceSample> samples;
    std::optional<double> birth;
    std::optional<double> death;
};

InterfaceTrace trace_interface(const Tree& t, const Coloring& col, std::int32_t i,
                               std::int32_t j, std::span<const double> r_grid);

/// Number of colors whose subtree reaches beyond cut_radius (proxy for the
/// number of unbounded colored subtrees).
int unbounded_count(const Tree& t, const Coloring& col, const SurvivorConfig& cfg);

/// Interfaces between the surviving colors at radius r: the trace restricted
/// to surviving colors, its arcs in trigonometric order, the boundary angle
/// between cyclically adjacent arcs, and the resulting sector widths.
struct SectorReading {
    struct Boundary {
        std::int32_t color_i = 0;  // arc before the boundary
        std::int32_t color_j = 0;  // arc after
        double theta = 0.0;
    };
    std::vector<Boundary> boundaries;                     // trig order
    std::vector<std::pair<std::int32_t, double>> sectors; // (color, width)
};

/// Empty when some surviving color has no trace point at r or occupies more
/// than one arc (both are measure-zero gathering anomalies).
std::optional<SectorReading> surviving_interfaces(const Tree& t, const Coloring& col,
                                                  const SurvivorConfig& cfg, double r);

/// Sector widths of the surviving colors at radius r, in trigonometric order;
/// the last sector closes the sum to exactly 2pi. Rejects fewer than two
/// surviving colors.
std::vector<std::pair<std::int32_t, double>> sector_angles(const Tree& t, const Coloring& col,
                                                           const SurvivorConfig& cfg, double r);

}  // namespace rst
