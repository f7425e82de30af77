#include "rst/interfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rst/geometry.hpp"
#include "rst/rng.hpp"

namespace rst {

Coloring color_subtrees(const Tree& t, LabelScheme scheme, std::uint64_t seed) {
    const std::int32_t k = t.origin_child_count();
    if (k < 1) throw std::invalid_argument("color_subtrees: origin has no children");

    Coloring col;
    col.scheme = scheme;
    col.child_of_color.assign(k + 1, 0);

    // children(0) is already in trigonometric order from angle 0
    const auto kids = t.children(0);
    if (scheme == LabelScheme::trigonometric) {
        for (std::int32_t c = 1; c <= k; ++c) col.child_of_color[c] = kids[c - 1];
    } else {
        Rng rng(mix_seed(seed, 0xc0102ULL));
        std::vector<std::pair<double, std::int32_t>> marks;
        marks.reserve(k);
        for (const std::int32_t child : kids) marks.emplace_back(rng.uniform01(), child);
        std::sort(marks.begin(), marks.end());
        for (std::int32_t c = 1; c <= k; ++c) col.child_of_color[c] = marks[c - 1].second;
    }

    col.color_of.assign(t.size(), 0);
    for (std::int32_t c = 1; c <= k; ++c) col.color_of[col.child_of_color[c]] = c;
    // Ascending norm order visits every ancestor before its descendants.
    for (const std::int32_t v : t.norm_order) {
        if (v == 0 || t.ancestor[v] == 0) continue;
        col.color_of[v] = col.color_of[t.ancestor[v]];
    }
    return col;
}

std::vector<TracePoint> trace_at(const Tree& t, const Coloring& col, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("trace_at: radius must be positive");
    const PointSet& ps = *t.ps;
    std::vector<TracePoint> trace;
    for (std::int32_t v = 1; v < t.size(); ++v) {
        const CircleHits hits = segment_circle_intersections(ps[v], ps[t.ancestor[v]], r);
        for (int i = 0; i < hits.count; ++i)
            trace.push_back({argument(hits.point[i]), col.color_of[v]});
    }
    // stable: exact angle collisions keep input order
    std::stable_sort(trace.begin(), trace.end(),
                     [](const TracePoint& a, const TracePoint& b) { return a.angle < b.angle; });
    return trace;
}

ThetaEstimate theta_r(const std::vector<TracePoint>& trace, std::int32_t i, std::int32_t j) {
    ThetaEstimate est;
    if (i == j || trace.size() < 2) return est;
    const std::size_t n = trace.size();
    int found = 0;
    double angle = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const TracePoint& p = trace[k];
        const TracePoint& q = trace[(k + 1) % n];
        if (p.color != i || q.color != j) continue;
        // p and q are cyclically adjacent, so the open arc between them is
        // empty; the interface bisects it. Midpoint via the ccw gap avoids
        // branch errors at the 0/2pi seam.
        angle = wrap_angle(p.angle + 0.5 * ccw_gap(p.angle, q.angle));
        ++found;
    }
    if (found == 1)
        est.angle = angle;
    else if (found > 1)
        est.ambiguous = true;
    return est;
}

InterfaceTrace trace_interface(const Tree& t, const Coloring& col, std::int32_t i,
                               std::int32_t j, std::span<const double> r_grid) {
    for (std::size_t k = 1; k < r_grid.size(); ++k)
        if (!(r_grid[k] > r_grid[k - 1]))
            throw std::invalid_argument("trace_interface: grid must be strictly increasing");

    InterfaceTrace tr;
    tr.color_i = i;
    tr.color_j = j;
    for (const double r : r_grid) {
        const ThetaEstimate est = theta_r(trace_at(t, col, r), i, j);
        InterfaceSample s;
        s.r = r;
        s.defined = est.angle.has_value();
        s.theta = est.angle.value_or(0.0);
        tr.samples.push_back(s);
        if (s.defined) {
            if (!tr.birth) tr.birth = r;
            tr.death = r;
        }
    }
    return tr;
}

int unbounded_count(const Tree& t, const Coloring& col, const SurvivorConfig& cfg) {
    const std::vector<char> mask = surviving_mask(t, cfg);
    int m = 0;
    for (std::int32_t c = 1; c <= col.color_count(); ++c)
        if (mask[col.child_of_color[c]]) ++m;
    return m;
}

std::optional<SectorReading> surviving_interfaces(const Tree& t, const Coloring& col,
                                                  const SurvivorConfig& cfg, double r) {
    const std::vector<char> mask = surviving_mask(t, cfg);
    std::vector<char> color_survives(col.color_count() + 1, 0);
    std::int32_t m = 0;
    for (std::int32_t c = 1; c <= col.color_count(); ++c) {
        if (mask[col.child_of_color[c]]) {
            color_survives[c] = 1;
            ++m;
        }
    }
    if (m < 2) return std::nullopt;

    // Restrict the trace to surviving colors; bounded subtrees still alive at
    // radius r are transient and excluded from the asymptotic sector picture.
    std::vector<TracePoint> trace;
    for (const TracePoint& p : trace_at(t, col, r))
        if (color_survives[p.color]) trace.push_back(p);

    // Boundaries between cyclic monochromatic runs. Gathering requires
    // exactly m runs covering all m surviving colors; anything else is a
    // measure-zero anomaly reported as "no reading".
    SectorReading reading;
    const std::size_t n = trace.size();
    std::vector<char> entered(col.color_count() + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const TracePoint& p = trace[k];
        const TracePoint& q = trace[(k + 1) % n];
        if (p.color == q.color) continue;
        SectorReading::Boundary b;
        b.color_i = p.color;
        b.color_j = q.color;
        b.theta = wrap_angle(p.angle + 0.5 * ccw_gap(p.angle, q.angle));
        reading.boundaries.push_back(b);
        entered[q.color] = 1;
    }
    if (static_cast<std::int32_t>(reading.boundaries.size()) != m) return std::nullopt;
    for (std::int32_t c = 1; c <= col.color_count(); ++c)
        if (color_survives[c] && !entered[c]) return std::nullopt;

    // Sector of a color spans from the boundary entering it to the boundary
    // leaving it; the last one closes the total to exactly 2pi.
    const std::size_t mb = reading.boundaries.size();
    double used = 0.0;
    for (std::size_t s = 0; s < mb; ++s) {
        const auto& enter = reading.boundaries[s];
        const auto& leave = reading.boundaries[(s + 1) % mb];
        double width;
        if (s + 1 < mb)
            width = ccw_gap(enter.theta, leave.theta);
        else
            width = two_pi - used;
        used += width;
        reading.sectors.emplace_back(enter.color_j, width);
    }
    return reading;
}

std::vector<std::pair<std::int32_t, double>> sector_angles(const Tree& t, const Coloring& col,
                                                           const SurvivorConfig& cfg,
                                                           double r) {
    const std::vector<char> mask = surviving_mask(t, cfg);
    std::int32_t m = 0;
    for (std::int32_t c = 1; c <= col.color_count(); ++c)
        if (mask[col.child_of_color[c]]) ++m;
    if (m < 2)
        throw std::invalid_argument("sector_angles: fewer than two surviving colors");

    const std::optional<SectorReading> reading = surviving_interfaces(t, col, cfg, r);
    if (!reading)
        throw std::runtime_error("sector_angles: surviving colors are not gathered at r");
    return reading->sectors;
}

}  // namespace rst
