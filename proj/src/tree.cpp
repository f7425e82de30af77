#include "rst/tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rst/geometry.hpp"
#include "rst/grid_index.hpp"

namespace rst {

namespace {

std::vector<std::int32_t> norm_order_of(const PointSet& ps) {
    std::vector<std::int32_t> order(ps.size());
    for (std::int32_t i = 0; i < ps.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&ps](std::int32_t a, std::int32_t b) {
        return norm2(ps[a]) < norm2(ps[b]);
    });
    return order;
}

void finish_tree(Tree& t) {
    const PointSet& ps = *t.ps;
    const std::int32_t n = ps.size();
    t.norm_rank.assign(n, 0);
    for (std::int32_t r = 0; r < n; ++r) t.norm_rank[t.norm_order[r]] = r;

    t.child_start.assign(n + 1, 0);
    for (std::int32_t v = 1; v < n; ++v) ++t.child_start[t.ancestor[v] + 1];
    for (std::int32_t v = 0; v < n; ++v) t.child_start[v + 1] += t.child_start[v];
    t.child_list.assign(n > 0 ? n - 1 : 0, 0);
    std::vector<std::int32_t> fill(t.child_start.begin(), t.child_start.end() - 1);
    for (std::int32_t v = 1; v < n; ++v) t.child_list[fill[t.ancestor[v]]++] = v;

    for (std::int32_t v = 0; v < n; ++v) {
        auto* lo = t.child_list.data() + t.child_start[v];
        auto* hi = t.child_list.data() + t.child_start[v + 1];
        std::sort(lo, hi, [&t, v](std::int32_t a, std::int32_t b) {
            const double ka = child_angle_key(t, v, a);
            const double kb = child_angle_key(t, v, b);
            if (ka != kb) return ka < kb;
            return a < b;
        });
    }
}

}  // namespace

double child_angle_key(const Tree& t, std::int32_t v, std::int32_t child) {
    const PointSet& ps = *t.ps;
    if (v == 0) return argument(ps[child]);
    const Point at = ps[v];
    const Point toward_ancestor{ps[t.ancestor[v]].x - at.x, ps[t.ancestor[v]].y - at.y};
    const Point toward_child{ps[child].x - at.x, ps[child].y - at.y};
    return signed_angle(toward_ancestor, toward_child);
}

Tree build_rst_naive(const PointSet& ps) {
    Tree t;
    t.ps = &ps;
    const std::int32_t n = ps.size();
    t.ancestor.assign(n, 0);
    t.norm_order = norm_order_of(ps);

    std::vector<std::int32_t> rank(n, 0);
    for (std::int32_t r = 0; r < n; ++r) rank[t.norm_order[r]] = r;

    for (std::int32_t x = 1; x < n; ++x) {
        const double xn2 = norm2(ps[x]);
        std::int32_t best = -1;
        double best_d2 = 0.0;
        for (std::int32_t y = 0; y < n; ++y) {
            if (norm2(ps[y]) >= xn2) continue;
            const double d2 = dist2(ps[y], ps[x]);
            if (best < 0 || d2 < best_d2 || (d2 == best_d2 && rank[y] < rank[best])) {
                best = y;
                best_d2 = d2;
            }
        }
        t.ancestor[x] = best;  // origin has the unique minimal norm, so best >= 0
    }
    finish_tree(t);
    return t;
}

Tree build_rst_indexed(const PointSet& ps) {
    Tree t;
    t.ps = &ps;
    const std::int32_t n = ps.size();
    t.ancestor.assign(n, 0);
    t.norm_order = norm_order_of(ps);

    std::vector<std::int32_t> rank(n, 0);
    for (std::int32_t r = 0; r < n; ++r) rank[t.norm_order[r]] = r;

    std::vector<double> n2(n);
    for (std::int32_t i = 0; i < n; ++i) n2[i] = norm2(ps[i]);

    const GridIndex grid(ps);
    for (std::int32_t x = 1; x < n; ++x) {
        const double xn2 = n2[x];
        t.ancestor[x] = grid.nearest(x, rank, [&n2, xn2](std::int32_t j) {
            return n2[j] < xn2;
        });
    }
    finish_tree(t);
    return t;
}

Tree make_tree_from_ancestors(const PointSet& ps, std::vector<std::int32_t> ancestor) {
    if (static_cast<std::int32_t>(ancestor.size()) != ps.size() ||
        (!ancestor.empty() && ancestor[0] != 0))
        throw std::invalid_argument("make_tree_from_ancestors: bad ancestor map");
    Tree t;
    t.ps = &ps;
    t.ancestor = std::move(ancestor);
    t.norm_order = norm_order_of(ps);
    finish_tree(t);
    return t;
}

Forest build_dsf(const PointSet& ps) {
    Forest f;
    f.ps = &ps;
    const std::int32_t n = ps.size();
    f.ancestor.assign(n, -1);

    std::vector<std::int32_t> order(n);
    for (std::int32_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&ps](std::int32_t a, std::int32_t b) { return ps[a].x < ps[b].x; });
    std::vector<std::int32_t> rank(n, 0);
    for (std::int32_t r = 0; r < n; ++r) rank[order[r]] = r;

    const GridIndex grid(ps);
    for (std::int32_t x = 0; x < n; ++x) {
        const double qx = ps[x].x;
        f.ancestor[x] = grid.nearest(x, rank, [&ps, qx](std::int32_t j) {
            return ps[j].x < qx;
        });
    }
    return f;
}

Forest build_dsf_naive(const PointSet& ps) {
    Forest f;
    f.ps = &ps;
    const std::int32_t n = ps.size();
    f.ancestor.assign(n, -1);

    std::vector<std::int32_t> order(n);
    for (std::int32_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&ps](std::int32_t a, std::int32_t b) { return ps[a].x < ps[b].x; });
    std::vector<std::int32_t> rank(n, 0);
    for (std::int32_t r = 0; r < n; ++r) rank[order[r]] = r;

    for (std::int32_t x = 0; x < n; ++x) {
        std::int32_t best = -1;
        double best_d2 = 0.0;
        for (std::int32_t y = 0; y < n; ++y) {
            if (ps[y].x >= ps[x].x) continue;
            const double d2 = dist2(ps[y], ps[x]);
            if (best < 0 || d2 < best_d2 || (d2 == best_d2 && rank[y] < rank[best])) {
                best = y;
                best_d2 = d2;
            }
        }
        f.ancestor[x] = best;
    }
    return f;
}

bool verify_rst_property(const Tree& t) {
    const PointSet& ps = *t.ps;
    const std::int32_t n = t.size();
    for (std::int32_t x = 1; x < n; ++x) {
        const double xn2 = norm2(ps[x]);
        const double edge_d2 = dist2(ps[x], ps[t.ancestor[x]]);
        for (std::int32_t y = 0; y < n; ++y) {
            if (y == x) continue;
            if (norm2(ps[y]) < xn2 && dist2(ps[y], ps[x]) < edge_d2) return false;
        }
    }
    return true;
}

std::vector<std::pair<std::int32_t, std::int32_t>> check_noncrossing(const Tree& t) {
    const PointSet& ps = *t.ps;
    const std::int32_t n = t.size();
    std::vector<std::pair<std::int32_t, std::int32_t>> violations;
    if (n < 3) return violations;

    // Bin edges into a uniform grid by bounding box, then test only pairs
    // sharing a cell. RST edges are short, so boxes cover few cells.
    const double r = ps.window_radius;
    const double cell = std::clamp(
        r * std::sqrt(std::numbers::pi / std::max<std::int32_t>(n - 1, 1)), r * 1e-3, 2.0 * r);
    const auto nx = static_cast<std::int32_t>(std::ceil(2.0 * r / cell)) + 1;
    const auto coord = [&](double v) {
        return std::clamp(static_cast<std::int32_t>(std::floor((v + r) / cell)), 0, nx - 1);
    };

    std::vector<std::vector<std::int32_t>> bucket(static_cast<std::size_t>(nx) * nx);
    for (std::int32_t e = 1; e < n; ++e) {
        const Point a = ps[e];
        const Point b = ps[t.ancestor[e]];
        const std::int32_t x0 = coord(std::min(a.x, b.x)), x1 = coord(std::max(a.x, b.x));
        const std::int32_t y0 = coord(std::min(a.y, b.y)), y1 = coord(std::max(a.y, b.y));
        for (std::int32_t gy = y0; gy <= y1; ++gy)
            for (std::int32_t gx = x0; gx <= x1; ++gx)
                bucket[static_cast<std::size_t>(gy) * nx + gx].push_back(e);
    }

    std::set<std::pair<std::int32_t, std::int32_t>> found;
    for (const auto& edges : bucket) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                std::int32_t e1 = edges[i], e2 = edges[j];
                if (e1 > e2) std::swap(e1, e2);
                const std::int32_t a1 = e1, a2 = t.ancestor[e1];
                const std::int32_t b1 = e2, b2 = t.ancestor[e2];
                if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) continue;
                if (found.count({e1, e2})) continue;
                if (open_segments_intersect(ps[a1], ps[a2], ps[b1], ps[b2]))
                    found.insert({e1, e2});
            }
        }
    }
    violations.assign(found.begin(), found.end());
    return violations;
}

}  // namespace rst
