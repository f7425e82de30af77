#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rst/ppp.hpp"

namespace rst {

/// Radial spanning tree over a PointSet: every non-origin point is linked to
/// the nearest point of strictly smaller norm (the origin links to itself).
/// Children lists are sorted by increasing oriented angle at their parent;
/// for the origin the ordering key is the plain argument in [0, 2pi).
/// Immutable after construction; `ps` must outlive the tree.
struct Tree {
    const PointSet* ps = nullptr;
    std::vector<std::int32_t> ancestor;
    std::vector<std::int32_t> norm_order;  // vertex ids by increasing norm
    std::vector<std::int32_t> norm_rank;   // inverse of norm_order
    std::vector<std::int32_t> child_start; // CSR offsets, size n+1
    std::vector<std::int32_t> child_list;

    std::span<const std::int32_t> children(std::int32_t v) const {
        return {child_list.data() + child_start[v],
                static_cast<std::size_t>(child_start[v + 1] - child_start[v])};
    }
    std::int32_t size() const { return static_cast<std::int32_t>(ancestor.size()); }
    std::int32_t origin_child_count() const { return child_start[1] - child_start[0]; }
};

/// Directed spanning forest with direction -e_x: every point is linked to the
/// nearest point of strictly smaller abscissa; points without one are roots
/// (ancestor -1).
struct Forest {
    const PointSet* ps = nullptr;
    std::vector<std::int32_t> ancestor;
};

/// O(n^2) reference construction of the RST.
Tree build_rst_naive(const PointSet& ps);

/// Grid-accelerated construction; produces the identical ancestor map as
/// build_rst_naive (same distances, same tie rule) in ~O(n) expected time.
Tree build_rst_indexed(const PointSet& ps);

/// Oriented angle used to order `child` among the children of `v`: signed
/// angle at v from the ray towards ancestor(v) to the ray towards the child,
/// in (-pi, pi]; for v = origin, the child's argument in [0, 2pi).
double child_angle_key(const Tree& t, std::int32_t v, std::int32_t child);

/// Rebuilds the derived tree arrays from an ancestor map (test/IO helper).
Tree make_tree_from_ancestors(const PointSet& ps, std::vector<std::int32_t> ancestor);

Forest build_dsf(const PointSet& ps);
Forest build_dsf_naive(const PointSet& ps);

/// True iff no point of the set lies strictly inside
/// B(O,|X|) /\ B(X,|X-A(X)|) for any non-origin X, independently of how the
/// tree was built.
bool verify_rst_property(const Tree& t);

/// All pairs of edges whose open interiors intersect. Edges are identified by
/// their descendant vertex; pairs are returned with i < j, sorted. Empty on
/// every correctly built RST.
std::vector<std::pair<std::int32_t, std::int32_t>> check_noncrossing(const Tree& t);

}  // namespace rst
