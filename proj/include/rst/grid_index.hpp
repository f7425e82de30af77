#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "rst/ppp.hpp"

namespace rst {

/// Uniform bucket grid over the sampling window supporting exact
/// nearest-admissible-point queries via expanding ring search.
///
/// Rings are scanned in increasing Chebyshev distance d; any point in a cell
/// of ring d is at Euclidean distance >= (d-1)*cell from the query, so the
/// search can stop as soon as that bound exceeds the best hit. This makes the
/// query provably exact, not approximate.
class GridIndex {
  public:
    explicit GridIndex(const PointSet& ps) {
        const std::int32_t n = ps.size();
        const double r = ps.window_radius;
        // Cell side ~ 1/sqrt(intensity) so cells hold O(1) points.
        cell_ = r * std::sqrt(std::numbers::pi / std::max<std::int32_t>(n - 1, 1));
        cell_ = std::clamp(cell_, r * 1e-3, 2.0 * r);
        min_ = -r - cell_;
        nx_ = static_cast<std::int32_t>(std::ceil((2.0 * r + 2.0 * cell_) / cell_)) + 1;

        std::vector<std::int32_t> counts(static_cast<std::size_t>(nx_) * nx_ + 1, 0);
        std::vector<std::int32_t> cell_of(n);
        for (std::int32_t i = 0; i < n; ++i) {
            cell_of[i] = flat_cell(ps[i]);
            ++counts[cell_of[i] + 1];
        }
        for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
        start_ = std::move(counts);
        ids_.resize(n);
        std::vector<std::int32_t> fill(start_.begin(), start_.end() - 1);
        for (std::int32_t i = 0; i < n; ++i) ids_[fill[cell_of[i]]++] = i;
        points_ = ps.points.data();
    }

    /// Index of the admissible point nearest to ps[query], or -1 if none.
    /// Ties in distance are broken by the smaller `rank` value, matching the
    /// naive builders exactly.
    template <class Admissible>
    std::int32_t nearest(std::int32_t query, const std::vector<std::int32_t>& rank,
                         Admissible&& admissible) const {
        const Point q = points_[query];
        const std::int32_t cx = cell_coord(q.x);
        const std::int32_t cy = cell_coord(q.y);
        const std::int32_t d_max =
            std::max({cx, nx_ - 1 - cx, cy, nx_ - 1 - cy});
        std::int32_t best = -1;
        double best_d2 = 0.0;

        for (std::int32_t d = 0; d <= d_max; ++d) {
            if (best >= 0 && d >= 1) {
                const double bound = (d - 1) * cell_;
                if (bound * bound > best_d2) break;
            }
            if (d == 0) {
                scan_cell(cy * nx_ + cx, query, q, rank, admissible, best, best_d2);
                continue;
            }
            const std::int32_t xlo = std::max(cx - d, 0);
            const std::int32_t xhi = std::min(cx + d, nx_ - 1);
            // top and bottom rim rows
            for (const std::int32_t gy : {cy - d, cy + d}) {
                if (gy < 0 || gy >= nx_) continue;
                for (std::int32_t gx = xlo; gx <= xhi; ++gx)
                    scan_cell(gy * nx_ + gx, query, q, rank, admissible, best, best_d2);
            }
            // left and right rim columns, corners excluded
            const std::int32_t ylo = std::max(cy - d + 1, 0);
            const std::int32_t yhi = std::min(cy + d - 1, nx_ - 1);
            for (const std::int32_t gx : {cx - d, cx + d}) {
                if (gx < 0 || gx >= nx_) continue;
                for (std::int32_t gy = ylo; gy <= yhi; ++gy)
                    scan_cell(gy * nx_ + gx, query, q, rank, admissible, best, best_d2);
            }
        }
        return best;
    }

  private:
    template <class Admissible>
    void scan_cell(std::int32_t cell, std::int32_t query, Point q,
                   const std::vector<std::int32_t>& rank, Admissible& admissible,
                   std::int32_t& best, double& best_d2) const {
        for (std::int32_t k = start_[cell]; k < start_[cell + 1]; ++k) {
            const std::int32_t j = ids_[k];
            if (j == query || !admissible(j)) continue;
            const double d2 = dist2(points_[j], q);
            if (best < 0 || d2 < best_d2 || (d2 == best_d2 && rank[j] < rank[best])) {
                best = j;
                best_d2 = d2;
            }
        }
    }

    std::int32_t cell_coord(double v) const {
        const auto c = static_cast<std::int32_t>(std::floor((v - min_) / cell_));
        return std::clamp(c, 0, nx_ - 1);
    }
    std::int32_t flat_cell(Point p) const { return cell_coord(p.y) * nx_ + cell_coord(p.x); }

    double cell_ = 1.0;
    double min_ = 0.0;
    std::int32_t nx_ = 1;
    const Point* points_ = nullptr;
    std::vector<std::int32_t> start_;
    std::vector<std::int32_t> ids_;
};

}  // namespace rst
