#pragma once

#include <cstdint>
#include <vector>

#include "rst/tree.hpp"

namespace rst {

/// Finite-window stand-in for "semi-infinite": a subtree counts as surviving
/// when it reaches beyond cut_radius; geometry is only read off at radii up
/// to analysis_radius, keeping a buffer against window truncation.
struct SurvivorConfig {
    double cut_radius = 0.0;
    double analysis_radius = 0.0;
};

/// Default proxy: cut at 0.8 * window, analyse up to 0.5 * window.
SurvivorConfig default_survivor_config(const PointSet& ps);

void validate_survivor_config(const SurvivorConfig& cfg, const PointSet& ps);

/// Ancestor-to-descendant chain; norms strictly increase along `vertices`.
struct PathProxy {
    std::vector<std::int32_t> vertices;
};

/// For every vertex, the largest norm reached in its subtree (itself
/// included). One bottom-up pass over norm_order.
std::vector<double> subtree_reach(const Tree& t);

/// Mask of vertices whose subtree reaches beyond cut_radius.
std::vector<char> surviving_mask(const Tree& t, const SurvivorConfig& cfg);

/// The surviving vertices as a sorted index list.
std::vector<std::int32_t> surviving_set(const Tree& t, const SurvivorConfig& cfg);

/// Number of intersections of the circle of radius r with surviving edges
/// [X, A(X)] (X surviving). Rejects r outside (0, analysis_radius].
long chi(const Tree& t, double r, const SurvivorConfig& cfg);
long chi(const Tree& t, double r, const SurvivorConfig& cfg, const std::vector<char>& mask);

/// Same count restricted to the arc {r e^(i a) : |a| <= 1/r} of length 2.
/// Rejects r <= 2/pi or r > analysis_radius.
long chi_tilde(const Tree& t, double r, const SurvivorConfig& cfg);
long chi_tilde(const Tree& t, double r, const SurvivorConfig& cfg, const std::vector<char>& mask);

enum class Side { leftmost, rightmost };

/// Extreme surviving path from x: at each step picks the surviving child of
/// largest (rightmost) or smallest (leftmost) oriented angle, until no
/// surviving child remains. Rejects x outside the surviving set.
PathProxy extreme_path(const Tree& t, std::int32_t x, Side side, const SurvivorConfig& cfg);

/// All distinct maximal surviving paths from the origin, truncated at
/// analysis_radius, whose terminal vertex has argument within half_width of
/// theta. Duplicates arising from branches that split only beyond
/// analysis_radius are merged.
std::vector<PathProxy> directional_paths(const Tree& t, double theta, double half_width,
                                         const SurvivorConfig& cfg);

/// Number of vertices of the proxy spine (the surviving path whose terminal
/// argument is closest to 0) with norm < r and at least one surviving child
/// off the spine. The origin is not counted.
long spine_bifurcations(const Tree& t, const SurvivorConfig& cfg, double r);

/// True iff every point inside the open ball B((center_abscissa,0),
/// ball_radius) has the same ancestor in the RST and in the DSF built on the
/// same point set. Rejects balls within one ball_radius of the window edge.
bool dsf_rst_agreement(const PointSet& ps, double center_abscissa, double ball_radius);
bool dsf_rst_agreement(const Tree& t, const Forest& f, double center_abscissa,
                       double ball_radius);

}  // namespace rst
