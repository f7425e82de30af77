#include "rst/geometry.hpp"

#include <algorithm>
#include <cstddef>

namespace rst {

namespace {

// Error-free transforms. two_sum/two_prod represent an exact result as a
// (head, tail) pair of doubles.
struct Expanded {
    double hi;
    double lo;
};

inline Expanded two_sum(double a, double b) {
    const double s = a + b;
    const double bv = s - a;
    const double av = s - bv;
    return {s, (a - av) + (b - bv)};
}

inline Expanded two_diff(double a, double b) { return two_sum(a, -b); }

inline Expanded two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Exact sign of a sum of doubles. Repeated two_sum sweeps distill the terms
// into a nonoverlapping expansion whose leading nonzero component carries the
// sign of the total.
int sign_of_sum(double* x, int n) {
    for (int pass = 0; pass < n; ++pass) {
        for (int i = 0; i + 1 < n; ++i) {
            const Expanded s = two_sum(x[i], x[i + 1]);
            x[i] = s.lo;
            x[i + 1] = s.hi;
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        if (x[i] > 0.0) return 1;
        if (x[i] < 0.0) return -1;
    }
    return 0;
}

// Relative filter bound for the orientation determinant (Shewchuk's ccwerrboundA).
constexpr double kOrientErrBound = 3.3306690621773724e-16;

}  // namespace

int orient(Point a, Point b, Point c) {
    const double detl = (b.x - a.x) * (c.y - a.y);
    const double detr = (b.y - a.y) * (c.x - a.x);
    const double det = detl - detr;

    double detsum;
    if (detl > 0.0) {
        if (detr <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = detl + detr;
    } else if (detl < 0.0) {
        if (detr >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = -detl - detr;
    } else {
        return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
    }
    if (std::abs(det) > kOrientErrBound * detsum) return det > 0.0 ? 1 : -1;

    // Filter failed: evaluate the determinant exactly. Each coordinate
    // difference and product is expanded into exact double pairs; the sign of
    // their 16-term sum is the orientation.
    const Expanded bx = two_diff(b.x, a.x);
    const Expanded cy = two_diff(c.y, a.y);
    const Expanded by = two_diff(b.y, a.y);
    const Expanded cx = two_diff(c.x, a.x);

    double terms[16];
    int n = 0;
    auto emit_product = [&terms, &n](Expanded u, Expanded v, double sign) {
        const Expanded hh = two_prod(u.hi, v.hi);
        const Expanded hl = two_prod(u.hi, v.lo);
        const Expanded lh = two_prod(u.lo, v.hi);
        const Expanded ll = two_prod(u.lo, v.lo);
        for (const Expanded& e : {hh, hl, lh, ll}) {
            terms[n++] = sign * e.hi;
            terms[n++] = sign * e.lo;
        }
    };
    emit_product(bx, cy, +1.0);
    emit_product(by, cx, -1.0);
    return sign_of_sum(terms, n);
}

bool open_segments_intersect(Point a1, Point a2, Point b1, Point b2) {
    const int o1 = orient(a1, a2, b1);
    const int o2 = orient(a1, a2, b2);
    const int o3 = orient(b1, b2, a1);
    const int o4 = orient(b1, b2, a2);

    if (o1 * o2 < 0 && o3 * o4 < 0) return true;  // proper crossing

    // Only a collinear overlap can still intersect open interiors; an
    // endpoint lying on the other segment is excluded by openness.
    if (o1 != 0 || o2 != 0 || o3 != 0 || o4 != 0) return false;

    // All four points collinear: compare 1d intervals along the longer axis.
    const bool use_x = std::abs(a2.x - a1.x) + std::abs(b2.x - b1.x) >=
                       std::abs(a2.y - a1.y) + std::abs(b2.y - b1.y);
    auto coord = [use_x](Point p) { return use_x ? p.x : p.y; };
    const double alo = std::min(coord(a1), coord(a2));
    const double ahi = std::max(coord(a1), coord(a2));
    const double blo = std::min(coord(b1), coord(b2));
    const double bhi = std::max(coord(b1), coord(b2));
    return std::max(alo, blo) < std::min(ahi, bhi);
}

CircleHits segment_circle_intersections(Point p, Point q, double r) {
    CircleHits hits;
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    const double a = dx * dx + dy * dy;
    if (a == 0.0) return hits;
    const double b = 2.0 * (p.x * dx + p.y * dy);
    const double c = norm2(p) - r * r;

    const double disc = b * b - 4.0 * a * c;
    // Tangencies (discriminant ~ 0) count as zero hits: they are measure-zero
    // and would make crossing counts unstable under jitter.
    const double scale = std::max(b * b, std::abs(4.0 * a * c));
    if (disc <= 1e-12 * std::max(scale, 1e-300)) return hits;

    const double sq = std::sqrt(disc);
    // Stable quadratic roots: avoid cancellation in -b +- sq.
    const double qq = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double t0 = qq / a;
    double t1 = (qq != 0.0) ? c / qq : t0;
    if (t0 > t1) std::swap(t0, t1);

    for (const double t : {t0, t1}) {
        if (t > 0.0 && t < 1.0) {
            hits.t[hits.count] = t;
            hits.point[hits.count] = Point{p.x + t * dx, p.y + t * dy};
            ++hits.count;
        }
    }
    return hits;
}

}  // namespace rst
