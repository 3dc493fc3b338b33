#pragma once

#include <cmath>
#include <cstdint>

#include "geosim/errors.hpp"

namespace geosim {

// Absolute tolerance for side-of-line classification. Coordinates are
// meters and bounded by ~1e3, so signed line values stay well inside the
// exactly-representable double range; 1e-9 separates genuine boundary
// contact from rounding noise.
inline constexpr double kGeomEps = 1e-9;

// Sectors whose opening angle reaches pi (within this tolerance, radians)
// are rejected: they no longer describe a wedge bounded by two rays.
inline constexpr double kAngleEps = 1e-6;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point& a, const Point& b) = default;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance_sq(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Implicit line a*x + b*y + c = 0. Never both a == 0 and b == 0.
struct LineCoeffs {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

enum class SideRelation {
    Same,     // both points strictly on one side
    Opposite, // strictly separated by the line
    Boundary, // at least one point on the line within kGeomEps
};

// Outcome of comparing a new cache sector against an existing one for a
// fixed source S. "SameLm" = both sectors share the landmark point.
enum class MergeCase {
    Disjoint,
    SameLm_NewCoversOld,
    SameLm_OldCoversNew,
    DiffLm_NewCoversOld,
    DiffLm_OldCoversNew,
    DiffLm_StraddleKeepOld,
    DiffLm_StraddleSplit,
};

// A shaded-area sector seen from some source S: the wedge between rays
// S->b and S->p, cut off by the chord line through b and p.
struct Sector {
    Point p; // local minimum
    Point b; // landmark
};

// Line through A and B with the orientation convention
//   a = y_B - y_A,  b = -(x_B - x_A),  c = x_B*y_A - x_A*y_B,
// so both endpoints evaluate to zero exactly up to rounding.
LineCoeffs line_through(const Point& a, const Point& b);

// Signed value a*x + b*y + c of Q against L. Sign selects the half-plane;
// |value| <= kGeomEps counts as on the line.
double side_value(const LineCoeffs& l, const Point& q);

// Classifies where Q1 and Q2 sit relative to L. Boundary wins over
// Same/Opposite, so closed (>= / <=) conditions treat on-line points as
// satisfying both.
SideRelation relate_sides(const LineCoeffs& l, const Point& q1, const Point& q2);

// True when S, P, B are collinear within tolerance (no sector exists).
bool collinear(const Point& s, const Point& p, const Point& b);

// Opening angle of the wedge at S between rays S->p and S->b, in [0, pi].
double sector_angle(const Point& s, const Point& p, const Point& b);

// Membership test for the shaded area behind a hole, seen from S with
// local minimum P and landmark B. All three boundaries are closed:
//   1) D not strictly separated from P by line SB,
//   2) D not strictly separated from B by line SP,
//   3) D not strictly on the same side of line BP as S.
// Throws DegenerateSector when S, P, B are collinear.
bool in_shaded_area(const Point& s, const Point& p, const Point& b, const Point& d);

// Classifies how the sector of `nw` relates to the sector of `old` about
// source S. Entries sharing the landmark use the covering tests on lines
// S->P' / S->P; entries with distinct landmarks are first screened for
// angular overlap of their wedges (non-overlapping pairs are Disjoint) and
// then mapped through the four side-relation patterns against lines
// S->old.b and S->old.p. Identical entries classify as SameLm_OldCoversNew.
// Throws DegenerateSector when either entry is degenerate w.r.t. S.
MergeCase classify_overlap(const Point& s, const Sector& old, const Sector& nw);

// True when the closed wedge at S spanned by (sec.b, sec.p) contains the
// direction of S->q. Wedges are always narrower than pi, so this is the
// intersection of two closed half-plane conditions.
bool wedge_contains(const Point& s, const Sector& sec, const Point& q);

} // namespace geosim
