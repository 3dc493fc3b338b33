#include "geosim/geometry.hpp"

namespace geosim {

LineCoeffs line_through(const Point& a, const Point& b) {
    if (distance(a, b) <= kGeomEps) {
        throw DegenerateLine("line_through: coincident points");
    }
    return LineCoeffs{b.y - a.y, -(b.x - a.x), b.x * a.y - a.x * b.y};
}

double side_value(const LineCoeffs& l, const Point& q) {
    return l.a * q.x + l.b * q.y + l.c;
}

SideRelation relate_sides(const LineCoeffs& l, const Point& q1, const Point& q2) {
    const double v1 = side_value(l, q1);
    const double v2 = side_value(l, q2);
    if (std::abs(v1) <= kGeomEps || std::abs(v2) <= kGeomEps) {
        return SideRelation::Boundary;
    }
    return (v1 * v2 < 0.0) ? SideRelation::Opposite : SideRelation::Same;
}

bool collinear(const Point& s, const Point& p, const Point& b) {
    // Cross product of (p-s) x (b-s); equals the side value of b against
    // line s->p up to sign.
    const double cross = (p.x - s.x) * (b.y - s.y) - (p.y - s.y) * (b.x - s.x);
    return std::abs(cross) <= kGeomEps;
}

double sector_angle(const Point& s, const Point& p, const Point& b) {
    const double ux = p.x - s.x, uy = p.y - s.y;
    const double vx = b.x - s.x, vy = b.y - s.y;
    const double cross = ux * vy - uy * vx;
    const double dot = ux * vx + uy * vy;
    return std::atan2(std::abs(cross), dot);
}

namespace {

void require_sector(const Point& s, const Point& p, const Point& b, const char* who) {
    if (distance(s, p) <= kGeomEps || distance(s, b) <= kGeomEps ||
        distance(p, b) <= kGeomEps || collinear(s, p, b)) {
        throw DegenerateSector(std::string(who) + ": S, P, B do not bound a sector");
    }
}

} // namespace

bool in_shaded_area(const Point& s, const Point& p, const Point& b, const Point& d) {
    require_sector(s, p, b, "in_shaded_area");
    const LineCoeffs sb = line_through(s, b);
    const LineCoeffs sp = line_through(s, p);
    const LineCoeffs bp = line_through(b, p);
    if (relate_sides(sb, d, p) == SideRelation::Opposite) return false;
    if (relate_sides(sp, d, b) == SideRelation::Opposite) return false;
    return relate_sides(bp, d, s) != SideRelation::Same;
}

bool wedge_contains(const Point& s, const Sector& sec, const Point& q) {
    const LineCoeffs sb = line_through(s, sec.b);
    const LineCoeffs sp = line_through(s, sec.p);
    return relate_sides(sb, q, sec.p) != SideRelation::Opposite &&
           relate_sides(sp, q, sec.b) != SideRelation::Opposite;
}

namespace {

bool wedges_overlap(const Point& s, const Sector& a, const Sector& b) {
    // Two closed wedges narrower than pi intersect iff one contains a
    // boundary ray of the other.
    return wedge_contains(s, a, b.b) || wedge_contains(s, a, b.p) ||
           wedge_contains(s, b, a.b) || wedge_contains(s, b, a.p);
}

} // namespace

MergeCase classify_overlap(const Point& s, const Sector& old, const Sector& nw) {
    require_sector(s, old.p, old.b, "classify_overlap(old)");
    require_sector(s, nw.p, nw.b, "classify_overlap(new)");

    if (distance(old.b, nw.b) <= kGeomEps) {
        // Shared landmark: the wedges share ray S->B, so coverage reduces
        // to which local-minimum ray lies inside the other wedge. The
        // old-covers-new test runs first so identical entries collapse
        // onto the existing one.
        const LineCoeffs s_newp = line_through(s, nw.p);
        if (relate_sides(s_newp, nw.b, old.p) != SideRelation::Same) {
            return MergeCase::SameLm_OldCoversNew;
        }
        const LineCoeffs s_oldp = line_through(s, old.p);
        if (relate_sides(s_oldp, nw.b, nw.p) != SideRelation::Same) {
            return MergeCase::SameLm_NewCoversOld;
        }
        return MergeCase::Disjoint;
    }

    if (!wedges_overlap(s, old, nw)) {
        return MergeCase::Disjoint;
    }

    const SideRelation vs_old_b = relate_sides(line_through(s, old.b), nw.b, nw.p);
    const SideRelation vs_old_p = relate_sides(line_through(s, old.p), nw.b, nw.p);
    if (vs_old_b == SideRelation::Opposite && vs_old_p == SideRelation::Opposite) {
        return MergeCase::DiffLm_NewCoversOld;
    }
    if (vs_old_b == SideRelation::Same && vs_old_p == SideRelation::Same) {
        return MergeCase::DiffLm_OldCoversNew;
    }
    if (vs_old_b == SideRelation::Opposite && vs_old_p == SideRelation::Same) {
        return MergeCase::DiffLm_StraddleKeepOld;
    }
    if (vs_old_b == SideRelation::Same && vs_old_p == SideRelation::Opposite) {
        return MergeCase::DiffLm_StraddleSplit;
    }
    // Boundary-grazing pairs match none of the four patterns.
    return MergeCase::Disjoint;
}

} // namespace geosim
