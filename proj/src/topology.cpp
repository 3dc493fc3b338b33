#include "geosim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "geosim/rng.hpp"

namespace geosim {

bool inside_hole(const HoleSpec& hole, const Point& q) {
    if (const auto* disc = std::get_if<DiscHole>(&hole)) {
        return distance_sq(disc->center, q) < disc->r * disc->r - kGeomEps;
    }
    const auto& poly = std::get<PolygonHole>(hole).vertices;
    // Convex polygon: strictly inside iff strictly on the interior side of
    // every edge. Works for either vertex orientation by fixing the sign
    // from the first non-degenerate edge.
    double ref_sign = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % poly.size()];
        const double cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
        if (std::abs(cross) <= kGeomEps) return false; // on an edge line
        if (ref_sign == 0.0) {
            ref_sign = cross > 0 ? 1.0 : -1.0;
        } else if (cross * ref_sign < 0) {
            return false;
        }
    }
    return true;
}

Topology::Topology(std::vector<Point> nodes, double radius, std::vector<HoleSpec> holes)
    : nodes_(std::move(nodes)), radius_(radius), holes_(std::move(holes)) {
    const std::size_t n = nodes_.size();
    udg_.assign(n, {});
    const double r_sq = radius_ * radius_;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (distance_sq(nodes_[u], nodes_[v]) <= r_sq) {
                udg_[u].push_back(static_cast<NodeId>(v));
                udg_[v].push_back(static_cast<NodeId>(u));
            }
        }
    }
    // Neighbor sets built in ascending order already; keep the invariant
    // explicit for future edits.
    for (auto& adj : udg_) std::sort(adj.begin(), adj.end());

    // Gabriel subgraph: drop (u,v) when some w sits strictly inside the
    // disc with diameter uv.
    planar_.assign(n, {});
    for (std::size_t u = 0; u < n; ++u) {
        for (NodeId v : udg_[u]) {
            if (v < u) continue;
            const Point mid{(nodes_[u].x + nodes_[v].x) / 2.0,
                            (nodes_[u].y + nodes_[v].y) / 2.0};
            const double disc_sq = distance_sq(nodes_[u], nodes_[v]) / 4.0;
            bool keep = true;
            for (std::size_t w = 0; w < n; ++w) {
                if (w == u || w == v) continue;
                if (distance_sq(nodes_[w], mid) < disc_sq - kGeomEps) {
                    keep = false;
                    break;
                }
            }
            if (keep) {
                planar_[u].push_back(v);
                planar_[v].push_back(static_cast<NodeId>(u));
            }
        }
    }
    for (auto& adj : planar_) std::sort(adj.begin(), adj.end());
}

void Topology::check_id(NodeId u) const {
    if (u >= nodes_.size()) {
        throw UnknownNode("node id " + std::to_string(u) + " out of range");
    }
}

const Point& Topology::position(NodeId u) const {
    check_id(u);
    return nodes_[u];
}

const std::vector<NodeId>& Topology::udg_neighbors(NodeId u) const {
    check_id(u);
    return udg_[u];
}

const std::vector<NodeId>& Topology::planar_neighbors(NodeId u) const {
    check_id(u);
    return planar_[u];
}

bool Topology::is_connected() const {
    if (nodes_.empty()) return true;
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<NodeId> stack{0};
    seen[0] = true;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : udg_[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++visited;
                stack.push_back(v);
            }
        }
    }
    return visited == nodes_.size();
}

Topology generate(const GenConfig& cfg) {
    if (cfg.n_nodes < 2) throw ConfigError("n_nodes: must be >= 2");
    if (cfg.area_w <= 0 || cfg.area_h <= 0) throw ConfigError("area_w/area_h: must be > 0");
    if (cfg.radius <= 0) throw ConfigError("radius: must be > 0");

    SplitMix64 rng(cfg.seed);
    // Cap on consecutive in-hole rejections per point; hit only when the
    // holes cover essentially the whole rectangle.
    constexpr std::uint32_t kPointAttempts = 100000;

    for (std::uint32_t attempt = 0; attempt < cfg.max_rejects; ++attempt) {
        std::vector<Point> pts;
        pts.reserve(cfg.n_nodes);
        for (std::uint32_t i = 0; i < cfg.n_nodes; ++i) {
            std::uint32_t tries = 0;
            for (;;) {
                const Point q{rng.next_double(0.0, cfg.area_w),
                              rng.next_double(0.0, cfg.area_h)};
                const bool in_hole = std::any_of(
                    cfg.holes.begin(), cfg.holes.end(),
                    [&](const HoleSpec& h) { return inside_hole(h, q); });
                if (!in_hole) {
                    pts.push_back(q);
                    break;
                }
                if (++tries >= kPointAttempts) {
                    throw GenerationFailed("holes leave no room for nodes");
                }
            }
        }
        Topology t(std::move(pts), cfg.radius, cfg.holes);
        if (t.is_connected()) return t;
    }
    throw GenerationFailed("no connected field within max_rejects=" +
                           std::to_string(cfg.max_rejects) + " attempts (seed " +
                           std::to_string(cfg.seed) + ")");
}

const std::vector<NodeId>& neighbors(const Topology& t, NodeId u, bool planar) {
    return planar ? t.planar_neighbors(u) : t.udg_neighbors(u);
}

} // namespace geosim
