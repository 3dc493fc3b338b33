#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "geosim/geometry.hpp"

namespace geosim {

using NodeId = std::uint32_t;

struct DiscHole {
    Point center;
    double r = 0.0;
};

struct PolygonHole {
    std::vector<Point> vertices; // convex, >= 3 vertices
};

using HoleSpec = std::variant<DiscHole, PolygonHole>;

// True when q lies strictly inside the hole (boundary points are allowed
// node positions).
bool inside_hole(const HoleSpec& hole, const Point& q);

struct GenConfig {
    double area_w = 400.0;
    double area_h = 400.0;
    std::uint32_t n_nodes = 150;
    double radius = 40.0;
    std::vector<HoleSpec> holes;
    std::uint64_t seed = 0;
    std::uint32_t max_rejects = 30000;
};

// Static node field with unit-disk adjacency and its Gabriel subgraph.
// Immutable after construction; safe to share across threads.
class Topology {
public:
    Topology(std::vector<Point> nodes, double radius, std::vector<HoleSpec> holes = {});

    std::size_t size() const { return nodes_.size(); }
    double radius() const { return radius_; }
    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<HoleSpec>& holes() const { return holes_; }

    const Point& position(NodeId u) const;

    // Adjacency lists sorted ascending by node id.
    const std::vector<NodeId>& udg_neighbors(NodeId u) const;
    const std::vector<NodeId>& planar_neighbors(NodeId u) const;

    bool is_connected() const;

private:
    void check_id(NodeId u) const;

    std::vector<Point> nodes_;
    double radius_;
    std::vector<HoleSpec> holes_;
    std::vector<std::vector<NodeId>> udg_;
    std::vector<std::vector<NodeId>> planar_;
};

// Samples n_nodes points uniformly over the rectangle minus hole
// interiors and resamples whole fields until the unit-disk graph is
// connected. Deterministic in cfg.seed; throws GenerationFailed when
// max_rejects whole-field attempts are exhausted.
Topology generate(const GenConfig& cfg);

// Spec-surface helper: sorted neighbor list of u, from the planar or the
// full unit-disk adjacency.
const std::vector<NodeId>& neighbors(const Topology& t, NodeId u, bool planar);

} // namespace geosim
