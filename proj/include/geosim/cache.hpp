#pragma once

#include <cstdint>
#include <vector>

#include "geosim/geometry.hpp"
#include "geosim/topology.hpp"

namespace geosim {

// One learned shaded area: the wedge behind a hole, bounded by the rays
// from the owning source through the local minimum p and the landmark b.
// b_node is the landmark's node id, needed when building ITGR lists.
struct ShadedEntry {
    Point p;
    Point b;
    NodeId b_node = 0;
    std::uint64_t last_hit = 0;

    Sector sector() const { return Sector{p, b}; }
};

// Per-node store of shaded areas with the entry-combining rules applied
// on every insert. Owned by exactly one simulated node; the simulator
// only touches it between packet events.
class ShadedCache {
public:
    static constexpr std::size_t kDefaultCap = 64;

    ShadedCache() = default;
    ShadedCache(NodeId owner, Point owner_loc, std::size_t cap = kDefaultCap)
        : owner_(owner), owner_loc_(owner_loc), cap_(cap) {}

    NodeId owner() const { return owner_; }
    const Point& owner_loc() const { return owner_loc_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<ShadedEntry>& entries() const { return entries_; }
    std::uint64_t rejected_count() const { return rejected_; }

    // Resolves the landmark chain for a target: while the current target
    // lies in some entry's shaded area, its landmark becomes the next
    // target. Stops when uncovered, on a repeated landmark, or at depth 8.
    // Returns ids in forwarding order <B_k, ..., B_1> (outermost first);
    // empty when the target is uncovered. Among covering entries the one
    // with the landmark nearest to the owner wins (ties: smaller node id).
    std::vector<NodeId> lookup_chain(const Point& target, NodeId target_id);

    // Inserts <p, b> after classifying it against existing entries and
    // applying the first matching combine rule. Entries synthesized by the
    // straddle rules re-enter the pipeline once. Degenerate entries are
    // dropped silently (counted in rejected_count). At capacity the least
    // recently hit entry is evicted.
    void insert_with_merge(const Point& p, const Point& b, NodeId b_node);

    // True when q lies in some entry's shaded area.
    bool coverage_contains(const Point& q) const;

private:
    bool degenerate(const Point& p, const Point& b) const;
    void insert_impl(ShadedEntry e, int pass);

    NodeId owner_ = 0;
    Point owner_loc_{};
    std::size_t cap_ = kDefaultCap;
    std::vector<ShadedEntry> entries_;
    std::uint64_t clock_ = 0;
    std::uint64_t rejected_ = 0;
};

} // namespace geosim
