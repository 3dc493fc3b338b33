#include "geosim/cache.hpp"

#include <algorithm>
#include <limits>

namespace geosim {

bool ShadedCache::degenerate(const Point& p, const Point& b) const {
    if (distance(p, b) <= kGeomEps) return true;
    if (distance(owner_loc_, p) <= kGeomEps || distance(owner_loc_, b) <= kGeomEps) return true;
    if (collinear(owner_loc_, p, b)) return true;
    // Wedges at or beyond a half-plane cannot be represented by the two
    // ray conditions; such entries only arise from degenerate detours.
    return sector_angle(owner_loc_, p, b) >= 3.14159265358979323846 - kAngleEps;
}

std::vector<NodeId> ShadedCache::lookup_chain(const Point& target, NodeId target_id) {
    std::vector<NodeId> chain;
    std::vector<NodeId> visited{target_id};
    Point cur = target;
    for (int depth = 0; depth < 8; ++depth) {
        ShadedEntry* best = nullptr;
        double best_dist = std::numeric_limits<double>::infinity();
        const double direct = distance(owner_loc_, cur);
        for (auto& e : entries_) {
            // Landmarks already on the chain cannot advance it; skipping
            // them (rather than aborting) lets another covering entry
            // extend the chain past a self-referencing one.
            if (std::find(visited.begin(), visited.end(), e.b_node) != visited.end()) {
                continue;
            }
            if (!in_shaded_area(owner_loc_, e.p, e.b, cur)) continue;
            const double d = distance(owner_loc_, e.b);
            // A landmark is only worth visiting when the two-leg estimate
            // stays in the ballpark of the straight line; wide wedges
            // otherwise divert short routes through far-off landmarks.
            if (d + distance(e.b, cur) > 2.0 * direct) continue;
            if (best == nullptr || d < best_dist ||
                (d == best_dist && e.b_node < best->b_node)) {
                best = &e;
                best_dist = d;
            }
        }
        if (best == nullptr) break;
        best->last_hit = ++clock_;
        chain.push_back(best->b_node);
        visited.push_back(best->b_node);
        cur = best->b;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

void ShadedCache::insert_with_merge(const Point& p, const Point& b, NodeId b_node) {
    insert_impl(ShadedEntry{p, b, b_node, 0}, 0);
}

void ShadedCache::insert_impl(ShadedEntry e, int pass) {
    if (degenerate(e.p, e.b)) {
        ++rejected_;
        return;
    }
    if (pass < 2) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const ShadedEntry old = entries_[i];
            switch (classify_overlap(owner_loc_, old.sector(), e.sector())) {
                case MergeCase::Disjoint:
                    continue;
                case MergeCase::SameLm_OldCoversNew:
                case MergeCase::DiffLm_OldCoversNew:
                    return; // existing entry already covers the new one
                case MergeCase::SameLm_NewCoversOld:
                case MergeCase::DiffLm_NewCoversOld:
                    // Re-enter at the same pass: each step removes an
                    // entry, so this terminates, and the new entry gets to
                    // absorb every old one it covers.
                    entries_.erase(entries_.begin() + i);
                    insert_impl(e, pass);
                    return;
                case MergeCase::DiffLm_StraddleKeepOld:
                    // Only the slice of the new wedge beyond the old
                    // landmark ray is uncovered: keep the old entry and
                    // store <old.b, new.b> for that slice.
                    insert_impl(ShadedEntry{old.b, e.b, e.b_node, 0}, pass + 1);
                    return;
                case MergeCase::DiffLm_StraddleSplit:
                    // The new wedge straddles the old landmark ray from the
                    // other side: the old entry is superseded by
                    // <new.b, old.b> plus the new entry itself.
                    entries_.erase(entries_.begin() + i);
                    insert_impl(ShadedEntry{e.b, old.b, old.b_node, 0}, pass + 1);
                    insert_impl(e, pass + 1);
                    return;
            }
        }
    }
    if (entries_.size() >= cap_) {
        auto lru = std::min_element(entries_.begin(), entries_.end(),
                                    [](const ShadedEntry& a, const ShadedEntry& b) {
                                        return a.last_hit < b.last_hit;
                                    });
        entries_.erase(lru);
    }
    e.last_hit = ++clock_;
    entries_.push_back(e);
}

bool ShadedCache::coverage_contains(const Point& q) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const ShadedEntry& e) {
        return in_shaded_area(owner_loc_, e.p, e.b, q);
    });
}

} // namespace geosim
