#include "geosim/routing.hpp"

#include <algorithm>
#include <cmath>

namespace geosim {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double angle_of(const Point& from, const Point& to) {
    return std::atan2(to.y - from.y, to.x - from.x);
}

// Clockwise angular distance from ref to a, mapped into (0, 2*pi]: the
// reference direction itself (and the previous hop sitting on it) sorts
// last, so the sweep only falls back to it when no other edge exists.
double cw_delta(double ref, double a) {
    double d = std::fmod(ref - a, kTwoPi);
    if (d < 0) d += kTwoPi;
    if (d <= 1e-12) d = kTwoPi;
    return d;
}

// Intersection point of segments ab and cd (closed endpoints); nullopt
// for parallel or non-crossing pairs.
std::optional<Point> segment_intersection(const Point& a, const Point& b,
                                          const Point& c, const Point& d) {
    const double rx = b.x - a.x, ry = b.y - a.y;
    const double sx = d.x - c.x, sy = d.y - c.y;
    const double denom = rx * sy - ry * sx;
    if (std::abs(denom) <= 1e-15) return std::nullopt;
    const double qpx = c.x - a.x, qpy = c.y - a.y;
    const double t = (qpx * sy - qpy * sx) / denom;
    const double s = (qpx * ry - qpy * rx) / denom;
    constexpr double eps = 1e-12;
    if (t < -eps || t > 1 + eps || s < -eps || s > 1 + eps) return std::nullopt;
    return Point{a.x + t * rx, a.y + t * ry};
}

Point target_point(const Topology& t, const Packet& pkt) {
    return t.position(packet_target(pkt));
}

void enter_perimeter(const Topology& t, NodeId u, Packet& pkt) {
    const Point here = t.position(u);
    pkt.mode = ForwardMode::Perimeter;
    pkt.local_min = here;
    PerimeterState ps;
    ps.entry_point = here;
    ps.best_cross_dist = distance(here, target_point(t, pkt));
    ps.at_entry = true;
    pkt.peri = ps;
}

} // namespace

NodeId packet_target(const Packet& pkt) {
    return pkt.itgr_list.empty() ? pkt.dst : pkt.itgr_list.front();
}

std::optional<NodeId> greedy_next_hop(const Topology& t, NodeId u, const Point& target) {
    const double here = distance(t.position(u), target);
    std::optional<NodeId> best;
    double best_dist = here - kGeomEps;
    for (NodeId v : t.udg_neighbors(u)) {
        const double d = distance(t.position(v), target);
        if (d < best_dist) {
            best = v;
            best_dist = d;
        }
    }
    return best;
}

std::optional<NodeId> perimeter_next_hop(const Topology& t, NodeId u, Packet& pkt) {
    PerimeterState& ps = *pkt.peri;
    const Point here = t.position(u);
    const Point target = target_point(t, pkt);

    const auto& nbrs = t.planar_neighbors(u);
    if (nbrs.empty()) return std::nullopt;

    const double ref = ps.at_entry ? angle_of(here, target)
                                   : angle_of(here, t.position(ps.prev_hop));
    ps.at_entry = false;

    // Planar neighbors in clockwise sweep order from the reference ray.
    std::vector<std::pair<double, NodeId>> order;
    order.reserve(nbrs.size());
    for (NodeId v : nbrs) {
        order.emplace_back(cw_delta(ref, angle_of(here, t.position(v))), v);
    }
    std::sort(order.begin(), order.end());

    bool face_changed = false;
    NodeId chosen = order.back().second;
    for (const auto& [delta, v] : order) {
        const auto x = segment_intersection(here, t.position(v), ps.entry_point, target);
        if (x && distance(*x, target) < ps.best_cross_dist - kGeomEps) {
            // The candidate edge finishes the current face: note the new
            // crossing and continue the sweep on the next face.
            ps.best_cross_dist = distance(*x, target);
            face_changed = true;
            continue;
        }
        chosen = v;
        break;
    }

    if (!face_changed && ps.first_edge_set && ps.first_from == u && ps.first_to == chosen) {
        return std::nullopt; // completed a full tour of the face
    }
    if (face_changed || !ps.first_edge_set) {
        ps.first_edge_set = true;
        ps.first_from = u;
        ps.first_to = chosen;
    }
    ps.prev_hop = u;
    return chosen;
}

ForwardAction itgr_send(const Topology& t, NodeId u, Packet& pkt, ShadedCache* cache,
                        bool allow_perimeter) {
    if (pkt.ttl <= 0) return {ForwardAction::Kind::Dropped, 0};

    NodeId target_id = packet_target(pkt);
    if (cache != nullptr) {
        auto chain = cache->lookup_chain(t.position(target_id), target_id);
        // Keep only landmarks the packet has neither visited nor already
        // scheduled: re-targeting a node the packet has been at sends it
        // around the same cycle until the ttl burns out.
        std::erase_if(chain, [&](NodeId b) {
            return std::find(pkt.trace.begin(), pkt.trace.end(), b) != pkt.trace.end() ||
                   std::find(pkt.itgr_list.begin(), pkt.itgr_list.end(), b) !=
                       pkt.itgr_list.end() ||
                   b == u;
        });
        if (!chain.empty()) {
            pkt.itgr_list.insert(pkt.itgr_list.begin(), chain.begin(), chain.end());
            pkt.used_itgr_list = true;
            target_id = chain.front();
        }
    }

    const Point target = t.position(target_id);
    if (auto v = greedy_next_hop(t, u, target)) {
        pkt.mode = ForwardMode::Greedy;
        pkt.peri.reset();
        return {ForwardAction::Kind::Forward, *v};
    }
    if (!allow_perimeter) return {ForwardAction::Kind::Undeliverable, 0};

    enter_perimeter(t, u, pkt);
    if (auto w = perimeter_next_hop(t, u, pkt)) {
        return {ForwardAction::Kind::Forward, *w};
    }
    return {ForwardAction::Kind::Undeliverable, 0};
}

ProcessResult itgr_process(const Topology& t, NodeId u, Packet& pkt, ShadedCache* cache,
                           bool allow_perimeter) {
    if (u == pkt.dst) return {ProcessResult::Kind::Delivered, 0, std::nullopt};

    const auto forward = [&](ForwardAction a, std::optional<LandmarkMsg> msg) -> ProcessResult {
        switch (a.kind) {
            case ForwardAction::Kind::Forward:
                return {ProcessResult::Kind::Forward, a.next, std::move(msg)};
            case ForwardAction::Kind::Dropped:
                return {ProcessResult::Kind::Dropped, 0, std::move(msg)};
            case ForwardAction::Kind::Undeliverable:
            default:
                return {ProcessResult::Kind::Undeliverable, 0, std::move(msg)};
        }
    };

    if (!pkt.itgr_list.empty() && pkt.itgr_list.front() == u) {
        pkt.itgr_list.erase(pkt.itgr_list.begin());
        pkt.mode = ForwardMode::Greedy;
        pkt.peri.reset();
        return forward(itgr_send(t, u, pkt, cache, allow_perimeter), std::nullopt);
    }

    if (pkt.mode == ForwardMode::Greedy) {
        return forward(itgr_send(t, u, pkt, cache, allow_perimeter), std::nullopt);
    }

    // Perimeter mode.
    PerimeterState& ps = *pkt.peri;
    const Point target = target_point(t, pkt);
    const double du = distance(t.position(u), target);
    if (du < distance(ps.entry_point, target) - kGeomEps) {
        bool has_closer_neighbor = false;
        for (NodeId v : t.udg_neighbors(u)) {
            if (distance(t.position(v), target) < du - kGeomEps) {
                has_closer_neighbor = true;
                break;
            }
        }
        if (has_closer_neighbor) {
            LandmarkMsg msg{pkt.src, pkt.dst, *pkt.local_min, t.position(u), u, target};
            pkt.mode = ForwardMode::Greedy;
            pkt.peri.reset();
            return forward(itgr_send(t, u, pkt, cache, allow_perimeter), msg);
        }
        // Closer than the entry point but itself a local minimum: in GPSR
        // the packet would flip to greedy and fail straight back into
        // perimeter mode here, so restart the phase at u in one step.
        enter_perimeter(t, u, pkt);
        if (auto w = perimeter_next_hop(t, u, pkt)) {
            return {ProcessResult::Kind::Forward, *w, std::nullopt};
        }
        return {ProcessResult::Kind::Undeliverable, 0, std::nullopt};
    }

    if (auto w = perimeter_next_hop(t, u, pkt)) {
        return {ProcessResult::Kind::Forward, *w, std::nullopt};
    }
    return {ProcessResult::Kind::Undeliverable, 0, std::nullopt};
}

ForwardAction glr_send(const Topology& t, NodeId u, Packet& pkt, const GlrTable& table) {
    if (pkt.itgr_list.empty()) {
        if (auto it = table.find(pkt.dst); it != table.end() && it->second != u) {
            pkt.itgr_list.push_back(it->second);
            pkt.used_itgr_list = true;
        }
    }
    return itgr_send(t, u, pkt, nullptr);
}

void deliver_landmark_msg(const LandmarkMsg& msg, std::vector<ShadedCache>& caches) {
    ShadedCache& cache = caches.at(msg.to_src);
    cache.insert_with_merge(msg.local_min, msg.landmark, msg.landmark_node);
    // The exit point can overshoot the target's bearing, leaving the one
    // target this detour was walked for outside the <P, B> wedge; the
    // source would then re-detour identically on every send. Anchor a
    // sector at the target itself unless some entry already forwards it
    // through another landmark (an entry whose landmark is the target
    // cannot: the detour just happened on the way to that landmark).
    bool forwarded = false;
    for (const auto& e : cache.entries()) {
        if (distance(e.b, msg.target_loc) <= kGeomEps) continue;
        if (e.b_node == msg.landmark_node) continue; // the exit we just learned
        if (in_shaded_area(cache.owner_loc(), e.p, e.b, msg.target_loc)) {
            forwarded = true;
            break;
        }
    }
    if (!forwarded) {
        cache.insert_with_merge(msg.target_loc, msg.landmark, msg.landmark_node);
    }
}

void glr_store(const LandmarkMsg& msg, std::vector<GlrTable>& tables) {
    tables.at(msg.to_src)[msg.dst] = msg.landmark_node;
}

} // namespace geosim
