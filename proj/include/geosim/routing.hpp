#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "geosim/cache.hpp"
#include "geosim/topology.hpp"

namespace geosim {

enum class Protocol { Greedy, GPSR, ITGR, GLR };

enum class ForwardMode { Greedy, Perimeter };

// Face-routing state carried by perimeter-mode packets. entry_point is
// the local minimum where the current perimeter phase began; the crossing
// distance and first-edge fields implement face changes and tour-loop
// detection along the segment entry_point -> target.
struct PerimeterState {
    Point entry_point{};
    double best_cross_dist = 0.0;
    bool at_entry = true; // next hop sweeps from the ray toward the target
    NodeId prev_hop = 0;
    bool first_edge_set = false;
    NodeId first_from = 0;
    NodeId first_to = 0;
};

struct Packet {
    NodeId src = 0;
    NodeId dst = 0;
    ForwardMode mode = ForwardMode::Greedy;
    std::vector<NodeId> itgr_list; // intermediate targets <I1 ... Ik>
    std::optional<Point> local_min;
    std::optional<PerimeterState> peri;
    int ttl = 0;
    std::vector<NodeId> trace;
    bool used_itgr_list = false;
};

// Control message from a landmark node back to the packet's source.
// Carries the node ids alongside the locations: the landmark id feeds the
// ITGR list, dst keys the per-destination GLR store. target_loc is the
// location of the target the perimeter segment was walked for; the exit
// can overshoot that bearing, leaving the target outside the <P, B>
// wedge, so the receiver falls back to a sector anchored at the target.
struct LandmarkMsg {
    NodeId to_src = 0;
    NodeId dst = 0;
    Point local_min{};
    Point landmark{};
    NodeId landmark_node = 0;
    Point target_loc{};
};

// Per-source GLR store: one landmark per exact destination, latest wins.
using GlrTable = std::unordered_map<NodeId, NodeId>;

struct ForwardAction {
    enum class Kind { Forward, Dropped, Undeliverable };
    Kind kind = Kind::Undeliverable;
    NodeId next = 0;
};

struct ProcessResult {
    enum class Kind { Delivered, Forward, Dropped, Undeliverable };
    Kind kind = Kind::Undeliverable;
    NodeId next = 0;
    std::optional<LandmarkMsg> msg;
};

// Current target T of the packet: head of the ITGR list, else dst.
NodeId packet_target(const Packet& pkt);

// Neighbor of u strictly closer to target than u itself (by more than
// kGeomEps), minimizing the distance to the target; ties take the
// smallest node id. Empty when u is a local minimum.
std::optional<NodeId> greedy_next_hop(const Topology& t, NodeId u, const Point& target);

// One face-routing step (right-hand rule on the planar subgraph). Mutates
// pkt.peri: consumes the at_entry flag, applies face changes along the
// segment entry_point -> target, and tracks the first edge of the current
// face. Returns nothing when the face tour closed on itself
// (PerimeterLoop) or u has no planar neighbors.
std::optional<NodeId> perimeter_next_hop(const Topology& t, NodeId u, Packet& pkt);

// Forwarding decision at the node currently holding the packet. With a
// cache, resolves the landmark chain for the target and prepends it to
// the ITGR list first. Greedy when possible, otherwise records u as the
// local minimum and starts a perimeter phase. cache may be null (GPSR and
// GLR run the same engine without shaded areas); allow_perimeter=false
// yields the plain greedy protocol.
ForwardAction itgr_send(const Topology& t, NodeId u, Packet& pkt, ShadedCache* cache,
                        bool allow_perimeter = true);

// Arrival handling: delivery check, intermediate-target pop, greedy
// forwarding, or the perimeter step. A perimeter packet reverts to greedy
// at the first node closer to the target than the phase's entry point
// that also has a strictly closer neighbor; that node is the landmark and
// the result carries the notification message. A node closer than the
// entry point but without a closer neighbor restarts the perimeter phase
// there (mirrors GPSR's immediate greedy failure) without emitting.
ProcessResult itgr_process(const Topology& t, NodeId u, Packet& pkt, ShadedCache* cache,
                           bool allow_perimeter = true);

// GLR origination: consult the per-destination table at the source, then
// forward exactly like the cacheless engine.
ForwardAction glr_send(const Topology& t, NodeId u, Packet& pkt, const GlrTable& table);

// Instantaneous control-channel delivery: the source's shaded-area cache
// learns <local_min, landmark>.
void deliver_landmark_msg(const LandmarkMsg& msg, std::vector<ShadedCache>& caches);

// GLR counterpart: the source records dst -> landmark (latest wins).
void glr_store(const LandmarkMsg& msg, std::vector<GlrTable>& tables);

} // namespace geosim
