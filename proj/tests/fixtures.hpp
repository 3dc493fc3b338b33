// Hand-built topologies for the routing and simulator tests. All
// adjacency and route claims in the tests were derived on paper from
// these coordinates (r = 10 unless stated).
#pragma once

#include "geosim/topology.hpp"

namespace fixtures {

using geosim::Point;
using geosim::Topology;

// A vertical void "bar" between a west source and an east destination.
// Greedy S->D funnels into the local minimum P; the detour runs south
// around the bar and re-emerges at B. A south lane (G1, G2) makes B
// greedily reachable from S, so a warmed cache shortcuts the detour.
//
// ids: 0 S(0,0)   1 A(10,0)    2 P(20,0)    3 W1(14,-7)  4 W2(18,-13)
//      5 B(25,-14) 6 E1(33,-10) 7 E2(41,-5) 8 E3(45,-2)  9 D(50,0)
//     10 G1(8,-6) 11 G2(16,-11)
inline Topology bar() {
    return Topology({{0, 0},
                     {10, 0},
                     {20, 0},
                     {14, -7},
                     {18, -13},
                     {25, -14},
                     {33, -10},
                     {41, -5},
                     {45, -2},
                     {50, 0},
                     {8, -6},
                     {16, -11}},
                    10.0);
}
inline constexpr geosim::NodeId kBarS = 0, kBarP = 2, kBarB = 5, kBarD = 9, kBarG1 = 10;

// A cup ("U") opening toward the source: the spine S-M1-P dead-ends at P
// inside the cup, and the only way out of the trap retraces M1. The
// first node that is both closer to D than P and has a closer neighbor
// is L4 on the lower arm.
//
// ids: 0 S(0,0)  1 M1(10,0)  2 P(20,0)
//      3 U1(5,8) 4 U2(13,9)  5 U3(21,10) 6 U4(28,9)  7 R(31,0)
//      8 L1(5,-8) 9 L2(13,-9) 10 L3(21,-10) 11 L4(28,-9)
//     12 E(40,0) 13 D(50,0)
inline Topology cup() {
    return Topology({{0, 0},
                     {10, 0},
                     {20, 0},
                     {5, 8},
                     {13, 9},
                     {21, 10},
                     {28, 9},
                     {31, 0},
                     {5, -8},
                     {13, -9},
                     {21, -10},
                     {28, -9},
                     {40, 0},
                     {50, 0}},
                    10.0);
}
inline constexpr geosim::NodeId kCupS = 0, kCupM1 = 1, kCupP = 2, kCupL3 = 10, kCupL4 = 11,
                                kCupD = 13;

// Unit square plus an unreachable east node: perimeter-mode probes.
// ids: 0 A(0,0) 1 B(10,0) 2 C(10,10) 3 D(0,10) 4 T(20,5)
inline Topology square() {
    return Topology({{0, 0}, {10, 0}, {10, 10}, {0, 10}, {20, 5}}, 10.0);
}

// Straight line of three nodes 30 m apart (r = 40).
inline Topology line3() {
    return Topology({{0, 0}, {30, 0}, {60, 0}}, 40.0);
}

// Equidistant fork for the greedy tie-break: ids 0 A, 1 B, 2 B', 3 T.
inline Topology fork() {
    return Topology({{0, 0}, {30, 0}, {0, 30}, {30, 30}}, 40.0);
}

// Small dense cluster for chain-prepend checks: ids 0 S, 1 X, 2 Y, 3 T.
inline Topology cluster() {
    return Topology({{0, 0}, {8, 6}, {0, 9}, {12, 2}}, 15.0);
}

// A vertical slab of empty space (x in (38,50), |y| <= 30) separating one
// source from a fan of destinations. Every fan node is shadowed: greedy
// traps on the west rim and the detour crosses the south tip. Returns the
// topology plus the source id and the 20 destination ids in send order.
struct Fan {
    Topology topo;
    geosim::NodeId src;
    std::vector<geosim::NodeId> dests;
};

inline Fan make_fan() {
    std::vector<Point> pts;
    const auto add = [&](double x, double y) {
        pts.push_back({x, y});
        return static_cast<geosim::NodeId>(pts.size() - 1);
    };
    const geosim::NodeId src = add(0, 0);
    // approach spine
    add(10, 0);
    add(20, 0);
    add(30, 0);
    add(38, 0); // the central local minimum
    // west rim
    for (double y : {10.0, 20.0, 28.0, -10.0, -20.0, -28.0}) add(38, y);
    // tips
    add(44, 34);
    add(50, 30);
    add(44, -34);
    add(50, -28);
    // east rim
    for (double y : {0.0, 10.0, 20.0, -10.0, -20.0}) add(50, y);
    // mid column
    for (int k = 0; k <= 11; ++k) add(56, -25.0 + 5.0 * k);
    // southwest lane (keeps the south detour greedily reachable)
    add(7, -7);
    add(14, -14);
    add(21, -21);
    add(28, -28);
    add(36, -33);
    std::vector<geosim::NodeId> dests;
    for (int k = 0; k < 20; ++k) dests.push_back(add(62, 2.0 + k));
    return Fan{Topology(std::move(pts), 10.0), src, dests};
}

} // namespace fixtures
