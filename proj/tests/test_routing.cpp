#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "geosim/routing.hpp"
#include "geosim/rng.hpp"
#include "geosim/simulator.hpp"

using namespace geosim;

TEST_CASE("greedy_next_hop basics") {
    const Topology line = fixtures::line3();
    CHECK(greedy_next_hop(line, 0, line.position(2)) == NodeId{1});
    // Local minimum: the only neighbor is farther from the target.
    CHECK_FALSE(greedy_next_hop(line, 0, Point{-10, 0}).has_value());
    // Equidistant candidates resolve to the smaller id.
    const Topology fork = fixtures::fork();
    CHECK(greedy_next_hop(fork, 0, fork.position(3)) == NodeId{1});
}

TEST_CASE("greedy_next_hop strictly improves the distance") {
    GenConfig cfg;
    cfg.n_nodes = 70;
    cfg.area_w = cfg.area_h = 260;
    cfg.seed = 21;
    const Topology t = generate(cfg);
    SplitMix64 rng(5);
    for (int i = 0; i < 3000; ++i) {
        const auto u = static_cast<NodeId>(rng.next_below(t.size()));
        const Point target{rng.next_double(0, 260), rng.next_double(0, 260)};
        if (auto v = greedy_next_hop(t, u, target)) {
            CHECK(distance(t.position(*v), target) <
                  distance(t.position(u), target) - kGeomEps);
        }
    }
}

TEST_CASE("perimeter first hop follows the right-hand rule on the square") {
    const Topology sq = fixtures::square();
    Packet pkt;
    pkt.src = 0;
    pkt.dst = 4; // node at (20,5), beyond edge BC
    pkt.ttl = 100;
    pkt.mode = ForwardMode::Perimeter;
    pkt.local_min = sq.position(0);
    PerimeterState ps;
    ps.entry_point = sq.position(0);
    ps.best_cross_dist = distance(sq.position(0), sq.position(4));
    pkt.peri = ps;
    CHECK(perimeter_next_hop(sq, 0, pkt) == NodeId{1});
}

TEST_CASE("unreachable target ends in a perimeter loop, not an endless walk") {
    const Topology sq = fixtures::square();
    TrialState state = TrialState::fresh(sq, Protocol::GPSR);
    const PathRecord rec = route_once(sq, Protocol::GPSR, 0, 4, state);
    CHECK_FALSE(rec.delivered);
    CHECK(rec.outcome == PathRecord::Outcome::Undeliverable);
    CHECK(rec.hops < 10); // one face tour of the square
}

TEST_CASE("bar fixture: cold GPSR detours and emits the expected landmark") {
    const Topology t = fixtures::bar();
    REQUIRE(t.is_connected());

    TrialState gpsr = TrialState::fresh(t, Protocol::GPSR);
    const PathRecord cold = route_once(t, Protocol::GPSR, fixtures::kBarS, fixtures::kBarD, gpsr);
    CHECK(cold.delivered);
    const std::vector<NodeId> expected{0, 1, 2, 3, 11, 4, 5, 6, 7, 8, 9};
    CHECK(cold.trace == expected);

    // The landmark message surfaces via the ITGR cache.
    TrialState itgr = TrialState::fresh(t, Protocol::ITGR);
    const PathRecord first = route_once(t, Protocol::ITGR, fixtures::kBarS, fixtures::kBarD, itgr);
    CHECK(first.trace == expected); // cold ITGR == GPSR
    CHECK_FALSE(first.used_itgr_list);
    REQUIRE(itgr.caches[fixtures::kBarS].size() == 1);
    const auto& entry = itgr.caches[fixtures::kBarS].entries().front();
    CHECK(entry.p == t.position(fixtures::kBarP));
    CHECK(entry.b == t.position(fixtures::kBarB));
    CHECK(entry.b_node == fixtures::kBarB);
}

TEST_CASE("bar fixture: the warmed route is strictly shorter, two greedy legs") {
    const Topology t = fixtures::bar();
    TrialState itgr = TrialState::fresh(t, Protocol::ITGR);
    const PathRecord first = route_once(t, Protocol::ITGR, fixtures::kBarS, fixtures::kBarD, itgr);
    const PathRecord second = route_once(t, Protocol::ITGR, fixtures::kBarS, fixtures::kBarD, itgr);
    CHECK(first.delivered);
    CHECK(second.delivered);
    CHECK(second.used_itgr_list);
    CHECK(second.hops < first.hops);
    CHECK(second.length < first.length);
    CHECK(second.trace == std::vector<NodeId>{0, 10, 11, 5, 6, 7, 8, 9});

    // Warm path structure: the legs S->B and B->D sum exactly to the
    // recorded total, and every hop ran in greedy mode.
    const auto at_b = std::find(second.trace.begin(), second.trace.end(), fixtures::kBarB);
    REQUIRE(at_b != second.trace.end());
    double legs = 0.0;
    for (auto it = second.trace.begin(); it + 1 != second.trace.end(); ++it) {
        legs += distance(t.position(*it), t.position(*(it + 1)));
    }
    CHECK(legs == doctest::Approx(second.length).epsilon(1e-12));
    const bool all_greedy = std::all_of(second.modes.begin(), second.modes.end(),
                                        [](ForwardMode m) { return m == ForwardMode::Greedy; });
    CHECK(all_greedy);
}

TEST_CASE("cup fixture: the walk survives the bounce trap and exits the U") {
    const Topology t = fixtures::cup();
    REQUIRE(t.is_connected());
    TrialState itgr = TrialState::fresh(t, Protocol::ITGR);

    const PathRecord first = route_once(t, Protocol::ITGR, fixtures::kCupS, fixtures::kCupD, itgr);
    CHECK(first.delivered);
    CHECK(first.trace == std::vector<NodeId>{0, 1, 2, 1, 9, 10, 11, 7, 12, 13});
    // The landmark is L4: the first node closer to D than P that also has
    // a closer neighbor. The message carries P's location.
    REQUIRE(itgr.caches[0].size() == 1);
    CHECK(itgr.caches[0].entries().front().p == t.position(fixtures::kCupP));
    CHECK(itgr.caches[0].entries().front().b_node == fixtures::kCupL4);

    const PathRecord second = route_once(t, Protocol::ITGR, fixtures::kCupS, fixtures::kCupD, itgr);
    CHECK(second.delivered);
    CHECK(second.used_itgr_list);
    const PathRecord third = route_once(t, Protocol::ITGR, fixtures::kCupS, fixtures::kCupD, itgr);
    CHECK(third.delivered);
    CHECK(third.hops < first.hops);
    CHECK(third.trace == std::vector<NodeId>{0, 1, 9, 10, 11, 7, 12, 13});
}

TEST_CASE("itgr_send consults the cache and prepends the full chain") {
    const Topology t = fixtures::cluster();
    ShadedCache cache(0, t.position(0));
    cache.insert_with_merge({10, 0}, t.position(1), 1);
    cache.insert_with_merge({10, 5}, t.position(2), 2);

    Packet pkt;
    pkt.src = 0;
    pkt.dst = 3;
    pkt.ttl = 50;
    const ForwardAction act = itgr_send(t, 0, pkt, &cache);
    CHECK(act.kind == ForwardAction::Kind::Forward);
    CHECK(pkt.itgr_list == std::vector<NodeId>{2, 1});
    CHECK(pkt.used_itgr_list);
    CHECK(act.next == NodeId{2}); // the chain head is a direct neighbor
}

TEST_CASE("intermediate target is popped and greedy resumes") {
    const Topology t = fixtures::cluster();
    Packet pkt;
    pkt.src = 0;
    pkt.dst = 3;
    pkt.ttl = 50;
    pkt.itgr_list = {1};
    pkt.trace = {0};
    const ProcessResult res = itgr_process(t, 1, pkt, nullptr);
    CHECK(pkt.itgr_list.empty());
    CHECK(res.kind == ProcessResult::Kind::Forward);
    CHECK(res.next == NodeId{3});
}

TEST_CASE("ttl exhaustion drops the packet") {
    const Topology t = fixtures::bar();
    TrialState state = TrialState::fresh(t, Protocol::GPSR);
    const PathRecord rec = route_once(t, Protocol::GPSR, 0, fixtures::kBarD, state, 3);
    CHECK_FALSE(rec.delivered);
    CHECK(rec.outcome == PathRecord::Outcome::Dropped);
    CHECK(rec.hops <= 4);
}

TEST_CASE("glr: cold behaves exactly like GPSR") {
    const Topology t = fixtures::bar();
    TrialState gpsr = TrialState::fresh(t, Protocol::GPSR);
    TrialState glr = TrialState::fresh(t, Protocol::GLR);
    const PathRecord a = route_once(t, Protocol::GPSR, 0, fixtures::kBarD, gpsr);
    const PathRecord b = route_once(t, Protocol::GLR, 0, fixtures::kBarD, glr);
    CHECK(a.trace == b.trace);
}

TEST_CASE("glr: warm entry routes through the landmark, other dsts miss") {
    const Topology t = fixtures::bar();
    TrialState glr = TrialState::fresh(t, Protocol::GLR);
    const PathRecord first = route_once(t, Protocol::GLR, 0, fixtures::kBarD, glr);
    CHECK(first.delivered);
    REQUIRE(glr.glr[0].size() == 1);
    CHECK(glr.glr[0].at(fixtures::kBarD) == fixtures::kBarB);

    const PathRecord warm = route_once(t, Protocol::GLR, 0, fixtures::kBarD, glr);
    CHECK(warm.delivered);
    CHECK(warm.used_itgr_list);
    CHECK(warm.hops < first.hops);
    CHECK(warm.trace == std::vector<NodeId>{0, 10, 11, 5, 6, 7, 8, 9});

    // A nearby but different destination repeats the full detour: the
    // entry is keyed to the exact destination only.
    const PathRecord other = route_once(t, Protocol::GLR, 0, 8, glr);
    CHECK(other.delivered);
    CHECK_FALSE(other.used_itgr_list);
    CHECK(std::find(other.trace.begin(), other.trace.end(), fixtures::kBarP) !=
          other.trace.end());
}

TEST_CASE("deliver_landmark_msg inserts and merges at the source cache") {
    const Topology t = fixtures::bar();
    TrialState state = TrialState::fresh(t, Protocol::ITGR);
    const LandmarkMsg msg{0, 9, t.position(2), t.position(5), 5};
    deliver_landmark_msg(msg, state.caches);
    CHECK(state.caches[0].size() == 1);
    deliver_landmark_msg(msg, state.caches);
    CHECK(state.caches[0].size() == 1); // duplicate collapses
}

TEST_CASE("delivery guarantee and cold-start equivalence on random fields") {
    SplitMix64 seeds(808);
    for (int round = 0; round < 4; ++round) {
        GenConfig cfg;
        cfg.n_nodes = 60;
        cfg.area_w = cfg.area_h = 230;
        cfg.holes = {DiscHole{{115, 115}, 40}};
        cfg.seed = seeds.next_u64();
        cfg.max_rejects = 30000;
        const Topology t = generate(cfg);
        SplitMix64 rng(round + 1);
        for (int k = 0; k < 25; ++k) {
            const auto src = static_cast<NodeId>(rng.next_below(t.size()));
            auto dst = static_cast<NodeId>(rng.next_below(t.size()));
            if (dst == src) dst = (dst + 1) % static_cast<NodeId>(t.size());

            TrialState gpsr = TrialState::fresh(t, Protocol::GPSR);
            const PathRecord a = route_once(t, Protocol::GPSR, src, dst, gpsr);
            CHECK(a.delivered);

            TrialState itgr = TrialState::fresh(t, Protocol::ITGR);
            const PathRecord b = route_once(t, Protocol::ITGR, src, dst, itgr);
            CHECK(b.delivered);
            CHECK(a.trace == b.trace); // empty caches degrade ITGR to GPSR

            TrialState glr = TrialState::fresh(t, Protocol::GLR);
            const PathRecord c = route_once(t, Protocol::GLR, src, dst, glr);
            CHECK(c.trace == a.trace);
        }
    }
}

TEST_CASE("pure greedy fails at local minima instead of detouring") {
    const Topology t = fixtures::bar();
    TrialState state = TrialState::fresh(t, Protocol::Greedy);
    const PathRecord rec = route_once(t, Protocol::Greedy, 0, fixtures::kBarD, state);
    CHECK_FALSE(rec.delivered);
    CHECK(rec.outcome == PathRecord::Outcome::Undeliverable);
    CHECK(rec.trace == std::vector<NodeId>{0, 1, 2}); // stops at the local minimum
}
