#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geosim/routing.hpp"
#include "geosim/topology.hpp"

namespace geosim {

struct PathRecord {
    enum class Outcome { Delivered, Dropped, Undeliverable };

    NodeId src = 0;
    NodeId dst = 0;
    Protocol protocol = Protocol::GPSR;
    Outcome outcome = Outcome::Undeliverable;
    bool delivered = false;
    std::uint32_t hops = 0;
    double length = 0.0; // sum of per-hop Euclidean distances, meters
    bool used_itgr_list = false;
    std::vector<NodeId> trace;
    std::vector<ForwardMode> modes; // mode in which each trace node handled the packet
};

// Mutable per-trial protocol state: shaded-area caches for ITGR, the
// per-destination landmark tables for GLR. Reset between trials, persists
// across pairs within one.
struct TrialState {
    std::vector<ShadedCache> caches;
    std::vector<GlrTable> glr;

    static TrialState fresh(const Topology& t, Protocol protocol);
    std::uint64_t nodes_with_entries() const;
    std::uint64_t total_entries() const;
};

// Routes one packet to completion, applying landmark notifications to the
// state as they are emitted. ttl defaults to 4*N.
PathRecord route_once(const Topology& t, Protocol protocol, NodeId src, NodeId dst,
                      TrialState& state, int ttl = -1);

// Sends `repeats` sequential packets for every pair against a fresh
// state; the state warms up across sends and pairs. Records are returned
// in send order. The engines are noise-free, so the seed parameter is
// recorded for provenance only.
std::vector<PathRecord> warmup_and_measure(const Topology& t, Protocol protocol,
                                           const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                           std::uint32_t repeats, std::uint64_t seed);

// Geometry of one sweep point. area/holes default to the generator
// template when a count has no explicit override.
struct CountOverride {
    std::uint32_t n_nodes = 0;
    double area_w = 0.0;
    double area_h = 0.0;
    std::vector<HoleSpec> holes;
};

struct ExperimentConfig {
    GenConfig gen; // template: radius, max_rejects, default area/holes
    std::vector<std::uint32_t> node_counts{50, 100, 150, 200, 250, 300};
    std::uint32_t trials_per_count = 10;
    std::uint32_t pairs_per_trial = 100;
    // Sends per pair inside the sweep; the last send is the recorded one,
    // so the tables describe steady-state routes while the earlier sends
    // supply the learning traffic.
    std::uint32_t sends_per_pair = 2;
    std::vector<std::uint32_t> repeat_schedule{1, 2, 4, 8, 64, 128};
    std::vector<Protocol> protocols{Protocol::GPSR, Protocol::ITGR, Protocol::GLR};
    std::uint64_t master_seed = 1;
    // Workload shaping: pairs are drawn source-major from a small source
    // pool so per-source learning accumulates the way repeated traffic
    // from real senders would.
    double source_fraction = 0.055;
    std::uint32_t min_sources = 5;
    std::uint32_t repeat_series_n = 150;
    std::vector<CountOverride> per_count;
    std::uint32_t threads = 1;
};

struct MetricsRow {
    Protocol protocol = Protocol::GPSR;
    std::uint32_t n_nodes = 0;
    double avg_length = 0.0;
    double avg_hops = 0.0;
    double max_length = 0.0;
    std::uint32_t max_hops = 0;
    double type2_pct = 0.0;
    double nodes_with_entries = 0.0; // mean over trials
    double total_entries = 0.0;      // mean over trials
    std::uint32_t undelivered = 0;
    std::uint32_t delivered_count = 0;
    // Averages restricted to the pairs whose ITGR route was type 2; the
    // same pair mask is applied to every protocol so ratios are paired.
    double type2_avg_length = 0.0;
    double type2_avg_hops = 0.0;
};

struct RepeatRow {
    Protocol protocol = Protocol::ITGR;
    std::uint32_t repeats = 1;
    double avg_length = 0.0;
};

struct OverheadRow {
    std::uint32_t n_nodes = 0;
    double itgr_entries = 0.0; // mean total entries over trials
    double glr_entries = 0.0;
};

struct MetricsTable {
    std::vector<MetricsRow> rows;          // ordered by (n_nodes, protocol)
    std::vector<RepeatRow> repeat_series;  // ordered by (repeats, protocol)
};

// Seed splitting rule (documented, fixed): the trial seed for sweep point
// (n, trial) is mix_seed(master, n, trial); the pair-sampling stream is
// mix_seed(trial_seed, kPairSalt); repeat-series trials use
// mix_seed(master, kRepeatSalt, trial).
inline constexpr std::uint64_t kPairSalt = 0x70A1C5;
inline constexpr std::uint64_t kRepeatSalt = 0x5E51E5;

// Source-major pair workload: n_sources = clamp(round(frac*n), min_src,
// n-1) distinct sources, pairs_per_trial destinations split evenly across
// them, distinct per source.
std::vector<std::pair<NodeId, NodeId>> sample_pairs(std::size_t n_nodes, std::uint32_t n_pairs,
                                                    double source_fraction,
                                                    std::uint32_t min_sources,
                                                    std::uint64_t seed);

// Runs the full sweep: identical topologies and pair lists for every
// protocol, trial-level parallelism only, deterministic aggregation.
// Reruns with the same config are bit-identical regardless of `threads`.
MetricsTable run_experiment(const ExperimentConfig& cfg);

// Entry totals for ITGR vs GLR per node count after the 100-pair workload
// (means over trials). Extracts from a table when the caller already ran
// the sweep, or runs a dedicated ITGR+GLR sweep itself.
std::vector<OverheadRow> compare_overhead(const MetricsTable& table);
std::vector<OverheadRow> compare_overhead(const ExperimentConfig& cfg);

const char* protocol_name(Protocol p);
bool protocol_from_name(const std::string& name, Protocol& out);

} // namespace geosim
