#include "geosim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "geosim/rng.hpp"

namespace geosim {

TrialState TrialState::fresh(const Topology& t, Protocol protocol) {
    TrialState s;
    if (protocol == Protocol::ITGR) {
        s.caches.reserve(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            s.caches.emplace_back(static_cast<NodeId>(i), t.nodes()[i]);
        }
    } else if (protocol == Protocol::GLR) {
        s.glr.resize(t.size());
    }
    return s;
}

std::uint64_t TrialState::nodes_with_entries() const {
    std::uint64_t n = 0;
    for (const auto& c : caches) n += c.size() > 0 ? 1 : 0;
    for (const auto& g : glr) n += g.empty() ? 0 : 1;
    return n;
}

std::uint64_t TrialState::total_entries() const {
    std::uint64_t n = 0;
    for (const auto& c : caches) n += c.size();
    for (const auto& g : glr) n += g.size();
    return n;
}

PathRecord route_once(const Topology& t, Protocol protocol, NodeId src, NodeId dst,
                      TrialState& state, int ttl) {
    PathRecord rec;
    rec.src = src;
    rec.dst = dst;
    rec.protocol = protocol;

    Packet pkt;
    pkt.src = src;
    pkt.dst = dst;
    pkt.ttl = ttl > 0 ? ttl : static_cast<int>(4 * t.size());
    pkt.trace.push_back(src);

    const auto cache_of = [&](NodeId u) -> ShadedCache* {
        return protocol == Protocol::ITGR ? &state.caches[u] : nullptr;
    };
    const bool allow_peri = protocol != Protocol::Greedy;

    const auto handle_msg = [&](const std::optional<LandmarkMsg>& msg) {
        if (!msg) return;
        if (protocol == Protocol::ITGR) deliver_landmark_msg(*msg, state.caches);
        if (protocol == Protocol::GLR) glr_store(*msg, state.glr);
    };

    ForwardAction first = protocol == Protocol::GLR
                              ? glr_send(t, src, pkt, state.glr[src])
                              : itgr_send(t, src, pkt, cache_of(src), allow_peri);
    rec.modes.push_back(pkt.mode);

    rec.outcome = PathRecord::Outcome::Undeliverable;
    if (src == dst) {
        rec.outcome = PathRecord::Outcome::Delivered;
    } else if (first.kind == ForwardAction::Kind::Dropped) {
        rec.outcome = PathRecord::Outcome::Dropped;
    } else if (first.kind == ForwardAction::Kind::Forward) {
        NodeId next = first.next;
        for (;;) {
            if (pkt.ttl <= 0) {
                rec.outcome = PathRecord::Outcome::Dropped;
                break;
            }
            --pkt.ttl;
            pkt.trace.push_back(next);
            const NodeId u = next;

            ProcessResult res = itgr_process(t, u, pkt, cache_of(u), allow_peri);
            handle_msg(res.msg);
            rec.modes.push_back(pkt.mode);
            if (res.kind == ProcessResult::Kind::Delivered) {
                rec.outcome = PathRecord::Outcome::Delivered;
                break;
            }
            if (res.kind == ProcessResult::Kind::Forward) {
                next = res.next;
                continue;
            }
            rec.outcome = res.kind == ProcessResult::Kind::Dropped
                              ? PathRecord::Outcome::Dropped
                              : PathRecord::Outcome::Undeliverable;
            break;
        }
    }

    rec.delivered = rec.outcome == PathRecord::Outcome::Delivered;
    rec.trace = pkt.trace;
    rec.hops = static_cast<std::uint32_t>(rec.trace.size() - 1);
    rec.length = 0.0;
    for (std::size_t i = 1; i < rec.trace.size(); ++i) {
        rec.length += distance(t.nodes()[rec.trace[i - 1]], t.nodes()[rec.trace[i]]);
    }
    rec.used_itgr_list = pkt.used_itgr_list;
    return rec;
}

std::vector<PathRecord> warmup_and_measure(const Topology& t, Protocol protocol,
                                           const std::vector<std::pair<NodeId, NodeId>>& pairs,
                                           std::uint32_t repeats, std::uint64_t /*seed*/) {
    TrialState state = TrialState::fresh(t, protocol);
    std::vector<PathRecord> out;
    out.reserve(pairs.size() * repeats);
    for (const auto& [src, dst] : pairs) {
        for (std::uint32_t k = 0; k < repeats; ++k) {
            out.push_back(route_once(t, protocol, src, dst, state));
        }
    }
    return out;
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(std::size_t n_nodes, std::uint32_t n_pairs,
                                                    double source_fraction,
                                                    std::uint32_t min_sources,
                                                    std::uint64_t seed) {
    SplitMix64 rng(seed);
    const auto n = static_cast<std::uint32_t>(n_nodes);
    std::uint32_t n_src = static_cast<std::uint32_t>(std::lround(source_fraction * n));
    n_src = std::clamp<std::uint32_t>(std::max(n_src, min_sources), 1, n > 1 ? n - 1 : 1);
    n_src = std::min(n_src, n_pairs);

    std::vector<NodeId> sources;
    sources.reserve(n_src);
    while (sources.size() < n_src) {
        const auto s = static_cast<NodeId>(rng.next_below(n));
        if (std::find(sources.begin(), sources.end(), s) == sources.end()) {
            sources.push_back(s);
        }
    }

    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(n_pairs);
    for (std::uint32_t i = 0; i < n_src; ++i) {
        std::uint32_t quota = n_pairs / n_src + (i < n_pairs % n_src ? 1 : 0);
        quota = std::min<std::uint32_t>(quota, n - 1); // distinct dsts per source
        std::vector<NodeId> dsts;
        dsts.reserve(quota);
        while (dsts.size() < quota) {
            const auto d = static_cast<NodeId>(rng.next_below(n));
            if (d == sources[i]) continue;
            if (std::find(dsts.begin(), dsts.end(), d) == dsts.end()) {
                dsts.push_back(d);
                pairs.emplace_back(sources[i], d);
            }
        }
    }
    return pairs;
}

namespace {

GenConfig gen_for_count(const ExperimentConfig& cfg, std::uint32_t n, std::uint64_t seed) {
    GenConfig g = cfg.gen;
    g.n_nodes = n;
    g.seed = seed;
    for (const auto& ov : cfg.per_count) {
        if (ov.n_nodes == n) {
            g.area_w = ov.area_w;
            g.area_h = ov.area_h;
            g.holes = ov.holes;
            break;
        }
    }
    return g;
}

// Everything one sweep trial produces, kept until deterministic merging.
struct TrialResult {
    // records[p][i]: the i-th pair routed under cfg.protocols[p]
    std::vector<std::vector<PathRecord>> records;
    std::vector<std::uint64_t> nodes_with_entries; // per protocol
    std::vector<std::uint64_t> total_entries;
};

TrialResult run_sweep_trial(const ExperimentConfig& cfg, std::uint32_t n, std::uint32_t trial) {
    const std::uint64_t trial_seed = mix_seed(cfg.master_seed, n, trial);
    const Topology topo = generate(gen_for_count(cfg, n, trial_seed));
    const auto pairs = sample_pairs(topo.size(), cfg.pairs_per_trial, cfg.source_fraction,
                                    cfg.min_sources, mix_seed(trial_seed, kPairSalt));

    TrialResult res;
    res.records.resize(cfg.protocols.size());
    res.nodes_with_entries.resize(cfg.protocols.size(), 0);
    res.total_entries.resize(cfg.protocols.size(), 0);
    for (std::size_t p = 0; p < cfg.protocols.size(); ++p) {
        TrialState state = TrialState::fresh(topo, cfg.protocols[p]);
        res.records[p].reserve(pairs.size());
        const std::uint32_t sends = std::max<std::uint32_t>(1, cfg.sends_per_pair);
        for (const auto& [src, dst] : pairs) {
            PathRecord last;
            for (std::uint32_t k = 0; k < sends; ++k) {
                last = route_once(topo, cfg.protocols[p], src, dst, state);
            }
            res.records[p].push_back(std::move(last));
        }
        res.nodes_with_entries[p] = state.nodes_with_entries();
        res.total_entries[p] = state.total_entries();
    }
    return res;
}

// records[p][k]: all sends of repeat count R under protocol p.
struct RepeatTrialResult {
    std::vector<std::vector<PathRecord>> records;
};

RepeatTrialResult run_repeat_trial(const ExperimentConfig& cfg,
                                   const std::vector<Protocol>& protos, std::uint32_t repeats,
                                   std::uint32_t trial) {
    const std::uint64_t trial_seed = mix_seed(cfg.master_seed, kRepeatSalt, trial);
    const Topology topo = generate(gen_for_count(cfg, cfg.repeat_series_n, trial_seed));
    const auto pairs = sample_pairs(topo.size(), cfg.pairs_per_trial, cfg.source_fraction,
                                    cfg.min_sources, mix_seed(trial_seed, kPairSalt));
    RepeatTrialResult res;
    for (Protocol p : protos) {
        res.records.push_back(warmup_and_measure(topo, p, pairs, repeats, trial_seed));
    }
    return res;
}

void parallel_for(std::uint32_t jobs, std::uint32_t threads, const std::function<void(std::uint32_t)>& fn) {
    threads = std::max<std::uint32_t>(1, std::min(threads, jobs == 0 ? 1 : jobs));
    if (threads <= 1) {
        for (std::uint32_t j = 0; j < jobs; ++j) fn(j);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::uint32_t i = 0; i < threads; ++i) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint32_t j = next.fetch_add(1);
                if (j >= jobs) return;
                fn(j);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

MetricsTable run_experiment(const ExperimentConfig& cfg) {
    MetricsTable table;
    const auto n_counts = static_cast<std::uint32_t>(cfg.node_counts.size());
    const std::uint32_t trials = cfg.trials_per_count;

    // Phase 1: independent trials, any order; results land in fixed slots.
    std::vector<TrialResult> results(static_cast<std::size_t>(n_counts) * trials);
    std::string first_error;
    std::mutex err_mu;
    parallel_for(n_counts * trials, cfg.threads, [&](std::uint32_t job) {
        const std::uint32_t ci = job / trials;
        const std::uint32_t trial = job % trials;
        try {
            results[job] = run_sweep_trial(cfg, cfg.node_counts[ci], trial);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lk(err_mu);
            if (first_error.empty()) first_error = e.what();
        }
    });
    if (!first_error.empty()) throw GenerationFailed(first_error);

    // Phase 2: deterministic aggregation in (n, protocol) order.
    for (std::uint32_t ci = 0; ci < n_counts; ++ci) {
        // Pairs whose ITGR route was type 2, per trial.
        std::vector<std::vector<bool>> type2_mask(trials);
        const auto itgr_it =
            std::find(cfg.protocols.begin(), cfg.protocols.end(), Protocol::ITGR);
        if (itgr_it != cfg.protocols.end()) {
            const auto pi = static_cast<std::size_t>(itgr_it - cfg.protocols.begin());
            for (std::uint32_t tr = 0; tr < trials; ++tr) {
                const auto& recs = results[ci * trials + tr].records[pi];
                auto& mask = type2_mask[tr];
                mask.resize(recs.size(), false);
                for (std::size_t i = 0; i < recs.size(); ++i) {
                    mask[i] = recs[i].delivered && recs[i].used_itgr_list;
                }
            }
        }

        for (std::size_t p = 0; p < cfg.protocols.size(); ++p) {
            MetricsRow row;
            row.protocol = cfg.protocols[p];
            row.n_nodes = cfg.node_counts[ci];
            double len_sum = 0.0, hop_sum = 0.0;
            double t2_len_sum = 0.0, t2_hop_sum = 0.0;
            std::uint64_t n_del = 0, n_undel = 0, n_type2 = 0, n_t2pairs = 0;
            double nwe_sum = 0.0, te_sum = 0.0;
            for (std::uint32_t tr = 0; tr < trials; ++tr) {
                const auto& res = results[ci * trials + tr];
                const auto& recs = res.records[p];
                for (std::size_t i = 0; i < recs.size(); ++i) {
                    const auto& r = recs[i];
                    if (r.delivered) {
                        ++n_del;
                        len_sum += r.length;
                        hop_sum += r.hops;
                        row.max_length = std::max(row.max_length, r.length);
                        row.max_hops = std::max(row.max_hops, r.hops);
                        if (r.used_itgr_list) ++n_type2;
                        if (!type2_mask[tr].empty() && type2_mask[tr][i]) {
                            ++n_t2pairs;
                            t2_len_sum += r.length;
                            t2_hop_sum += r.hops;
                        }
                    } else {
                        ++n_undel;
                    }
                }
                nwe_sum += static_cast<double>(res.nodes_with_entries[p]);
                te_sum += static_cast<double>(res.total_entries[p]);
            }
            row.delivered_count = static_cast<std::uint32_t>(n_del);
            row.undelivered = static_cast<std::uint32_t>(n_undel);
            if (n_del > 0) {
                row.avg_length = len_sum / static_cast<double>(n_del);
                row.avg_hops = hop_sum / static_cast<double>(n_del);
                row.type2_pct = 100.0 * static_cast<double>(n_type2) / static_cast<double>(n_del);
            }
            if (n_t2pairs > 0) {
                row.type2_avg_length = t2_len_sum / static_cast<double>(n_t2pairs);
                row.type2_avg_hops = t2_hop_sum / static_cast<double>(n_t2pairs);
            }
            row.nodes_with_entries = nwe_sum / trials;
            row.total_entries = te_sum / trials;
            table.rows.push_back(row);
        }
    }

    // Repeat series: ITGR vs GLR learning curves at repeat_series_n.
    std::vector<Protocol> series_protos;
    for (Protocol p : {Protocol::ITGR, Protocol::GLR}) {
        if (std::find(cfg.protocols.begin(), cfg.protocols.end(), p) != cfg.protocols.end()) {
            series_protos.push_back(p);
        }
    }
    if (!series_protos.empty() && !cfg.repeat_schedule.empty()) {
        const auto n_rep = static_cast<std::uint32_t>(cfg.repeat_schedule.size());
        std::vector<RepeatTrialResult> rep_results(static_cast<std::size_t>(n_rep) * trials);
        parallel_for(n_rep * trials, cfg.threads, [&](std::uint32_t job) {
            const std::uint32_t ri = job / trials;
            const std::uint32_t trial = job % trials;
            try {
                rep_results[job] =
                    run_repeat_trial(cfg, series_protos, cfg.repeat_schedule[ri], trial);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (first_error.empty()) first_error = e.what();
            }
        });
        if (!first_error.empty()) throw GenerationFailed(first_error);

        for (std::uint32_t ri = 0; ri < n_rep; ++ri) {
            for (std::size_t p = 0; p < series_protos.size(); ++p) {
                double len_sum = 0.0;
                std::uint64_t n_del = 0;
                for (std::uint32_t tr = 0; tr < trials; ++tr) {
                    for (const auto& r : rep_results[ri * trials + tr].records[p]) {
                        if (r.delivered) {
                            ++n_del;
                            len_sum += r.length;
                        }
                    }
                }
                RepeatRow row;
                row.protocol = series_protos[p];
                row.repeats = cfg.repeat_schedule[ri];
                row.avg_length = n_del > 0 ? len_sum / static_cast<double>(n_del) : 0.0;
                table.repeat_series.push_back(row);
            }
        }
    }
    return table;
}

std::vector<OverheadRow> compare_overhead(const MetricsTable& table) {
    std::vector<OverheadRow> out;
    for (const auto& row : table.rows) {
        if (row.protocol != Protocol::ITGR && row.protocol != Protocol::GLR) continue;
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const OverheadRow& o) { return o.n_nodes == row.n_nodes; });
        if (it == out.end()) {
            out.push_back(OverheadRow{row.n_nodes, 0.0, 0.0});
            it = out.end() - 1;
        }
        (row.protocol == Protocol::ITGR ? it->itgr_entries : it->glr_entries) =
            row.total_entries;
    }
    return out;
}

std::vector<OverheadRow> compare_overhead(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    c.protocols = {Protocol::ITGR, Protocol::GLR};
    c.repeat_schedule.clear();
    return compare_overhead(run_experiment(c));
}

const char* protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Greedy: return "greedy";
        case Protocol::GPSR: return "gpsr";
        case Protocol::ITGR: return "itgr";
        case Protocol::GLR: return "glr";
    }
    return "unknown";
}

bool protocol_from_name(const std::string& name, Protocol& out) {
    if (name == "greedy") out = Protocol::Greedy;
    else if (name == "gpsr") out = Protocol::GPSR;
    else if (name == "itgr") out = Protocol::ITGR;
    else if (name == "glr") out = Protocol::GLR;
    else return false;
    return true;
}

} // namespace geosim
