#pragma once

#include <string>

#include "geosim/simulator.hpp"
#include "geosim/topology.hpp"

namespace geosim {

// Topology document: {"radius": r, "nodes": [{"id","x","y"}...],
// "holes": [{"shape":"disc","center":[x,y],"r":r} |
//           {"shape":"polygon","vertices":[[x,y]...]}]}
std::string topology_to_json(const Topology& t);
Topology topology_from_json(const std::string& text); // validates invariants

// Generator config document mirroring GenConfig field names.
std::string gen_config_to_json(const GenConfig& cfg);
GenConfig gen_config_from_json(const std::string& text);

// Experiment config document mirroring ExperimentConfig field names.
std::string experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const std::string& text);

// CSV emitters. Numbers are printed with fixed precision so identical
// tables serialize to identical bytes.
// metrics: protocol,n_nodes,avg_length_m,avg_hops,max_length_m,max_hops,
//          type2_pct,nodes_with_entries,total_entries,undelivered
std::string metrics_to_csv(const MetricsTable& table);
// repeat series: protocol,repeats,avg_length_m
std::string repeat_series_to_csv(const MetricsTable& table);
// per-hop trace: hop,node_id,x,y,mode
std::string trace_to_csv(const Topology& t, const PathRecord& rec);

// Reparses a CSV produced by the emitters above and re-serializes it;
// used by the round-trip checks.
std::string csv_roundtrip(const std::string& csv);

// Static SVG rendering of a topology: nodes, planar edges, holes, and an
// optional traced path.
std::string topology_to_svg(const Topology& t, const std::vector<NodeId>& path);

} // namespace geosim
