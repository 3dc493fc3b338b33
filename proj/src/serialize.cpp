#include "geosim/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace geosim {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

json hole_to_json(const HoleSpec& h) {
    if (const auto* disc = std::get_if<DiscHole>(&h)) {
        return json{{"shape", "disc"},
                    {"center", {disc->center.x, disc->center.y}},
                    {"r", disc->r}};
    }
    const auto& poly = std::get<PolygonHole>(h);
    json verts = json::array();
    for (const auto& v : poly.vertices) verts.push_back({v.x, v.y});
    return json{{"shape", "polygon"}, {"vertices", verts}};
}

HoleSpec hole_from_json(const json& j) {
    const std::string shape = j.at("shape").get<std::string>();
    if (shape == "disc") {
        const auto& c = j.at("center");
        DiscHole d{{c.at(0).get<double>(), c.at(1).get<double>()}, j.at("r").get<double>()};
        if (!(d.r > 0)) throw ConfigError("holes[].r: must be > 0");
        return d;
    }
    if (shape == "polygon") {
        PolygonHole p;
        for (const auto& v : j.at("vertices")) {
            p.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        if (p.vertices.size() < 3) throw ConfigError("holes[].vertices: need >= 3 points");
        // Convexity: consecutive edge cross products may not change sign.
        double ref = 0.0;
        const std::size_t n = p.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = p.vertices[i];
            const Point& b = p.vertices[(i + 1) % n];
            const Point& c = p.vertices[(i + 2) % n];
            const double cross = (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
            if (std::abs(cross) <= kGeomEps) continue;
            if (ref == 0.0) ref = cross;
            else if (cross * ref < 0) throw ConfigError("holes[].vertices: polygon not convex");
        }
        return p;
    }
    throw ConfigError("holes[].shape: expected \"disc\" or \"polygon\"");
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("input is not valid JSON");
    return j;
}

} // namespace

std::string topology_to_json(const Topology& t) {
    json nodes = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        nodes.push_back({{"id", i}, {"x", t.nodes()[i].x}, {"y", t.nodes()[i].y}});
    }
    json holes = json::array();
    for (const auto& h : t.holes()) holes.push_back(hole_to_json(h));
    json doc{{"radius", t.radius()}, {"nodes", nodes}, {"holes", holes}};
    return doc.dump(2) + "\n";
}

Topology topology_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("radius")) throw ConfigError("radius: missing");
    const double radius = j.at("radius").get<double>();
    if (!(radius > 0)) throw ConfigError("radius: must be > 0");

    if (!j.contains("nodes") || !j.at("nodes").is_array() || j.at("nodes").empty()) {
        throw ConfigError("nodes: missing or empty");
    }
    std::vector<Point> pts(j.at("nodes").size());
    std::vector<bool> seen(pts.size(), false);
    for (const auto& n : j.at("nodes")) {
        const auto id = n.at("id").get<std::uint64_t>();
        if (id >= pts.size()) throw ConfigError("nodes[].id: ids must be dense 0..N-1");
        if (seen[id]) throw ConfigError("nodes[].id: duplicate id " + std::to_string(id));
        seen[id] = true;
        const double x = n.at("x").get<double>();
        const double y = n.at("y").get<double>();
        if (!std::isfinite(x) || !std::isfinite(y)) throw ConfigError("nodes[].x/y: must be finite");
        pts[id] = Point{x, y};
    }
    std::vector<HoleSpec> holes;
    if (j.contains("holes")) {
        for (const auto& h : j.at("holes")) holes.push_back(hole_from_json(h));
    }
    for (const auto& p : pts) {
        for (const auto& h : holes) {
            if (inside_hole(h, p)) throw ConfigError("nodes: node inside a hole interior");
        }
    }
    return Topology(std::move(pts), radius, std::move(holes));
}

std::string gen_config_to_json(const GenConfig& cfg) {
    json holes = json::array();
    for (const auto& h : cfg.holes) holes.push_back(hole_to_json(h));
    json doc{{"area_w", cfg.area_w},   {"area_h", cfg.area_h},
             {"n_nodes", cfg.n_nodes}, {"radius", cfg.radius},
             {"holes", holes},         {"seed", cfg.seed},
             {"max_rejects", cfg.max_rejects}};
    return doc.dump(2) + "\n";
}

GenConfig gen_config_from_json(const std::string& text) {
    const json j = parse(text);
    GenConfig cfg;
    try {
        cfg.area_w = j.at("area_w").get<double>();
        cfg.area_h = j.at("area_h").get<double>();
        cfg.n_nodes = j.at("n_nodes").get<std::uint32_t>();
        cfg.radius = j.at("radius").get<double>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("gen config: ") + e.what());
    }
    if (j.contains("holes")) {
        for (const auto& h : j.at("holes")) cfg.holes.push_back(hole_from_json(h));
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("max_rejects")) cfg.max_rejects = j.at("max_rejects").get<std::uint32_t>();
    if (cfg.n_nodes < 2) throw ConfigError("n_nodes: must be >= 2");
    if (!(cfg.area_w > 0)) throw ConfigError("area_w: must be > 0");
    if (!(cfg.area_h > 0)) throw ConfigError("area_h: must be > 0");
    if (!(cfg.radius > 0)) throw ConfigError("radius: must be > 0");
    return cfg;
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    json protos = json::array();
    for (Protocol p : cfg.protocols) protos.push_back(protocol_name(p));
    json per_count = json::array();
    for (const auto& ov : cfg.per_count) {
        json holes = json::array();
        for (const auto& h : ov.holes) holes.push_back(hole_to_json(h));
        per_count.push_back({{"n_nodes", ov.n_nodes},
                             {"area_w", ov.area_w},
                             {"area_h", ov.area_h},
                             {"holes", holes}});
    }
    json doc{{"gen", json::parse(gen_config_to_json(cfg.gen))},
             {"node_counts", cfg.node_counts},
             {"trials_per_count", cfg.trials_per_count},
             {"pairs_per_trial", cfg.pairs_per_trial},
             {"sends_per_pair", cfg.sends_per_pair},
             {"repeat_schedule", cfg.repeat_schedule},
             {"protocols", protos},
             {"master_seed", cfg.master_seed},
             {"source_fraction", cfg.source_fraction},
             {"min_sources", cfg.min_sources},
             {"repeat_series_n", cfg.repeat_series_n},
             {"per_count", per_count}};
    return doc.dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    const json j = parse(text);
    ExperimentConfig cfg;
    if (!j.contains("gen")) throw ConfigError("gen: missing");
    cfg.gen = gen_config_from_json(j.at("gen").dump());
    try {
        if (j.contains("node_counts"))
            cfg.node_counts = j.at("node_counts").get<std::vector<std::uint32_t>>();
        if (j.contains("trials_per_count"))
            cfg.trials_per_count = j.at("trials_per_count").get<std::uint32_t>();
        if (j.contains("pairs_per_trial"))
            cfg.pairs_per_trial = j.at("pairs_per_trial").get<std::uint32_t>();
        if (j.contains("sends_per_pair"))
            cfg.sends_per_pair = j.at("sends_per_pair").get<std::uint32_t>();
        if (j.contains("repeat_schedule"))
            cfg.repeat_schedule = j.at("repeat_schedule").get<std::vector<std::uint32_t>>();
        if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
        if (j.contains("source_fraction"))
            cfg.source_fraction = j.at("source_fraction").get<double>();
        if (j.contains("min_sources")) cfg.min_sources = j.at("min_sources").get<std::uint32_t>();
        if (j.contains("repeat_series_n"))
            cfg.repeat_series_n = j.at("repeat_series_n").get<std::uint32_t>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("experiment config: ") + e.what());
    }
    if (j.contains("protocols")) {
        cfg.protocols.clear();
        for (const auto& name : j.at("protocols")) {
            Protocol p;
            if (!protocol_from_name(name.get<std::string>(), p)) {
                throw ConfigError("protocols: unknown protocol \"" +
                                  name.get<std::string>() + "\"");
            }
            cfg.protocols.push_back(p);
        }
    }
    if (j.contains("per_count")) {
        for (const auto& o : j.at("per_count")) {
            CountOverride ov;
            ov.n_nodes = o.at("n_nodes").get<std::uint32_t>();
            ov.area_w = o.at("area_w").get<double>();
            ov.area_h = o.at("area_h").get<double>();
            if (o.contains("holes")) {
                for (const auto& h : o.at("holes")) ov.holes.push_back(hole_from_json(h));
            }
            if (!(ov.area_w > 0) || !(ov.area_h > 0)) {
                throw ConfigError("per_count[].area_w/area_h: must be > 0");
            }
            cfg.per_count.push_back(ov);
        }
    }
    if (cfg.node_counts.empty()) throw ConfigError("node_counts: must not be empty");
    if (cfg.trials_per_count < 1) throw ConfigError("trials_per_count: must be >= 1");
    if (cfg.pairs_per_trial < 1) throw ConfigError("pairs_per_trial: must be >= 1");
    if (cfg.protocols.empty()) throw ConfigError("protocols: must not be empty");
    if (!(cfg.source_fraction > 0.0) || cfg.source_fraction > 1.0) {
        throw ConfigError("source_fraction: must be in (0, 1]");
    }
    return cfg;
}

std::string metrics_to_csv(const MetricsTable& table) {
    std::ostringstream out;
    out << "protocol,n_nodes,avg_length_m,avg_hops,max_length_m,max_hops,type2_pct,"
           "nodes_with_entries,total_entries,undelivered\n";
    for (const auto& r : table.rows) {
        out << protocol_name(r.protocol) << ',' << r.n_nodes << ',' << fmt_double(r.avg_length)
            << ',' << fmt_double(r.avg_hops) << ',' << fmt_double(r.max_length) << ','
            << r.max_hops << ',' << fmt_double(r.type2_pct) << ','
            << fmt_double(r.nodes_with_entries) << ',' << fmt_double(r.total_entries) << ','
            << r.undelivered << '\n';
    }
    return out.str();
}

std::string repeat_series_to_csv(const MetricsTable& table) {
    std::ostringstream out;
    out << "protocol,repeats,avg_length_m\n";
    for (const auto& r : table.repeat_series) {
        out << protocol_name(r.protocol) << ',' << r.repeats << ',' << fmt_double(r.avg_length)
            << '\n';
    }
    return out.str();
}

std::string trace_to_csv(const Topology& t, const PathRecord& rec) {
    std::ostringstream out;
    out << "hop,node_id,x,y,mode\n";
    for (std::size_t i = 0; i < rec.trace.size(); ++i) {
        const Point& p = t.nodes()[rec.trace[i]];
        const char* mode =
            (i < rec.modes.size() && rec.modes[i] == ForwardMode::Perimeter) ? "perimeter"
                                                                             : "greedy";
        out << i << ',' << rec.trace[i] << ',' << fmt_double(p.x) << ',' << fmt_double(p.y)
            << ',' << mode << '\n';
    }
    return out.str();
}

std::string csv_roundtrip(const std::string& csv) {
    std::ostringstream out;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            out << line << '\n';
            header = false;
            continue;
        }
        std::istringstream fields(line);
        std::string field;
        bool first = true;
        while (std::getline(fields, field, ',')) {
            if (!first) out << ',';
            first = false;
            char* end = nullptr;
            const long long as_int = std::strtoll(field.c_str(), &end, 10);
            if (end && *end == '\0' && field.find('.') == std::string::npos && !field.empty()) {
                out << as_int;
                continue;
            }
            end = nullptr;
            const double as_double = std::strtod(field.c_str(), &end);
            if (end && *end == '\0' && !field.empty()) {
                out << fmt_double(as_double);
            } else {
                out << field;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string topology_to_svg(const Topology& t, const std::vector<NodeId>& path) {
    double max_x = 1.0, max_y = 1.0;
    for (const auto& p : t.nodes()) {
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }
    const double margin = 10.0;
    const double w = max_x + 2 * margin;
    const double h = max_y + 2 * margin;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_double(w)
        << "\" height=\"" << fmt_double(h) << "\" viewBox=\"0 0 " << fmt_double(w) << ' '
        << fmt_double(h) << "\">\n";
    // Flip to y-up world coordinates.
    out << "<g transform=\"translate(" << fmt_double(margin) << "," << fmt_double(h - margin)
        << ") scale(1,-1)\">\n";

    for (const auto& hole : t.holes()) {
        if (const auto* disc = std::get_if<DiscHole>(&hole)) {
            out << "<circle cx=\"" << fmt_double(disc->center.x) << "\" cy=\""
                << fmt_double(disc->center.y) << "\" r=\"" << fmt_double(disc->r)
                << "\" fill=\"#f8d0d0\" stroke=\"#c08080\"/>\n";
        } else {
            out << "<polygon points=\"";
            for (const auto& v : std::get<PolygonHole>(hole).vertices) {
                out << fmt_double(v.x) << ',' << fmt_double(v.y) << ' ';
            }
            out << "\" fill=\"#f8d0d0\" stroke=\"#c08080\"/>\n";
        }
    }

    for (std::size_t u = 0; u < t.size(); ++u) {
        for (NodeId v : t.planar_neighbors(static_cast<NodeId>(u))) {
            if (v < u) continue;
            const Point& a = t.nodes()[u];
            const Point& b = t.nodes()[v];
            out << "<line x1=\"" << fmt_double(a.x) << "\" y1=\"" << fmt_double(a.y)
                << "\" x2=\"" << fmt_double(b.x) << "\" y2=\"" << fmt_double(b.y)
                << "\" stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n";
        }
    }

    if (path.size() >= 2) {
        out << "<polyline fill=\"none\" stroke=\"#2060c0\" stroke-width=\"1.5\" points=\"";
        for (NodeId u : path) {
            out << fmt_double(t.nodes()[u].x) << ',' << fmt_double(t.nodes()[u].y) << ' ';
        }
        out << "\"/>\n";
    }

    for (std::size_t i = 0; i < t.size(); ++i) {
        out << "<circle cx=\"" << fmt_double(t.nodes()[i].x) << "\" cy=\""
            << fmt_double(t.nodes()[i].y) << "\" r=\"1.5\" fill=\"#404040\"/>\n";
    }
    if (!path.empty()) {
        const Point& s = t.nodes()[path.front()];
        const Point& d = t.nodes()[path.back()];
        out << "<circle cx=\"" << fmt_double(s.x) << "\" cy=\"" << fmt_double(s.y)
            << "\" r=\"3\" fill=\"#20a020\"/>\n";
        out << "<circle cx=\"" << fmt_double(d.x) << "\" cy=\"" << fmt_double(d.y)
            << "\" r=\"3\" fill=\"#c02020\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace geosim
