#include "tropk4/io.hpp"

#include "tropk4/errors.hpp"

#include <fstream>
#include <sstream>

namespace tropk4 {

namespace {

std::string where(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string str(const Json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    throw ParseError(std::string(what) + ": expected a string");
}

Rat rat(const Json& j, const char* what) { return parse_rat(str(j, what)); }

int integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
    return j.get<int>();
}

Lattice lattice_key(const std::string& k) {
    auto comma = k.find(',');
    if (comma == std::string::npos) throw ParseError("bad exponent key \"" + k + "\"");
    try {
        std::size_t p1 = 0, p2 = 0;
        int i = std::stoi(k.substr(0, comma), &p1);
        int j = std::stoi(k.substr(comma + 1), &p2);
        if (p1 != comma || p2 != k.size() - comma - 1) throw std::invalid_argument(k);
        if (i < 0 || j < 0 || i + j > 4) throw ParseError("exponent key \"" + k + "\" outside the degree-4 triangle");
        return {i, j};
    } catch (const std::logic_error&) {
        throw ParseError("bad exponent key \"" + k + "\"");
    }
}

std::string key(const Lattice& ij) { return std::to_string(ij.first) + "," + std::to_string(ij.second); }

Json lattice_json(const Lattice& ij) { return Json::array({ij.first, ij.second}); }

std::string edge_label(const MetricGraph& g, int e) {
    return g.vertex_name(g.edge(e).u) + g.vertex_name(g.edge(e).v);
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ":" + where(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON");
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- graphs and divisors ----

MetricGraph graph_from_json(const Json& j) {
    MetricGraph g;
    const auto& vs = field(j, "vertices");
    if (!vs.is_array()) throw ParseError("\"vertices\" must be an array");
    for (const auto& v : vs) {
        std::string name = str(v, "vertex name");
        if (g.vertex_index(name) >= 0) throw ParseError("duplicate vertex " + name);
        g.add_vertex(name);
    }
    const auto& es = field(j, "edges");
    if (!es.is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : es) {
        std::string u = str(field(e, "u"), "u"), v = str(field(e, "v"), "v");
        if (g.vertex_index(u) < 0 || g.vertex_index(v) < 0) throw ParseError("edge names an unknown vertex");
        g.add_edge(u, v, rat(field(e, "len"), "len"));
    }
    g.validate();
    return g;
}

Json graph_to_json(const MetricGraph& g) {
    Json j;
    j["vertices"] = g.vertex_names();
    Json es = Json::array();
    for (const auto& e : g.edges())
        es.push_back({{"u", g.vertex_name(e.u)}, {"v", g.vertex_name(e.v)}, {"len", to_string(e.len)}});
    j["edges"] = es;
    return j;
}

GraphDivisor divisor_from_json(const Json& j, const MetricGraph& g) {
    if (!j.is_array()) throw ParseError("divisor must be an array");
    GraphDivisor d;
    for (const auto& p : j) {
        int c = integer(field(p, "coeff"), "coeff");
        if (p.contains("vertex")) {
            int v = g.vertex_index(str(p.at("vertex"), "vertex"));
            if (v < 0) throw ParseError("divisor names an unknown vertex");
            d.add(GraphPoint::at_vertex(v), c);
        } else {
            int e = integer(field(p, "edge"), "edge");
            if (e < 0 || e >= g.num_edges()) throw ParseError("divisor edge out of range");
            d.add(point_on_edge(g, e, rat(field(p, "offset"), "offset")), c);
        }
    }
    return d;
}

Json divisor_to_json(const GraphDivisor& d, const MetricGraph& g) {
    Json out = Json::array();
    for (const auto& [p, c] : d.support()) {
        if (p.is_vertex())
            out.push_back({{"vertex", g.vertex_name(p.vertex)}, {"coeff", c}});
        else
            out.push_back({{"edge", p.edge}, {"offset", to_string(p.offset)}, {"coeff", c}});
    }
    return out;
}

// ---- quartics ----

QuarticInput quartic_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("quartic input must be an object");
    if (j.contains("coeffs")) {
        std::map<Lattice, PuiseuxSeries> c;
        for (const auto& [k, v] : j.at("coeffs").items()) {
            Lattice ij = lattice_key(k);
            if (!v.is_array()) throw ParseError("coefficient " + k + " must be a list of triples");
            PuiseuxSeries s;
            for (const auto& term : v) {
                if (!term.is_array() || term.size() != 3) throw ParseError("coefficient " + k + ": expected [exp, re, im]");
                s.add_term(rat(term[0], "exponent"), GaussRat(rat(term[1], "re"), rat(term[2], "im")));
            }
            if (!s.is_zero()) c[ij] = s;
        }
        if (c.empty()) throw ParseError("all coefficients are zero");
        return QuarticInput::from_coefficients(c);
    }
    if (j.contains("vals")) {
        std::map<Lattice, Rat> v;
        for (const auto& [k, x] : j.at("vals").items()) {
            if (x.is_null()) continue;  // +infinity
            v[lattice_key(k)] = rat(x, "valuation");
        }
        if (v.empty()) throw ParseError("no finite valuations");
        return QuarticInput::from_valuations(v);
    }
    throw ParseError("quartic input needs \"coeffs\" or \"vals\"");
}

Json quartic_to_json(const QuarticInput& q) {
    Json j;
    if (q.full) {
        Json c = Json::object();
        for (const auto& [ij, s] : q.coeffs) {
            Json terms = Json::array();
            for (const auto& [e, v] : s.terms()) terms.push_back({to_string(e), to_string(v.re), to_string(v.im)});
            c[key(ij)] = terms;
        }
        j["coeffs"] = c;
    } else {
        Json v = Json::object();
        for (const auto& [ij, x] : q.vals) v[key(ij)] = to_string(x);
        j["vals"] = v;
    }
    return j;
}

// ---- branches ----

BitangentBranch branch_from_json(const Json& j) {
    BitangentBranch b;
    b.valA = rat(field(j, "valA"), "valA");
    b.valB = rat(field(j, "valB"), "valB");
    b.n = integer(field(j, "n"), "n");
    b.A = PuiseuxSeries::parse(str(field(j, "A"), "A"));
    b.B = PuiseuxSeries::parse(str(field(j, "B"), "B"));
    if (j.contains("chart")) b.chart = str(j.at("chart"), "chart");
    if (j.contains("multiplicity")) b.multiplicity = integer(j.at("multiplicity"), "multiplicity");
    return b;
}

Json branch_to_json(const BitangentBranch& b) {
    return {{"valA", to_string(b.valA)},      {"valB", to_string(b.valB)}, {"n", b.n},
            {"A", b.A.to_string()},           {"B", b.B.to_string()},      {"precision", to_string(b.precision())},
            {"chart", b.chart}};
}

std::vector<BitangentBranch> branches_from_json(const Json& j) {
    const Json& arr = j.is_object() ? field(j, "branches") : j;
    if (!arr.is_array()) throw ParseError("branches must be an array");
    std::vector<BitangentBranch> out;
    for (const auto& b : arr) out.push_back(branch_from_json(b));
    return out;
}

// ---- reports ----

Json point_to_json(const Pt& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

Json subdivision_to_json(const NewtonSubdivision& s) {
    Json h = Json::object();
    for (const auto& [ij, v] : s.heights) h[key(ij)] = to_string(v);
    Json cells = Json::array();
    for (const auto& c : s.cells) {
        Json vs = Json::array(), ps = Json::array();
        for (const auto& v : c.vertices) vs.push_back(lattice_json(v));
        for (const auto& p : c.points) ps.push_back(lattice_json(p));
        cells.push_back({{"vertices", vs},
                         {"points", ps},
                         {"face", {{"a", to_string(c.a)}, {"b", to_string(c.b)}, {"c", to_string(c.c)}}}});
    }
    return {{"heights", h}, {"cells", cells}};
}

Json curve_to_json(const TropicalCurve2D& c) {
    Json vs = Json::array(), es = Json::array(), rs = Json::array();
    for (const auto& v : c.vertices) vs.push_back(point_to_json(v));
    for (const auto& e : c.edges) es.push_back({{"u", e.u}, {"v", e.v}, {"mult", e.mult}});
    for (const auto& r : c.rays) rs.push_back({{"base", r.base}, {"dir", {r.dx, r.dy}}, {"mult", r.mult}});
    return {{"vertices", vs}, {"edges", es}, {"rays", rs}, {"balanced", c.is_balanced()}};
}

Json skeleton_to_json(const K4Skeleton& s) {
    Json j{{"is_k4", s.is_k4}};
    if (!s.reason.empty()) j["reason"] = s.reason;
    if (s.map) {
        j["graph"] = graph_to_json(s.map->graph);
        if (s.is_k4) {
            Json l = Json::array();
            for (const auto& x : k4_lengths(s.map->graph)) l.push_back(to_string(x));
            j["lengths"] = l;  // E12, E13, E14, E34, E24, E23
        }
    }
    return j;
}

Json thetas_to_json(const std::vector<ThetaCharacteristic>& t, const MetricGraph& g) {
    Json out = Json::array();
    for (const auto& th : t) {
        Json names = Json::array();
        for (int e : th.source.edges) names.push_back(edge_label(g, e));
        out.push_back({{"eulerian_edges", th.source.edges},
                       {"eulerian_labels", names},
                       {"divisor", divisor_to_json(th.divisor, g)},
                       {"text", to_string(g, th.divisor)}});
    }
    return out;
}

Json centers_to_json(const TropicalBitangentSet& s) {
    Json es = Json::array();
    for (const auto& e : s.entries) {
        Json j{{"name", e.name},
               {"center", point_to_json(e.center)},
               {"count", e.count},
               {"validity", e.validity == BitangentCenter::Exact ? "exact" : "on_ray"}};
        if (e.validity == BitangentCenter::OnRay) j["ray_dir"] = {e.ray_dir[0], e.ray_dir[1]};
        else j["pattern"] = e.pattern;
        es.push_back(j);
    }
    return {{"entries", es}, {"total", s.total()}};
}

Json grouping_to_json(const GroupingReport& r) {
    const auto& g = r.skeleton;
    Json buckets = Json::array();
    for (std::size_t t = 0; t < r.buckets.size(); ++t) {
        const auto& th = r.thetas[t];
        Json names = Json::array();
        for (int e : th.source.edges) names.push_back(edge_label(g, e));
        Json members = Json::array();
        for (int i : r.buckets[t]) {
            const auto& rec = r.records[i];
            members.push_back({{"id", rec.id},
                               {"center", point_to_json(rec.center)},
                               {"pattern", rec.pattern},
                               {"tangency", divisor_to_json(rec.tangency, g)},
                               {"tangency_text", to_string(g, rec.tangency)}});
        }
        buckets.push_back({{"eulerian_edges", th.source.edges},
                           {"eulerian_labels", names},
                           {"theta", to_string(g, th.divisor)},
                           {"members", members}});
    }
    return {{"skeleton", graph_to_json(g)}, {"buckets", buckets}};
}

Json solve_report_to_json(const BitangentSolveReport& r) {
    Json bs = Json::array();
    for (const auto& b : r.branches) bs.push_back(branch_to_json(b));
    Json log = Json::array();
    for (const auto& l : r.log)
        log.push_back({{"entry", l.entry},
                       {"valA", to_string(l.valA)},
                       {"valB", to_string(l.valB)},
                       {"n", l.n},
                       {"chart", l.chart},
                       {"outcome", l.outcome},
                       {"found", l.found}});
    Json checks{{"count", r.branches.size()},
                {"diagonal", r.diagonal},
                {"symmetric_input", r.symmetric_input},
                {"swap_closed", r.swap_closed},
                {"conjugation_closed", r.conjugation_closed},
                {"no_line_through_origin", r.no_line_through_origin},
                {"min_residual_margin", to_string(r.min_residual_margin)}};
    return {{"branches", bs}, {"checks", checks}, {"log", log}};
}

}  // namespace tropk4
