// tropk4: command-line front end.

#include "svg.hpp"
#include "tropk4/bitangents.hpp"
#include "tropk4/errors.hpp"
#include "tropk4/io.hpp"
#include "tropk4/puiseux.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace tropk4;

namespace {

struct RunConfig {
    int depth = 4;
    std::string tol = "1/1000000000";
    long max_den = 4096;
    int window = 3;
    int jobs = 0;
    std::string svg_path;
    std::string json_path;
    std::string branches_path;
    std::string cycle = "V1,V2,V3";

    SolverOptions solver() const {
        if (depth < 1) throw InputError("--depth must be at least 1");
        Rat t = parse_rat(tol);
        if (sgn(t) <= 0) throw InputError("--tol must be positive");
        if (max_den < 1) throw InputError("--max-den must be positive");
        if (window < 0) throw InputError("--window must be non-negative");
        if (jobs < 0) throw InputError("--jobs must be non-negative");
        SolverOptions o;
        o.depth = depth;
        o.tol = t.get_d();
        o.max_den = max_den;
        o.window = window;
        o.jobs = jobs;
        return o;
    }
};

// JSON goes to --json when given (stdout then gets the human-readable text),
// otherwise to stdout.
void emit(const RunConfig& cfg, const Json& j, const std::string& text = "") {
    if (cfg.json_path.empty()) {
        std::cout << dump(j);
    } else {
        write_text_file(cfg.json_path, dump(j));
        std::cout << text;
    }
}

void emit_svg(const RunConfig& cfg, const std::string& svg) {
    if (!cfg.svg_path.empty()) write_text_file(cfg.svg_path, svg);
}

QuarticInput load_quartic(const std::string& path) { return quartic_from_json(read_json_file(path)); }

std::vector<std::pair<std::string, Pt>> branch_centers(const std::vector<BitangentBranch>& br) {
    std::vector<std::pair<std::string, Pt>> out;
    for (std::size_t k = 0; k < br.size(); ++k) out.push_back({"b" + std::to_string(k), Pt{-br[k].valA, -br[k].valB}});
    return out;
}

std::vector<Pt> points(const std::vector<std::pair<std::string, Pt>>& c) {
    std::vector<Pt> out;
    for (const auto& [id, p] : c) out.push_back(p);
    return out;
}

int cmd_subdivision(const RunConfig& cfg, const std::string& input) {
    auto q = load_quartic(input);
    auto s = newton_subdivision(q);
    Json j{{"subdivision", subdivision_to_json(s)}};
    bool honeycomb = is_unit_triangulation(s);
    j["honeycomb"] = honeycomb;
    try {
        auto k4 = is_k4_form(q);
        j["k4_form"] = k4.value;
        j["k4_pattern_only"] = k4.pattern_only;
    } catch (const NotScaled& e) {
        j["k4_form"] = false;
        j["k4_reason"] = e.what();
    }
    if (honeycomb) {
        auto g = is_generic_honeycomb(q);
        j["generic"] = g.generic;
        j["genericity_values"] = {to_string(g.values[0]), to_string(g.values[1]), to_string(g.values[2])};
    } else {
        j["generic"] = false;
    }
    emit(cfg, j);
    emit_svg(cfg, svg::subdivision(s, "Newton subdivision"));
    return 0;
}

int cmd_tropcurve(const RunConfig& cfg, const std::string& input) {
    auto c = dual_curve(newton_subdivision(load_quartic(input)));
    emit(cfg, curve_to_json(c));
    emit_svg(cfg, svg::curve(c, {}, "tropical quartic"));
    return 0;
}

int cmd_skeleton(const RunConfig& cfg, const std::string& input) {
    auto c = dual_curve(newton_subdivision(load_quartic(input)));
    auto sk = retracts_to_k4(c);
    emit(cfg, skeleton_to_json(sk));
    emit_svg(cfg, svg::curve(c, {}, "tropical quartic"));
    return 0;
}

int cmd_theta(const RunConfig& cfg, const std::string& input) {
    auto g = graph_from_json(read_json_file(input));
    auto th = all_theta_characteristics(g);
    std::ostringstream text;
    for (const auto& t : th) text << to_string(g, t.divisor) << "\n";
    emit(cfg, {{"genus", g.genus()}, {"count", th.size()}, {"thetas", thetas_to_json(th, g)}}, text.str());
    return 0;
}

int cmd_embed_k4(const RunConfig& cfg, const std::string& input) {
    auto g = graph_from_json(read_json_file(input));
    std::array<int, 3> cyc{};
    std::stringstream ss(cfg.cycle);
    std::string name;
    for (int k = 0; k < 3; ++k) {
        if (!std::getline(ss, name, ',')) throw InputError("--cycle needs three vertex names");
        cyc[k] = g.vertex_index(name);
        if (cyc[k] < 0) throw InputError("--cycle: unknown vertex " + name);
    }
    auto e = embed_k4(g, cyc);
    auto sk = retracts_to_k4(e.curve);
    int mult2 = 0;
    for (const auto& r : e.curve.rays) mult2 += r.mult == 2;
    Json pts = Json::object();
    const char* names[3] = {"x", "y", "z"};
    const std::array<GraphPoint, 2>* pq[3] = {&e.px, &e.py, &e.pz};
    for (int k = 0; k < 3; ++k)
        pts[names[k]] = {to_string(e.graph, (*pq[k])[0]), to_string(e.graph, (*pq[k])[1])};
    Json j{{"curve", curve_to_json(e.curve)},
           {"multiplicity_two_rays", mult2},
           {"graph", graph_to_json(e.graph)},
           {"relabel", e.relabel},
           {"contact_points", pts},
           {"d0", divisor_to_json(e.d0, e.graph)},
           {"d1", divisor_to_json(e.d1, e.graph)},
           {"d2", divisor_to_json(e.d2, e.graph)},
           {"div_x_coordinate", divisor_to_json(divisor_of(e.x_coordinate, e.graph), e.graph)},
           {"retracts_to_isometric_k4", sk.is_k4 && k4_isometric(sk.map->graph, e.graph)}};
    emit(cfg, j);
    emit_svg(cfg, svg::curve(e.curve, {}, "embedded K4"));
    return 0;
}

int cmd_bitangents_trop(const RunConfig& cfg, const std::string& input) {
    auto q = load_quartic(input);
    auto set = tropical_bitangent_centers(q);
    auto g = is_generic_honeycomb(q);
    Json j{{"generic", g.generic}, {"centers", centers_to_json(set)}};
    emit(cfg, j);
    emit_svg(cfg, svg::curve(dual_curve(newton_subdivision(q)), svg::center_markers(set), "bitangent centers"));
    return 0;
}

int cmd_bitangents_puiseux(const RunConfig& cfg, const std::string& input) {
    auto opt = cfg.solver();
    auto q = load_quartic(input);
    if (!q.full) throw InputError("full coefficients required for the Puiseux solver");
    auto rep = solve_bitangents(quartic_poly(q), opt);
    Json j = solve_report_to_json(rep);
    auto centers = branch_centers(rep.branches);
    int code = 0;
    std::string grouping_text;
    if (honeycomb_check(q) && is_k4_form(q).value) {
        j["tropical_centers"] = centers_to_json(tropical_bitangent_centers(q));
        try {
            auto g = verify_grouping(q, centers);
            j["grouping"] = grouping_to_json(g);
            grouping_text = describe(g);
        } catch (const GroupingViolation& e) {
            j["grouping"] = {{"error", e.what()}};
            grouping_text = e.what();
            code = 4;
        }
    } else {
        j["grouping"] = nullptr;
    }
    emit(cfg, j, render_table(rep.branches) + grouping_text);
    emit_svg(cfg, svg::curve(dual_curve(newton_subdivision(q)), svg::center_markers(points(centers)),
                             "28 centers of the bitangents"));
    if (code) std::cerr << "verification failed\n";
    return code;
}

int cmd_verify_grouping(const RunConfig& cfg, const std::string& input) {
    auto q = load_quartic(input);
    GroupingReport r;
    if (!cfg.branches_path.empty()) {
        r = verify_grouping(q, branch_centers(branches_from_json(read_json_file(cfg.branches_path))));
    } else if (is_generic_honeycomb(q).generic) {
        r = verify_grouping(q);
    } else if (q.full) {
        auto rep = solve_bitangents(quartic_poly(q), cfg.solver());
        r = verify_grouping(q, branch_centers(rep.branches));
    } else {
        throw InputError("non-generic honeycomb: give full coefficients or --branches");
    }
    emit(cfg, grouping_to_json(r), describe(r));
    return 0;
}

int cmd_plot(const RunConfig& cfg, const std::string& input) {
    auto q = load_quartic(input);
    auto c = dual_curve(newton_subdivision(q));
    std::vector<svg::Marker> markers;
    if (!cfg.branches_path.empty())
        markers = svg::center_markers(points(branch_centers(branches_from_json(read_json_file(cfg.branches_path)))));
    else if (honeycomb_check(q))
        markers = svg::center_markers(tropical_bitangent_centers(q));
    auto out = svg::curve(c, markers, "tropical quartic");
    if (cfg.svg_path.empty()) std::cout << out;
    else write_text_file(cfg.svg_path, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropical K4 curves, theta characteristics and bitangents"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string input;

    auto add = [&](const char* name, const char* help, bool solver, bool branches) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("input", input, "input JSON file")->required();
        s->add_option("--json", cfg.json_path, "write JSON here instead of stdout");
        s->add_option("--svg", cfg.svg_path, "write an SVG figure");
        if (solver) {
            s->add_option("--depth", cfg.depth, "terms past the leading one (in t^(1/n))");
            s->add_option("--window", cfg.window, "ray scan window in lattice steps");
            s->add_option("--tol", cfg.tol, "root rationalization tolerance (rational)");
            s->add_option("--max-den", cfg.max_den, "largest denominator for rationalized roots");
            s->add_option("--jobs", cfg.jobs, "OpenMP threads (0: default)");
        }
        if (branches) s->add_option("--branches", cfg.branches_path, "branch JSON from bitangents-puiseux");
        return s;
    };
    auto* sub = add("subdivision", "Newton subdivision and honeycomb / K4-form flags", false, false);
    auto* trc = add("tropcurve", "tropical curve dual to the subdivision", false, false);
    auto* skl = add("skeleton", "skeleton of the tropical curve", false, false);
    auto* tht = add("theta", "effective theta characteristics of a metric graph", false, false);
    auto* emb = add("embed-k4", "embed a metric K4 as a tropical quartic", false, false);
    emb->add_option("--cycle", cfg.cycle, "three vertices forming V1,V2,V3");
    auto* btr = add("bitangents-trop", "tropical bitangent centers of a honeycomb", false, false);
    auto* bpu = add("bitangents-puiseux", "Puiseux expansions of the 28 bitangents", true, false);
    auto* vgr = add("verify-grouping", "group bitangents by theta characteristic", true, true);
    auto* plt = add("plot", "SVG of the tropical curve and bitangent centers", false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sub->parsed()) return cmd_subdivision(cfg, input);
        if (trc->parsed()) return cmd_tropcurve(cfg, input);
        if (skl->parsed()) return cmd_skeleton(cfg, input);
        if (tht->parsed()) return cmd_theta(cfg, input);
        if (emb->parsed()) return cmd_embed_k4(cfg, input);
        if (btr->parsed()) return cmd_bitangents_trop(cfg, input);
        if (bpu->parsed()) return cmd_bitangents_puiseux(cfg, input);
        if (vgr->parsed()) return cmd_verify_grouping(cfg, input);
        if (plt->parsed()) return cmd_plot(cfg, input);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const GroupingViolation& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
