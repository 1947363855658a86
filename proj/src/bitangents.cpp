#include "tropk4/bitangents.hpp"

#include "tropk4/errors.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace tropk4 {

RegionClass classify_region(const Pt& p, const Pt& o) {
    Pt d = p - o;
    int a = sgn(d.x), b = sgn(d.y);
    if (a == 0 && b == 0) return {4, "x+y+z"};
    if (d.x == d.y && a > 0) return {5, "x+y"};
    if (a == 0 && b < 0) return {6, "x+z"};
    if (b == 0 && a < 0) return {7, "y+z"};
    if (a > 0 && d.x > d.y) return {1, "x"};
    if (b > 0 && d.y > d.x) return {2, "y"};
    if (a < 0 && b < 0) return {3, "z"};
    throw OnBoundary("center " + to_string(p) + " lies on a region interface");
}

namespace {

Rat dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

const std::vector<Lattice> kTriangle{{1, 1}, {1, 2}, {2, 1}};

bool curve_is_honeycomb(const TropicalCurve2D& c) {
    if (c.heights.size() != 15 || c.cells.size() != 16) return false;
    for (const auto& cell : c.cells) {
        if (cell.size() != 3) return false;
        auto [x0, y0] = cell[0];
        auto [x1, y1] = cell[1];
        auto [x2, y2] = cell[2];
        if (std::abs((x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)) != 1) return false;
    }
    return true;
}

struct Line {
    Rat nx, ny, rhs;  // nx X + ny Y = rhs
};

// l(E_{ij,kl}): where the monomials ij and kl tie.
Line edge_line(const std::map<Lattice, Rat>& h, Lattice ij, Lattice kl) {
    return {Rat(ij.first - kl.first), Rat(ij.second - kl.second), h.at(kl) - h.at(ij)};
}

Pt meet(const Line& l, const Line& m) {
    Rat det = l.nx * m.ny - l.ny * m.nx;
    if (sgn(det) == 0) throw NotHoneycomb("defining lines are parallel");
    return {(l.rhs * m.ny - l.ny * m.rhs) / det, (l.nx * m.rhs - l.rhs * m.nx) / det};
}

// The second point where the line through o along l leaves the closed
// region of monomial r.
Pt other_exit(const std::map<Lattice, Rat>& h, const Line& l, Lattice r, const Pt& o) {
    Pt d{-l.ny, l.nx};
    std::optional<Rat> lo, hi;
    for (const auto& [m, am] : h) {
        if (m == r) continue;
        Rat alpha = am + m.first * o.x + m.second * o.y - (h.at(r) + r.first * o.x + r.second * o.y);
        Rat beta = Rat(m.first - r.first) * d.x + Rat(m.second - r.second) * d.y;
        if (sgn(beta) == 0) continue;
        Rat s = -alpha / beta;
        if (sgn(beta) > 0) {
            if (!lo || s > *lo) lo = s;
        } else {
            if (!hi || s < *hi) hi = s;
        }
    }
    if (!lo || !hi) throw NotHoneycomb("region is unbounded along the defining line");
    Rat s;
    if (sgn(*lo) == 0 && sgn(*hi) != 0) s = *hi;
    else if (sgn(*hi) == 0 && sgn(*lo) != 0) s = *lo;
    else throw NotHoneycomb("defining line does not pass through O on the region boundary");
    return o + scale(s, d);
}

}  // namespace

HoneycombSpecialPoints honeycomb_special_points(const TropicalCurve2D& c) {
    if (!curve_is_honeycomb(c)) throw NotHoneycomb("curve is not dual to a unit triangulation");
    const auto& h = c.heights;
    HoneycombSpecialPoints sp;
    bool found = false;
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        int k = c.vertex_cell[v];
        if (k < 0) continue;
        auto vs = c.cells[k];
        std::sort(vs.begin(), vs.end());
        if (vs == kTriangle) {
            sp.O = c.vertices[v];
            found = true;
        }
    }
    if (!found) throw NotHoneycomb("no cell conv{(1,1),(2,1),(1,2)}");
    sp.Sx = other_exit(h, edge_line(h, {1, 1}, {1, 2}), {2, 1}, sp.O);
    sp.Sy = other_exit(h, edge_line(h, {1, 1}, {2, 1}), {1, 2}, sp.O);
    sp.Sz = other_exit(h, edge_line(h, {1, 2}, {2, 1}), {1, 1}, sp.O);
    sp.Tx = meet(edge_line(h, {0, 1}, {1, 1}), edge_line(h, {0, 3}, {1, 2}));
    sp.Ty = meet(edge_line(h, {1, 0}, {1, 1}), edge_line(h, {3, 0}, {2, 1}));
    sp.Tz = meet(edge_line(h, {2, 1}, {3, 1}), edge_line(h, {1, 2}, {1, 3}));
    return sp;
}

std::array<Rat, 3> genericity_expressions(const QuarticInput& q) {
    auto a = [&](int i, int j) {
        auto v = q.val(i, j);
        if (!v) throw NotHoneycomb("valuation of c" + std::to_string(i) + std::to_string(j) + " is infinite");
        return *v;
    };
    return {a(3, 1) + a(1, 1) - a(3, 0) - a(1, 2), a(0, 3) + a(2, 1) - a(1, 3) - a(1, 1),
            a(1, 0) + a(1, 2) - a(0, 1) - a(2, 1)};
}

GenericityResult is_generic_honeycomb(const QuarticInput& q) {
    if (!honeycomb_check(q)) throw NotHoneycomb("input is not a honeycomb");
    GenericityResult r;
    r.values = genericity_expressions(q);
    r.generic = sgn(r.values[0]) != 0 && sgn(r.values[1]) != 0 && sgn(r.values[2]) != 0;
    return r;
}

int TropicalBitangentSet::total() const {
    int t = 0;
    for (const auto& e : entries) t += e.count;
    return t;
}

TropicalBitangentSet tropical_bitangent_centers(const QuarticInput& q) {
    if (!honeycomb_check(q)) throw NotHoneycomb("input is not a honeycomb");
    auto curve = dual_curve(newton_subdivision(q));
    auto sp = honeycomb_special_points(curve);
    bool generic = is_generic_honeycomb(q).generic;
    TropicalBitangentSet out;
    auto exact = [&](const Pt& p, const std::string& name) {
        BitangentCenter c;
        c.center = p;
        c.name = name;
        c.pattern = component_pattern(stable_intersection(curve, {p}));
        out.entries.push_back(std::move(c));
    };
    exact(sp.O, "O");
    exact(sp.Tx, "Tx");
    exact(sp.Ty, "Ty");
    exact(sp.Tz, "Tz");
    const std::array<std::tuple<Pt, std::array<int, 2>, const char*>, 3> rays{
        {{sp.Sz, {1, 1}, "Sz"}, {sp.Sx, {-1, 0}, "Sx"}, {sp.Sy, {0, -1}, "Sy"}}};
    for (const auto& [p, dir, name] : rays) {
        if (generic) {
            exact(p, name);
        } else {
            BitangentCenter c;
            c.center = p;
            c.name = name;
            c.validity = BitangentCenter::OnRay;
            c.ray_dir = dir;
            out.entries.push_back(std::move(c));
        }
    }
    return out;
}

namespace {

// Retraction image of an intersection part: an interval on a skeleton edge,
// or a single point.
struct Image {
    int edge = -1;
    Rat lo, hi;
    GraphPoint point;
};

Image part_image(const SkeletonMap& sm, const IntersectionPart& part) {
    const auto& c = sm.curve;
    if (part.kind == CurveLocation::Ray) return {-1, 0, 0, sm.vertex_image.at(c.rays.at(part.index).base)};
    const auto& img = sm.edge_image.at(part.index);
    const auto& ed = c.edges.at(part.index);
    if (img.skel_edge < 0) return {-1, 0, 0, sm.vertex_image.at(ed.u)};
    Pt dir = c.vertices[ed.v] - c.vertices[ed.u];
    Rat len = c.edge_direction(part.index).second;
    auto offset = [&](const Pt& p) {
        Rat t = dot(p - c.vertices[ed.u], dir) / dot(dir, dir) * len;
        return img.off_v > img.off_u ? Rat(img.off_u + t) : Rat(img.off_u - t);
    };
    Rat x = offset(part.a), y = offset(part.b);
    if (y < x) std::swap(x, y);
    return {img.skel_edge, x, y, {}};
}

bool in_image(const MetricGraph& g, const Image& im, const GraphPoint& p) {
    if (im.edge < 0) return im.point == p;
    if (!p.is_vertex()) return p.edge == im.edge && im.lo <= p.offset && p.offset <= im.hi;
    const auto& e = g.edge(im.edge);
    return (e.u == p.vertex && sgn(im.lo) == 0) || (e.v == p.vertex && im.hi == e.len);
}

// Assign the points to components so that component k receives need[k].
bool assign(const std::vector<GraphPoint>& pts, std::size_t i, std::vector<int>& need,
            const std::vector<std::vector<Image>>& images, const MetricGraph& g) {
    if (i == pts.size()) return std::all_of(need.begin(), need.end(), [](int x) { return x == 0; });
    for (std::size_t k = 0; k < need.size(); ++k) {
        if (need[k] == 0) continue;
        bool inside = std::any_of(images[k].begin(), images[k].end(),
                                  [&](const Image& im) { return in_image(g, im, pts[i]); });
        if (!inside) continue;
        --need[k];
        bool ok = assign(pts, i + 1, need, images, g);
        ++need[k];
        if (ok) return true;
    }
    return false;
}

}  // namespace

Tangency resolve_tangency(const SkeletonMap& sm, const LineIntersection& li,
                          const std::vector<ThetaCharacteristic>& thetas) {
    Tangency out;
    out.pattern = component_pattern(li.points);
    std::map<int, GraphDivisor> comp;
    std::map<int, int> mult;
    for (const auto& p : li.points) {
        comp[p.component].add(sm.retract(p.location), p.multiplicity);
        mult[p.component] += p.multiplicity;
    }
    GraphDivisor halved;
    std::vector<int> open;
    for (const auto& [k, d] : comp) {
        if (mult[k] % 2 != 0) throw GroupingViolation("intersection component of odd multiplicity");
        bool even = std::all_of(d.support().begin(), d.support().end(),
                                [](const auto& pc) { return pc.second % 2 == 0; });
        if (even) {
            for (const auto& [p, c] : d.support()) halved.add(p, c / 2);
        } else {
            open.push_back(k);
        }
    }
    if (open.empty()) {
        out.divisor = halved;
        for (std::size_t t = 0; t < thetas.size(); ++t)
            if (linearly_equivalent(halved, thetas[t].divisor, sm.graph)) {
                if (out.theta >= 0) throw GroupingViolation("tangency divisor matches two thetas");
                out.theta = static_cast<int>(t);
            }
        return out;
    }
    std::vector<std::vector<Image>> images(open.size());
    std::vector<int> need(open.size());
    for (std::size_t i = 0; i < open.size(); ++i) {
        need[i] = mult[open[i]] / 2;
        for (const auto& part : li.parts)
            if (part.component == open[i]) images[i].push_back(part_image(sm, part));
    }
    for (std::size_t t = 0; t < thetas.size(); ++t) {
        GraphDivisor rest = thetas[t].divisor - halved;
        if (!rest.is_effective()) continue;
        std::vector<GraphPoint> pts;
        for (const auto& [p, c] : rest.support())
            for (int j = 0; j < c; ++j) pts.push_back(p);
        auto n = need;
        if (!assign(pts, 0, n, images, sm.graph)) continue;
        if (out.theta >= 0) throw GroupingViolation("tangency is ambiguous between two thetas");
        out.theta = static_cast<int>(t);
        out.divisor = thetas[t].divisor;
    }
    return out;
}

namespace {

std::string edge_set(const MetricGraph& g, const EulerianSubgraph& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
        const auto& e = g.edge(s.edges[i]);
        if (i) out += ", ";
        out += g.vertex_name(e.u) + g.vertex_name(e.v);
    }
    return out + "}";
}

}  // namespace

std::string describe(const GroupingReport& r) {
    std::ostringstream os;
    for (std::size_t t = 0; t < r.thetas.size(); ++t) {
        os << "theta " << t << " " << edge_set(r.skeleton, r.thetas[t].source) << " = "
           << to_string(r.skeleton, r.thetas[t].divisor) << "\n";
        if (t < r.buckets.size())
            for (int i : r.buckets[t]) {
                const auto& rec = r.records[i];
                os << "  " << rec.id << " center " << to_string(rec.center) << " tangency "
                   << to_string(r.skeleton, rec.tangency) << "\n";
            }
    }
    for (const auto& rec : r.records)
        if (rec.theta < 0)
            os << "unmatched " << rec.id << " center " << to_string(rec.center) << " tangency "
               << to_string(r.skeleton, rec.tangency) << "\n";
    return os.str();
}

GroupingReport verify_grouping(const QuarticInput& q, const std::vector<std::pair<std::string, Pt>>& centers,
                               bool parallel) {
    auto curve = dual_curve(newton_subdivision(q));
    auto sk = retracts_to_k4(curve);
    if (!sk.is_k4) throw NotK4("tropicalization does not retract to K4: " + sk.reason);
    const SkeletonMap& sm = *sk.map;
    GroupingReport r;
    r.skeleton = sm.graph;
    r.thetas = all_theta_characteristics(sm.graph);
    int n = static_cast<int>(centers.size());
    r.records.resize(n);
    std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i) {
        try {
            auto& rec = r.records[i];
            rec.id = centers[i].first;
            rec.center = centers[i].second;
            auto tan = resolve_tangency(sm, intersect_line(curve, {rec.center}), r.thetas);
            rec.pattern = tan.pattern;
            rec.tangency = tan.divisor;
            rec.theta = tan.theta;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
    for (int i = 0; i < n; ++i)
        if (!errors[i].empty()) throw GroupingViolation(centers[i].first + ": " + errors[i]);
    r.buckets.assign(r.thetas.size(), {});
    for (int i = 0; i < n; ++i)
        if (r.records[i].theta >= 0) r.buckets[r.records[i].theta].push_back(i);

    std::string problem;
    if (n != 28) problem = std::to_string(n) + " bitangents supplied, expected 28";
    else if (r.thetas.size() != 7) problem = std::to_string(r.thetas.size()) + " theta characteristics";
    for (std::size_t t = 0; problem.empty() && t < r.buckets.size(); ++t)
        if (r.buckets[t].size() != 4)
            problem = "bucket " + std::to_string(t) + " has " + std::to_string(r.buckets[t].size()) + " entries";
    if (!problem.empty()) throw GroupingViolation(problem + "\n" + describe(r));
    return r;
}

GroupingReport verify_grouping(const QuarticInput& q, bool parallel) {
    auto set = tropical_bitangent_centers(q);
    std::vector<std::pair<std::string, Pt>> centers;
    for (const auto& e : set.entries) {
        if (e.validity != BitangentCenter::Exact)
            throw GroupingViolation("center " + e.name + " is only known up to a ray; supply solver branches");
        for (int k = 0; k < e.count; ++k) centers.push_back({e.name + "." + std::to_string(k + 1), e.center});
    }
    return verify_grouping(q, centers, parallel);
}

}  // namespace tropk4
