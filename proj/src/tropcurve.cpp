#include "tropk4/tropcurve.hpp"

#include "tropk4/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace tropk4 {

Pt scale(const Rat& k, const Pt& p) { return {k * p.x, k * p.y}; }

std::string to_string(const Pt& p) { return "(" + p.x.get_str() + ", " + p.y.get_str() + ")"; }

// ---- input ----

QuarticInput QuarticInput::from_valuations(const std::map<Lattice, Rat>& v) {
    QuarticInput q;
    for (const auto& [ij, a] : v) {
        if (ij.first < 0 || ij.second < 0 || ij.first + ij.second > 4)
            throw InvalidPoint("monomial (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                               ") outside the degree-4 triangle");
        q.vals[ij] = a;
    }
    return q;
}

QuarticInput QuarticInput::from_coefficients(const std::map<Lattice, PuiseuxSeries>& c) {
    QuarticInput q;
    q.full = true;
    for (const auto& [ij, s] : c) {
        if (ij.first < 0 || ij.second < 0 || ij.first + ij.second > 4)
            throw InvalidPoint("monomial outside the degree-4 triangle");
        if (s.is_zero()) continue;
        q.coeffs[ij] = s;
        q.vals[ij] = *s.valuation();
    }
    return q;
}

std::optional<Rat> QuarticInput::val(int i, int j) const {
    auto it = vals.find({i, j});
    if (it == vals.end()) return std::nullopt;
    return it->second;
}

QuarticInput example_quartic() {
    std::map<Lattice, PuiseuxSeries> c;
    auto put = [&](int i, int j, long e) { c[{i, j}] = PuiseuxSeries::monomial(GaussRat(1), Rat(e)); };
    put(1, 1, 0);
    put(2, 1, 0);
    put(1, 2, 0);
    put(2, 2, 1);
    put(2, 0, 1);
    put(0, 2, 1);
    for (auto ij : {Lattice{3, 1}, Lattice{1, 3}, Lattice{3, 0}, Lattice{1, 0}, Lattice{0, 3}, Lattice{0, 1}})
        put(ij.first, ij.second, 2);
    put(4, 0, 5);
    put(0, 4, 5);
    put(0, 0, 5);
    return QuarticInput::from_coefficients(c);
}

// ---- subdivision ----

namespace {

long cross(const Lattice& o, const Lattice& a, const Lattice& b) {
    return static_cast<long>(a.first - o.first) * (b.second - o.second) -
           static_cast<long>(a.second - o.second) * (b.first - o.first);
}

std::vector<Lattice> convex_hull(std::vector<Lattice> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Lattice> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

int lattice_length(const Lattice& p, const Lattice& q) {
    return std::gcd(std::abs(p.first - q.first), std::abs(p.second - q.second));
}

}  // namespace

NewtonSubdivision newton_subdivision(const QuarticInput& q) { return newton_subdivision(q.vals); }

NewtonSubdivision newton_subdivision(const std::map<Lattice, Rat>& heights) {
    std::vector<std::pair<Lattice, Rat>> pts(heights.begin(), heights.end());
    int n = static_cast<int>(pts.size());
    NewtonSubdivision s;
    s.heights = heights;
    std::set<std::tuple<Rat, Rat, Rat>> seen;
    bool two_dim = false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const auto& [p, hp] = pts[i];
                const auto& [q, hq] = pts[j];
                const auto& [r, hr] = pts[k];
                long det = cross(p, q, r);
                if (det == 0) continue;
                two_dim = true;
                // Solve h = c + a*i + b*j through the three points.
                Rat dq1(q.first - p.first), dq2(q.second - p.second);
                Rat dr1(r.first - p.first), dr2(r.second - p.second);
                Rat hq_p = hq - hp, hr_p = hr - hp;
                Rat D(det);
                Rat a = (hq_p * dr2 - hr_p * dq2) / D;
                Rat b = (dq1 * hr_p - dr1 * hq_p) / D;
                Rat c = hp - a * p.first - b * p.second;
                if (seen.count({a, b, c})) continue;
                bool lower = true;
                std::vector<Lattice> on;
                for (const auto& [x, hx] : pts) {
                    Rat plane = c + a * x.first + b * x.second;
                    if (hx < plane) {
                        lower = false;
                        break;
                    }
                    if (hx == plane) on.push_back(x);
                }
                if (!lower) continue;
                seen.insert({a, b, c});
                NewtonCell cell;
                cell.points = on;
                cell.vertices = convex_hull(on);
                cell.a = a;
                cell.b = b;
                cell.c = c;
                s.cells.push_back(std::move(cell));
            }
    if (!two_dim) throw DegenerateSupport("support with finite valuation is not 2-dimensional");
    std::sort(s.cells.begin(), s.cells.end(),
              [](const NewtonCell& x, const NewtonCell& y) { return x.vertices < y.vertices; });
    return s;
}

bool is_unit_triangulation(const NewtonSubdivision& s) {
    if (s.heights.size() != 15) return false;
    if (s.cells.size() != 16) return false;
    for (const auto& c : s.cells) {
        if (c.vertices.size() != 3 || c.points.size() != 3) return false;
        if (std::abs(cross(c.vertices[0], c.vertices[1], c.vertices[2])) != 1) return false;
    }
    return true;
}

bool honeycomb_check(const QuarticInput& q) {
    try {
        return is_unit_triangulation(newton_subdivision(q));
    } catch (const DegenerateSupport&) {
        return false;
    }
}

K4FormResult is_k4_form(const QuarticInput& q) {
    if (q.vals.empty()) throw NotScaled("no finite valuation");
    Rat mn = q.vals.begin()->second;
    for (const auto& [ij, a] : q.vals) mn = std::min(mn, a);
    if (sgn(mn) != 0) throw NotScaled("minimum valuation is " + mn.get_str() + ", expected 0");
    std::set<Lattice> zero;
    for (const auto& [ij, a] : q.vals)
        if (sgn(a) == 0) zero.insert(ij);
    K4FormResult r;
    r.value = zero == std::set<Lattice>{{1, 1}, {2, 1}, {1, 2}};
    r.pattern_only = !q.full;
    if (q.full && r.value) {
        Rat z(0);
        GaussRat c11 = q.coeffs.at({1, 1}).coeff(z);
        r.leading_equal = c11 == q.coeffs.at({2, 1}).coeff(z) && c11 == q.coeffs.at({1, 2}).coeff(z);
    }
    return r;
}

// ---- curves ----

std::array<int, 2> primitive(const Pt& d, Rat* lattice_len) {
    if (sgn(d.x) == 0 && sgn(d.y) == 0) throw std::invalid_argument("zero direction");
    // d = lambda * (p, q) with p, q coprime integers.
    Int l = lcm(d.x.get_den(), d.y.get_den());
    Int px = Rat(d.x * l).get_num(), py = Rat(d.y * l).get_num();
    Int g = gcd(px, py);
    px /= g;
    py /= g;
    if (lattice_len) *lattice_len = Rat(Rat(g) / Rat(l));
    return {static_cast<int>(px.get_si()), static_cast<int>(py.get_si())};
}

int TropicalCurve2D::add_vertex(const Pt& p, int cell) {
    vertices.push_back(p);
    vertex_cell.push_back(cell);
    return static_cast<int>(vertices.size()) - 1;
}

std::pair<std::array<int, 2>, Rat> TropicalCurve2D::edge_direction(int e) const {
    const auto& ed = edges.at(e);
    Rat len;
    auto dir = primitive(vertices[ed.v] - vertices[ed.u], &len);
    return {dir, len};
}

bool TropicalCurve2D::is_balanced(std::string* why) const {
    std::vector<std::array<long, 2>> sum(vertices.size(), {0, 0});
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& ed = edges[e];
        auto [d, len] = edge_direction(e);
        sum[ed.u][0] += static_cast<long>(ed.mult) * d[0];
        sum[ed.u][1] += static_cast<long>(ed.mult) * d[1];
        sum[ed.v][0] -= static_cast<long>(ed.mult) * d[0];
        sum[ed.v][1] -= static_cast<long>(ed.mult) * d[1];
    }
    for (const auto& r : rays) {
        sum[r.base][0] += static_cast<long>(r.mult) * r.dx;
        sum[r.base][1] += static_cast<long>(r.mult) * r.dy;
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (sum[v][0] != 0 || sum[v][1] != 0) {
            if (why) *why = "unbalanced at vertex " + std::to_string(v) + " " + to_string(vertices[v]);
            return false;
        }
    }
    return true;
}

std::map<std::array<int, 2>, int> TropicalCurve2D::degree() const {
    std::map<std::array<int, 2>, int> out;
    for (const auto& r : rays) out[{r.dx, r.dy}] += r.mult;
    return out;
}

TropicalCurve2D dual_curve(const NewtonSubdivision& s) {
    TropicalCurve2D c;
    for (std::size_t k = 0; k < s.cells.size(); ++k)
        c.add_vertex({-s.cells[k].a, -s.cells[k].b}, static_cast<int>(k));
    for (const auto& cell : s.cells) c.cells.push_back(cell.vertices);
    c.heights = s.heights;
    std::map<std::pair<Lattice, Lattice>, std::vector<std::pair<int, std::pair<Lattice, Lattice>>>> by_edge;
    for (std::size_t k = 0; k < s.cells.size(); ++k) {
        const auto& vs = s.cells[k].vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            Lattice p = vs[i], q = vs[(i + 1) % vs.size()];
            by_edge[std::minmax(p, q)].push_back({static_cast<int>(k), {p, q}});
        }
    }
    for (const auto& [key, users] : by_edge) {
        int m = lattice_length(key.first, key.second);
        if (users.size() == 2) {
            c.edges.push_back({users[0].first, users[1].first, m, key});
        } else {
            const auto& [p, q] = users[0].second;  // counter-clockwise in its cell
            int dx = q.first - p.first, dy = q.second - p.second;
            int g = std::gcd(std::abs(dx), std::abs(dy));
            c.rays.push_back({users[0].first, -dy / g, dx / g, m, key});
        }
    }
    return c;
}

// ---- skeleton ----

namespace {

const std::array<std::pair<int, int>, 6> kK4Pairs{{{0, 1}, {0, 2}, {0, 3}, {2, 3}, {1, 3}, {1, 2}}};

int k4_edge_index(int i, int j) {
    for (int k = 0; k < 6; ++k) {
        auto [a, b] = kK4Pairs[k];
        if ((a == i && b == j) || (a == j && b == i)) return k;
    }
    return -1;
}

}  // namespace

std::array<Rat, 6> k4_lengths(const MetricGraph& g) {
    if (g.num_vertices() != 4 || g.num_edges() != 6) throw NotK4("graph is not a K4");
    std::array<Rat, 6> out;
    for (int k = 0; k < 6; ++k) {
        int e = find_edge(g, kK4Pairs[k].first, kK4Pairs[k].second);
        if (e < 0) throw NotK4("missing K4 edge");
        out[k] = g.edge(e).len;
    }
    return out;
}

bool k4_isometric(const MetricGraph& a, const MetricGraph& b) {
    auto la = k4_lengths(a);
    k4_lengths(b);
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        bool ok = true;
        for (int k = 0; k < 6 && ok; ++k) {
            int e = find_edge(b, perm[kK4Pairs[k].first], perm[kK4Pairs[k].second]);
            ok = e >= 0 && b.edge(e).len == la[k];
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

K4Skeleton retracts_to_k4(const TropicalCurve2D& c) {
    K4Skeleton out;
    int n = static_cast<int>(c.vertices.size());
    int ne = static_cast<int>(c.edges.size());
    std::vector<std::vector<int>> inc(n);
    for (int e = 0; e < ne; ++e) {
        inc[c.edges[e].u].push_back(e);
        inc[c.edges[e].v].push_back(e);
    }
    // 2-core by leaf pruning.
    std::vector<char> alive_v(n, 1), alive_e(ne, 1);
    std::vector<int> deg(n);
    std::queue<int> leaves;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(inc[v].size());
        if (deg[v] <= 1) leaves.push(v);
    }
    while (!leaves.empty()) {
        int v = leaves.front();
        leaves.pop();
        if (!alive_v[v]) continue;
        alive_v[v] = 0;
        for (int e : inc[v]) {
            if (!alive_e[e]) continue;
            alive_e[e] = 0;
            int w = c.edges[e].u == v ? c.edges[e].v : c.edges[e].u;
            if (w != v && --deg[w] <= 1 && alive_v[w]) leaves.push(w);
        }
    }
    std::vector<int> branch;
    for (int v = 0; v < n; ++v)
        if (alive_v[v] && deg[v] >= 3) branch.push_back(v);
    if (branch.size() != 4) {
        out.reason = "2-core has " + std::to_string(branch.size()) + " branch points";
        return out;
    }
    for (int v : branch)
        if (deg[v] != 3) {
            out.reason = "branch point of degree " + std::to_string(deg[v]);
            return out;
        }

    // Labels: V4 is dual to T when present, the rest by coordinates;
    // otherwise by vertex index.
    std::vector<Lattice> tri{{1, 1}, {1, 2}, {2, 1}};
    auto is_t = [&](int v) {
        int k = c.vertex_cell[v];
        if (k < 0 || k >= static_cast<int>(c.cells.size())) return false;
        auto vs = c.cells[k];
        std::sort(vs.begin(), vs.end());
        return vs == tri;
    };
    auto t_it = std::find_if(branch.begin(), branch.end(), is_t);
    if (t_it != branch.end()) {
        int t = *t_it;
        branch.erase(t_it);
        std::sort(branch.begin(), branch.end(), [&](int x, int y) { return c.vertices[x] < c.vertices[y]; });
        branch.push_back(t);
    }
    std::vector<int> label(n, -1);
    for (int k = 0; k < 4; ++k) label[branch[k]] = k;

    struct Chain {
        int a = -1, b = -1;
        std::vector<int> edges;  // in order from a
        std::vector<int> verts;  // a, ..., b
        Rat len;
    };
    std::vector<Chain> chains;
    std::vector<char> used(ne, 0);
    for (int s : branch) {
        for (int e0 : inc[s]) {
            if (!alive_e[e0] || used[e0]) continue;
            Chain ch;
            ch.a = s;
            ch.verts.push_back(s);
            int cur = s, e = e0;
            while (true) {
                used[e] = 1;
                ch.edges.push_back(e);
                ch.len += c.edge_direction(e).second;
                cur = c.edges[e].u == cur ? c.edges[e].v : c.edges[e].u;
                ch.verts.push_back(cur);
                if (label[cur] >= 0) break;
                int next_e = -1;
                for (int f : inc[cur])
                    if (alive_e[f] && !used[f]) next_e = f;
                if (next_e < 0) break;
                e = next_e;
            }
            ch.b = cur;
            chains.push_back(std::move(ch));
        }
    }
    std::set<std::pair<int, int>> pairs;
    for (const auto& ch : chains) {
        if (label[ch.b] < 0 || ch.a == ch.b) {
            out.reason = "2-core contains a loop";
            return out;
        }
        pairs.insert(std::minmax(label[ch.a], label[ch.b]));
    }
    if (chains.size() != 6 || pairs.size() != 6) {
        out.reason = "branch points are not joined pairwise by single chains";
        return out;
    }

    std::array<Rat, 6> len;
    for (const auto& ch : chains) len[k4_edge_index(label[ch.a], label[ch.b])] = ch.len;
    SkeletonMap sm;
    sm.graph = make_k4(len[0], len[1], len[2], len[3], len[4], len[5]);
    sm.curve = c;
    sm.vertex_image.assign(n, GraphPoint{});
    sm.edge_image.assign(ne, {});
    sm.skeleton_vertex_of = label;
    for (int v : branch) sm.vertex_image[v] = GraphPoint::at_vertex(label[v]);
    for (const auto& ch : chains) {
        int k = k4_edge_index(label[ch.a], label[ch.b]);
        bool forward = kK4Pairs[k].first == label[ch.a];
        Rat along(0);
        auto off = [&](const Rat& t) { return forward ? t : ch.len - t; };
        for (std::size_t i = 0; i < ch.edges.size(); ++i) {
            int e = ch.edges[i];
            Rat next = along + c.edge_direction(e).second;
            int from = ch.verts[i], to = ch.verts[i + 1];
            auto& img = sm.edge_image[e];
            img.skel_edge = k;
            img.off_u = off(c.edges[e].u == from ? along : next);
            img.off_v = off(c.edges[e].u == from ? next : along);
            if (label[to] < 0) sm.vertex_image[to] = point_on_edge(sm.graph, k, off(next));
            along = next;
        }
    }
    // Trees hanging off the core collapse to their attachment point.
    std::vector<char> done(n, 0);
    std::queue<int> bfs;
    for (int v = 0; v < n; ++v)
        if (alive_v[v]) {
            done[v] = 1;
            bfs.push(v);
        }
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int e : inc[v]) {
            int w = c.edges[e].u == v ? c.edges[e].v : c.edges[e].u;
            if (done[w]) continue;
            done[w] = 1;
            sm.vertex_image[w] = sm.vertex_image[v];
            bfs.push(w);
        }
    }
    out.is_k4 = true;
    out.map = std::move(sm);
    return out;
}

GraphPoint SkeletonMap::retract(const CurveLocation& loc) const {
    switch (loc.kind) {
        case CurveLocation::Vertex:
            return vertex_image.at(loc.index);
        case CurveLocation::Ray:
            return vertex_image.at(curve.rays.at(loc.index).base);
        case CurveLocation::Edge: {
            const auto& img = edge_image.at(loc.index);
            if (img.skel_edge < 0) return vertex_image.at(curve.edges[loc.index].u);
            Rat off = img.off_v > img.off_u ? Rat(img.off_u + loc.param) : Rat(img.off_u - loc.param);
            return point_on_edge(graph, img.skel_edge, off);
        }
    }
    return {};
}

namespace {

// Parameter t >= 0 with p = base + t*dir, if any.
std::optional<Rat> param_on_line(const Pt& p, const Pt& base, const std::array<int, 2>& dir) {
    Pt d = p - base;
    if (d.x * dir[1] != d.y * dir[0]) return std::nullopt;
    Rat t = dir[0] != 0 ? Rat(d.x / dir[0]) : Rat(d.y / dir[1]);
    if (sgn(t) < 0) return std::nullopt;
    return t;
}

}  // namespace

std::optional<CurveLocation> SkeletonMap::locate(const Pt& p) const {
    for (std::size_t v = 0; v < curve.vertices.size(); ++v)
        if (curve.vertices[v] == p) return CurveLocation{CurveLocation::Vertex, static_cast<int>(v), Rat(0)};
    for (std::size_t e = 0; e < curve.edges.size(); ++e) {
        auto [dir, len] = curve.edge_direction(static_cast<int>(e));
        auto t = param_on_line(p, curve.vertices[curve.edges[e].u], dir);
        if (t && *t < len) return CurveLocation{CurveLocation::Edge, static_cast<int>(e), *t};
    }
    for (std::size_t r = 0; r < curve.rays.size(); ++r) {
        const auto& ray = curve.rays[r];
        auto t = param_on_line(p, curve.vertices[ray.base], {ray.dx, ray.dy});
        if (t) return CurveLocation{CurveLocation::Ray, static_cast<int>(r), *t};
    }
    return std::nullopt;
}

GraphDivisor retract_divisor(const SkeletonMap& sm, const std::vector<WeightedPoint>& pts) {
    GraphDivisor d;
    for (const auto& wp : pts) {
        auto loc = wp.location ? wp.location : sm.locate(wp.point);
        if (!loc) throw PointNotOnCurve(to_string(wp.point));
        d.add(sm.retract(*loc), wp.multiplicity);
    }
    return d;
}

// ---- stable intersection ----

namespace {

Rat cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
Rat dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

bool lex_pos(const Rat& a0, const Rat& a1) { return sgn(a0) > 0 || (sgn(a0) == 0 && sgn(a1) > 0); }

struct Seg {
    Pt a, b;
};

bool on_segment(const Pt& x, const Seg& s) {
    if (s.a == s.b) return x == s.a;
    if (sgn(cross(s.b - s.a, x - s.a)) != 0) return false;
    Rat t = dot(x - s.a, s.b - s.a);
    return sgn(t) >= 0 && t <= dot(s.b - s.a, s.b - s.a);
}

bool touches(const Seg& s, const Seg& t) {
    if (on_segment(s.a, t) || on_segment(s.b, t) || on_segment(t.a, s) || on_segment(t.b, s)) return true;
    int o1 = sgn(cross(s.b - s.a, t.a - s.a)), o2 = sgn(cross(s.b - s.a, t.b - s.a));
    int o3 = sgn(cross(t.b - t.a, s.a - t.a)), o4 = sgn(cross(t.b - t.a, s.b - t.a));
    return o1 * o2 < 0 && o3 * o4 < 0;
}

// Intersection of two non-degenerate segments as a (possibly degenerate) segment.
std::optional<Seg> intersect(const Seg& s, const Seg& t) {
    Pt d = s.b - s.a, e = t.b - t.a;
    Rat den = cross(d, e);
    if (sgn(den) != 0) {
        Rat u = cross(t.a - s.a, e) / den;
        Rat v = cross(t.a - s.a, d) / den;
        if (sgn(u) < 0 || u > 1 || sgn(v) < 0 || v > 1) return std::nullopt;
        Pt p = s.a + scale(u, d);
        return Seg{p, p};
    }
    if (sgn(cross(d, t.a - s.a)) != 0) return std::nullopt;
    Rat dd = dot(d, d);
    Rat u0 = dot(t.a - s.a, d) / dd, u1 = dot(t.b - s.a, d) / dd;
    if (u1 < u0) std::swap(u0, u1);
    Rat lo = std::max(Rat(0), u0), hi = std::min(Rat(1), u1);
    if (hi < lo) return std::nullopt;
    return Seg{s.a + scale(lo, d), s.a + scale(hi, d)};
}

}  // namespace

std::vector<StablePoint> stable_intersection(const TropicalCurve2D& c, const TropicalLine& l) {
    return intersect_line(c, l).points;
}

LineIntersection intersect_line(const TropicalCurve2D& c, const TropicalLine& l) {
    const std::array<std::array<int, 2>, 3> line_dirs{{{1, 0}, {0, 1}, {-1, -1}}};
    struct Piece {
        Pt base;
        std::array<int, 2> dir;
        std::optional<Rat> len;  // nullopt for rays
        CurveLocation::Kind kind;
        int index;
    };
    std::vector<Piece> pieces;
    for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
        auto [dir, len] = c.edge_direction(e);
        pieces.push_back({c.vertices[c.edges[e].u], dir, len, CurveLocation::Edge, e});
    }
    for (int r = 0; r < static_cast<int>(c.rays.size()); ++r)
        pieces.push_back({c.vertices[c.rays[r].base], {c.rays[r].dx, c.rays[r].dy}, std::nullopt,
                          CurveLocation::Ray, r});

    // Perturbation direction avoiding every direction in sight.
    Pt v;
    for (long den : {104729L, 130363L, 7919L, 15485863L}) {
        v = {Rat(1), make_rat(den / 7 + 3, den)};
        bool ok = true;
        for (const auto& p : pieces) ok = ok && sgn(cross(v, Pt{Rat(p.dir[0]), Rat(p.dir[1])})) != 0;
        for (const auto& w : line_dirs) ok = ok && sgn(cross(v, Pt{Rat(w[0]), Rat(w[1])})) != 0;
        if (ok) break;
    }

    std::vector<StablePoint> raw;
    for (const auto& p : pieces) {
        Pt u{Rat(p.dir[0]), Rat(p.dir[1])};
        int m = p.kind == CurveLocation::Edge ? c.edges[p.index].mult : c.rays[p.index].mult;
        for (const auto& wd : line_dirs) {
            Pt w{Rat(wd[0]), Rat(wd[1])};
            Rat det = cross(u, w);
            if (sgn(det) == 0) continue;
            // lambda*u - mu*w = (center - base) + eps*v
            Pt r0 = l.center - p.base, r1 = v;
            Rat D = -det;
            auto lam = [&](const Pt& r) { return Rat((w.x * r.y - r.x * w.y) / D); };
            auto mu = [&](const Pt& r) { return Rat((u.x * r.y - u.y * r.x) / D); };
            Rat l0 = lam(r0), l1 = lam(r1), m0 = mu(r0), m1 = mu(r1);
            if (!lex_pos(l0, l1) || !lex_pos(m0, m1)) continue;
            if (p.len && !lex_pos(*p.len - l0, -l1)) continue;
            StablePoint sp;
            sp.point = p.base + scale(l0, u);
            sp.multiplicity = std::abs(static_cast<int>(det.get_num().get_si())) * m;
            if (sgn(l0) == 0) {
                int vtx = p.kind == CurveLocation::Edge ? c.edges[p.index].u : c.rays[p.index].base;
                sp.location = {CurveLocation::Vertex, vtx, Rat(0)};
            } else if (p.len && l0 == *p.len) {
                sp.location = {CurveLocation::Vertex, c.edges[p.index].v, Rat(0)};
            } else {
                sp.location = {p.kind, p.index, l0};
            }
            raw.push_back(sp);
        }
    }

    // Merge equal points at equal locations.
    std::map<std::tuple<Pt, int, int, Rat>, StablePoint> merged;
    for (const auto& sp : raw) {
        auto key = std::make_tuple(sp.point, static_cast<int>(sp.location.kind), sp.location.index, sp.location.param);
        auto [it, fresh] = merged.emplace(key, sp);
        if (!fresh) it->second.multiplicity += sp.multiplicity;
    }
    std::vector<StablePoint> out;
    for (auto& [k, sp] : merged) out.push_back(sp);

    // Set-theoretic components of L n C, everything clipped to a box.
    Rat R(1);
    auto grow = [&](const Pt& p) { R = std::max({R, abs_rat(p.x), abs_rat(p.y)}); };
    for (const auto& p : c.vertices) grow(p);
    grow(l.center);
    for (const auto& sp : out) grow(sp.point);
    R = 4 * (R + 2);
    auto clip = [&](const Pt& base, const std::array<int, 2>& dir, const std::optional<Rat>& len) {
        Rat t = len ? *len : R;
        return Seg{base, base + scale(t, Pt{Rat(dir[0]), Rat(dir[1])})};
    };
    std::vector<Seg> lsegs;
    for (const auto& wd : line_dirs) lsegs.push_back(clip(l.center, wd, std::nullopt));
    std::vector<Seg> parts;
    LineIntersection res;
    for (const auto& p : pieces) {
        Seg cs = clip(p.base, p.dir, p.len);
        for (const auto& ls : lsegs)
            if (auto x = intersect(cs, ls)) {
                parts.push_back(*x);
                res.parts.push_back({x->a, x->b, 0, p.kind, p.index});
            }
    }
    std::vector<int> parent(parts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (touches(parts[i], parts[j])) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));

    std::map<int, int> comp_id;
    for (auto& sp : out) {
        int root = -1;
        for (std::size_t i = 0; i < parts.size() && root < 0; ++i)
            if (on_segment(sp.point, parts[i])) root = find(static_cast<int>(i));
        auto [it, fresh] = comp_id.emplace(root, static_cast<int>(comp_id.size()));
        sp.component = it->second;
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto [it, fresh] = comp_id.emplace(find(static_cast<int>(i)), static_cast<int>(comp_id.size()));
        res.parts[i].component = it->second;
    }
    res.points = std::move(out);
    return res;
}

std::vector<int> component_pattern(const std::vector<StablePoint>& pts) {
    std::map<int, int> tot;
    for (const auto& p : pts) tot[p.component] += p.multiplicity;
    std::vector<int> out;
    for (auto [k, m] : tot) out.push_back(m);
    std::sort(out.begin(), out.end());
    return out;
}

// ---- embedded K4 ----

EmbeddedK4 embed_k4(const MetricGraph& g, std::array<int, 3> cycle) {
    if (g.num_vertices() != 4 || g.num_edges() != 6) throw NotK4("embed_k4 needs a K4");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            int cnt = 0;
            for (const auto& e : g.edges()) cnt += (e.u == i && e.v == j) || (e.u == j && e.v == i);
            if (cnt != 1) throw NotK4("embed_k4 needs a K4");
        }
    std::set<int> cyc(cycle.begin(), cycle.end());
    if (cyc.size() != 3 || *cyc.begin() < 0 || *cyc.rbegin() > 3) throw InvalidGraph("cycle must name three distinct vertices");
    int fourth = 0;
    while (cyc.count(fourth)) ++fourth;
    auto spoke = [&](int v) { return g.edge(find_edge(g, v, fourth)).len; };
    // Put the shortest spoke at V1.
    int best = 0;
    for (int k = 1; k < 3; ++k)
        if (spoke(cycle[k]) < spoke(cycle[best])) best = k;
    std::swap(cycle[0], cycle[best]);
    std::array<int, 4> who{cycle[0], cycle[1], cycle[2], fourth};  // label -> input vertex
    auto len = [&](int i, int j) { return g.edge(find_edge(g, who[i], who[j])).len; };
    Rat a = len(0, 1), b = len(0, 2), c = len(0, 3), d = len(2, 3), e = len(1, 3), f = len(1, 2);
    if (c > d || c > e) throw CycleConstraintViolated("spoke E14 must be shortest");

    EmbeddedK4 out;
    for (int k = 0; k < 4; ++k) out.relabel[who[k]] = k;
    out.graph = make_k4(a, b, c, d, e, f);
    const MetricGraph& G = out.graph;
    Rat x = std::min({a, e, f}), y = std::min({b, d, f});
    Rat half(1, 2);

    TropicalCurve2D& C = out.curve;
    C.add_vertex({Rat(0), Rat(0)});
    C.add_vertex({x, Rat(0)});
    C.add_vertex({Rat(0), y});
    C.add_vertex({-c, -c});
    std::vector<GraphPoint> where{GraphPoint::at_vertex(0), GraphPoint::at_vertex(1), GraphPoint::at_vertex(2),
                                  GraphPoint::at_vertex(3)};
    out.x_coordinate.pieces.assign(6, {});

    struct Bp {
        Pt p;
        Rat off;
    };
    // Lays out skeleton edge k as a chain through the given breakpoints;
    // returns the curve vertex of each breakpoint.
    auto chain = [&](int k, std::vector<Bp> bps) {
        int eu = G.edge(k).u, ev = G.edge(k).v;
        std::vector<int> ids;
        int prev = eu;
        Rat prev_off(0);
        out.x_coordinate.pieces[k].push_back({Rat(0), C.vertices[eu].x});
        for (const auto& bp : bps) {
            if (bp.off == prev_off) {
                ids.push_back(prev);
                continue;
            }
            int id;
            if (bp.off == G.edge(k).len) {
                id = ev;
            } else {
                id = C.add_vertex(bp.p);
                where.push_back(point_on_edge(G, k, bp.off));
            }
            C.edges.push_back({prev, id, 1, std::nullopt});
            out.x_coordinate.pieces[k].push_back({bp.off, bp.p.x});
            ids.push_back(id);
            prev = id;
            prev_off = bp.off;
        }
        if (prev != ev) {
            C.edges.push_back({prev, ev, 1, std::nullopt});
            out.x_coordinate.pieces[k].push_back({G.edge(k).len, C.vertices[ev].x});
        }
        return ids;
    };

    Pt F{half * (a + x), Rat(0)}, Fp{Rat(0), half * (b + y)};
    Pt B34{half * (y - d), y}, PZ{half * (-c - d), -c};
    Pt B24{x, half * (x - e)}, QZ{-c, half * (-c - e)};
    Pt B23{half * (f + x), half * (f - x)}, B32{half * (f - y), half * (f + y)};

    auto ids12 = chain(0, a == x ? std::vector<Bp>{} : std::vector<Bp>{{F, half * (a + x)}});
    auto ids13 = chain(1, b == y ? std::vector<Bp>{} : std::vector<Bp>{{Fp, half * (b + y)}});
    int f_id = ids12.empty() ? -1 : ids12[0];
    int fp_id = ids13.empty() ? -1 : ids13[0];
    chain(2, {});
    auto ids34 = chain(3, {{B34, half * (d - y)}, {PZ, half * (d + c)}});
    auto ids24 = chain(4, {{B24, half * (e - x)}, {QZ, half * (e + c)}});
    auto ids23 = chain(5, {{B23, half * (f - x)}, {B32, half * (f + y)}});

    int px, qx, py, qy;
    if (a == x) {
        px = ids23[0];
        qx = ids24[0];
    } else if (e == x) {
        px = ids23[0];
        qx = f_id;
    } else {
        px = f_id;
        qx = ids24[0];
    }
    if (b == y) {
        py = ids23[1];
        qy = ids34[0];
    } else if (d == y) {
        py = ids23[1];
        qy = fp_id;
    } else {
        py = fp_id;
        qy = ids34[0];
    }
    int pz = ids34[1], qz = ids24[1];
    for (int v : {px, qx}) C.rays.push_back({v, 1, 0, 2, std::nullopt});
    for (int v : {py, qy}) C.rays.push_back({v, 0, 1, 2, std::nullopt});
    for (int v : {pz, qz}) C.rays.push_back({v, -1, -1, 2, std::nullopt});
    C.vertex_cell.assign(C.vertices.size(), -1);

    out.px = {where[px], where[qx]};
    out.py = {where[py], where[qy]};
    out.pz = {where[pz], where[qz]};
    for (const auto& p : out.px) out.d0.add(p, 2);
    for (const auto& p : out.py) out.d1.add(p, 2);
    for (const auto& p : out.pz) out.d2.add(p, 2);
    return out;
}

}  // namespace tropk4
