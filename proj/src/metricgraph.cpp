#include "tropk4/metricgraph.hpp"

#include "tropk4/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace tropk4 {

// ---- graph ----

int MetricGraph::add_vertex(const std::string& name) {
    if (vertex_index(name) >= 0) throw InvalidGraph("duplicate vertex '" + name + "'");
    names_.push_back(name);
    return num_vertices() - 1;
}

int MetricGraph::add_edge(int u, int v, const Rat& len) {
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices())
        throw InvalidGraph("edge endpoint out of range");
    if (sgn(len) <= 0) throw InvalidGraph("edge length must be positive, got " + len.get_str());
    edges_.push_back({u, v, len});
    return num_edges() - 1;
}

int MetricGraph::add_edge(const std::string& u, const std::string& v, const Rat& len) {
    int a = vertex_index(u), b = vertex_index(v);
    if (a < 0) throw InvalidGraph("unknown vertex '" + u + "'");
    if (b < 0) throw InvalidGraph("unknown vertex '" + v + "'");
    return add_edge(a, b, len);
}

int MetricGraph::vertex_index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int MetricGraph::degree(int v) const {
    int d = 0;
    for (const auto& e : edges_) d += (e.u == v) + (e.v == v);
    return d;
}

std::vector<int> MetricGraph::incident(int v) const {
    std::vector<int> out;
    for (int k = 0; k < num_edges(); ++k) {
        if (edges_[k].u == v) out.push_back(k);
        if (edges_[k].v == v) out.push_back(k);
    }
    return out;
}

bool MetricGraph::is_connected() const {
    if (names_.empty()) return true;
    std::vector<int> parent(num_vertices());
    for (int k = 0; k < num_vertices(); ++k) parent[k] = k;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : edges_) parent[find(e.u)] = find(e.v);
    int root = find(0);
    for (int k = 0; k < num_vertices(); ++k)
        if (find(k) != root) return false;
    return true;
}

void MetricGraph::validate() const {
    if (names_.empty()) throw InvalidGraph("graph has no vertices");
    for (const auto& e : edges_)
        if (sgn(e.len) <= 0) throw InvalidGraph("non-positive edge length");
    if (!is_connected()) throw DisconnectedGraph("graph is not connected");
}

int find_edge(const MetricGraph& g, int u, int v) {
    for (int k = 0; k < g.num_edges(); ++k) {
        const auto& e = g.edge(k);
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return k;
    }
    return -1;
}

// ---- points and divisors ----

GraphPoint point_on_edge(const MetricGraph& g, int e, const Rat& offset) {
    if (e < 0 || e >= g.num_edges()) throw InvalidPoint("edge id out of range");
    const auto& ed = g.edge(e);
    if (sgn(offset) < 0 || offset > ed.len)
        throw InvalidPoint("offset " + offset.get_str() + " outside [0, " + ed.len.get_str() + "]");
    if (sgn(offset) == 0) return GraphPoint::at_vertex(ed.u);
    if (offset == ed.len) return GraphPoint::at_vertex(ed.v);
    return GraphPoint{-1, e, offset};
}

GraphPoint midpoint(const MetricGraph& g, int e) { return point_on_edge(g, e, g.edge(e).len / 2); }

std::string to_string(const MetricGraph& g, const GraphPoint& p) {
    if (p.is_vertex()) return g.vertex_name(p.vertex);
    const auto& e = g.edge(p.edge);
    return "E" + std::to_string(p.edge) + "(" + g.vertex_name(e.u) + "-" + g.vertex_name(e.v) + ")@" +
           p.offset.get_str();
}

void GraphDivisor::add(const GraphPoint& p, int c) {
    if (c == 0) return;
    int& v = coeffs_[p];
    v += c;
    if (v == 0) coeffs_.erase(p);
}

int GraphDivisor::operator[](const GraphPoint& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? 0 : it->second;
}

int GraphDivisor::degree() const {
    int d = 0;
    for (const auto& [p, c] : coeffs_) d += c;
    return d;
}

bool GraphDivisor::is_effective() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second >= 0; });
}

GraphDivisor& GraphDivisor::operator+=(const GraphDivisor& o) {
    for (const auto& [p, c] : o.coeffs_) add(p, c);
    return *this;
}

GraphDivisor& GraphDivisor::operator-=(const GraphDivisor& o) {
    for (const auto& [p, c] : o.coeffs_) add(p, -c);
    return *this;
}

GraphDivisor operator*(int k, const GraphDivisor& d) {
    GraphDivisor out;
    for (const auto& [p, c] : d.coeffs_) out.add(p, k * c);
    return out;
}

std::string to_string(const MetricGraph& g, const GraphDivisor& d) {
    if (d.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : d.support()) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        int a = std::abs(c);
        if (a != 1) os << a << "*";
        os << to_string(g, p);
        first = false;
    }
    return os.str();
}

// ---- PL functions ----

Rat PLFunction::value_at(const MetricGraph& g, const GraphPoint& p) const {
    int e = p.edge;
    Rat off = p.offset;
    if (p.is_vertex()) {
        auto inc = g.incident(p.vertex);
        if (inc.empty()) return Rat(0);
        e = inc.front();
        off = g.edge(e).u == p.vertex ? Rat(0) : g.edge(e).len;
    }
    const auto& bp = pieces.at(e);
    for (std::size_t k = 1; k < bp.size(); ++k) {
        if (off <= bp[k].first) {
            const auto& [x0, y0] = bp[k - 1];
            const auto& [x1, y1] = bp[k];
            return y0 + (y1 - y0) * (off - x0) / (x1 - x0);
        }
    }
    return bp.back().second;
}

void validate_pl(const PLFunction& f, const MetricGraph& g) {
    if (static_cast<int>(f.pieces.size()) != g.num_edges())
        throw InvalidPoint("PL function needs one piece list per edge");
    std::vector<std::optional<Rat>> at_vertex(g.num_vertices());
    auto check_vertex = [&](int v, const Rat& val) {
        if (at_vertex[v] && *at_vertex[v] != val)
            throw InvalidPoint("PL function discontinuous at " + g.vertex_name(v));
        at_vertex[v] = val;
    };
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& bp = f.pieces[e];
        if (bp.size() < 2 || sgn(bp.front().first) != 0 || bp.back().first != g.edge(e).len)
            throw InvalidPoint("PL breakpoints must span [0, len] on edge " + std::to_string(e));
        for (std::size_t k = 1; k < bp.size(); ++k) {
            if (bp[k].first <= bp[k - 1].first) throw InvalidPoint("PL offsets not increasing");
            Rat slope = (bp[k].second - bp[k - 1].second) / (bp[k].first - bp[k - 1].first);
            if (slope.get_den() != 1) throw InvalidPoint("PL slope not integral: " + slope.get_str());
        }
        check_vertex(g.edge(e).u, bp.front().second);
        check_vertex(g.edge(e).v, bp.back().second);
    }
}

GraphDivisor canonical_divisor(const MetricGraph& g) {
    GraphDivisor k;
    for (int v = 0; v < g.num_vertices(); ++v) k.add(GraphPoint::at_vertex(v), g.degree(v) - 2);
    return k;
}

GraphDivisor divisor_of(const PLFunction& f, const MetricGraph& g) {
    validate_pl(f, g);
    GraphDivisor d;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& bp = f.pieces[e];
        std::vector<Rat> slopes;
        for (std::size_t k = 1; k < bp.size(); ++k)
            slopes.push_back((bp[k].second - bp[k - 1].second) / (bp[k].first - bp[k - 1].first));
        auto as_int = [](const Rat& r) { return static_cast<int>(r.get_num().get_si()); };
        d.add(GraphPoint::at_vertex(g.edge(e).u), as_int(slopes.front()));
        d.add(GraphPoint::at_vertex(g.edge(e).v), -as_int(slopes.back()));
        for (std::size_t k = 1; k + 1 < bp.size(); ++k)
            d.add(point_on_edge(g, e, bp[k].first), as_int(slopes[k] - slopes[k - 1]));
    }
    return d;
}

DistanceField distance_from_edges(const MetricGraph& g, const std::vector<int>& edges) {
    int n = g.num_vertices();
    std::vector<std::optional<Rat>> dist(n);
    for (int e : edges) {
        dist[g.edge(e).u] = Rat(0);
        dist[g.edge(e).v] = Rat(0);
    }
    std::vector<char> done(n, 0);
    for (int it = 0; it < n; ++it) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && dist[v] && (best < 0 || *dist[v] < *dist[best])) best = v;
        if (best < 0) break;
        done[best] = 1;
        for (int e : g.incident(best)) {
            const auto& ed = g.edge(e);
            int w = ed.u == best ? ed.v : ed.u;
            Rat cand = *dist[best] + ed.len;
            if (!dist[w] || cand < *dist[w]) dist[w] = cand;
        }
    }
    DistanceField out;
    for (int v = 0; v < n; ++v) {
        if (!dist[v]) throw DisconnectedGraph("vertex unreachable from the source set");
        out.vertex_dist.push_back(*dist[v]);
    }
    return out;
}

PLFunction distance_function(const MetricGraph& g, const std::vector<int>& edges) {
    auto d = distance_from_edges(g, edges).vertex_dist;
    std::set<int> in_s(edges.begin(), edges.end());
    PLFunction f;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        if (in_s.count(e)) {
            f.pieces.push_back({{Rat(0), Rat(0)}, {ed.len, Rat(0)}});
            continue;
        }
        const Rat &du = d[ed.u], &dv = d[ed.v];
        Rat xs = (dv + ed.len - du) / 2;
        std::vector<std::pair<Rat, Rat>> bp{{Rat(0), du}};
        if (sgn(xs) > 0 && xs < ed.len) bp.emplace_back(xs, du + xs);
        bp.emplace_back(ed.len, dv);
        f.pieces.push_back(std::move(bp));
    }
    return f;
}

// ---- refinement of G at a finite point set ----

namespace {

struct Model {
    struct Seg {
        int a, b;  // node ids, a at offset lo
        int edge;
        Rat lo, hi;
        Rat len() const { return hi - lo; }
    };
    std::vector<GraphPoint> nodes;
    std::map<GraphPoint, int> node_of;
    std::vector<Seg> segs;
    std::vector<std::vector<int>> inc;  // loops listed twice

    int node(const GraphPoint& p) const { return node_of.at(p); }
};

Model refine(const MetricGraph& g, const std::set<GraphPoint>& extra) {
    Model m;
    for (int v = 0; v < g.num_vertices(); ++v) {
        m.node_of[GraphPoint::at_vertex(v)] = v;
        m.nodes.push_back(GraphPoint::at_vertex(v));
    }
    std::vector<std::vector<GraphPoint>> on_edge(g.num_edges());
    for (const auto& p : extra) {
        if (p.is_vertex()) continue;
        if (m.node_of.count(p)) continue;
        m.node_of[p] = static_cast<int>(m.nodes.size());
        m.nodes.push_back(p);
        on_edge[p.edge].push_back(p);
    }
    m.inc.resize(m.nodes.size());
    for (int e = 0; e < g.num_edges(); ++e) {
        auto& pts = on_edge[e];
        std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.offset < y.offset; });
        int prev = g.edge(e).u;
        Rat prev_off(0);
        auto push = [&](int nxt, const Rat& off) {
            int id = static_cast<int>(m.segs.size());
            m.segs.push_back({prev, nxt, e, prev_off, off});
            m.inc[prev].push_back(id);
            m.inc[nxt].push_back(id);
            prev = nxt;
            prev_off = off;
        };
        for (const auto& p : pts) push(m.node(p), p.offset);
        push(g.edge(e).v, g.edge(e).len);
    }
    return m;
}

// Point at distance delta from node x along segment s (x an endpoint of s).
GraphPoint step_along(const MetricGraph& g, const Model& m, int s, int x, const Rat& delta) {
    const auto& seg = m.segs[s];
    Rat off = seg.a == x ? Rat(seg.lo + delta) : Rat(seg.hi - delta);
    return point_on_edge(g, seg.edge, off);
}

// Dhar burning for divisors effective away from q.
GraphDivisor reduce_effective(GraphDivisor d, const GraphPoint& q, const MetricGraph& g) {
    for (long iter = 0;; ++iter) {
        if (iter > 1000000) throw std::logic_error("q_reduce did not terminate");
        std::set<GraphPoint> pts{q};
        for (const auto& [p, c] : d.support()) pts.insert(p);
        Model m = refine(g, pts);
        int n = static_cast<int>(m.nodes.size());
        std::vector<int> chips(n, 0);
        for (const auto& [p, c] : d.support()) chips[m.node(p)] = c;
        std::vector<char> burnt(n, 0);
        burnt[m.node(q)] = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < n; ++x) {
                if (burnt[x]) continue;
                int fire = 0;
                for (int s : m.inc[x]) {
                    const auto& seg = m.segs[s];
                    int other = seg.a == x ? seg.b : seg.a;
                    if (other != x && burnt[other]) ++fire;
                }
                if (fire > chips[x]) {
                    burnt[x] = 1;
                    changed = true;
                }
            }
        }
        if (std::all_of(burnt.begin(), burnt.end(), [](char b) { return b; })) return d;

        std::optional<Rat> delta;
        std::vector<std::pair<int, int>> moves;  // (segment, from node)
        for (int s = 0; s < static_cast<int>(m.segs.size()); ++s) {
            const auto& seg = m.segs[s];
            if (burnt[seg.a] == burnt[seg.b]) continue;
            int from = burnt[seg.a] ? seg.b : seg.a;
            moves.emplace_back(s, from);
            if (!delta || seg.len() < *delta) delta = seg.len();
        }
        for (const auto& [s, from] : moves) {
            d.add(m.nodes[from], -1);
            d.add(step_along(g, m, s, from, *delta), 1);
        }
    }
}

}  // namespace

GraphDivisor q_reduce(const GraphDivisor& d, const GraphPoint& q, const MetricGraph& g) {
    GraphDivisor work;
    std::vector<std::pair<GraphPoint, int>> negative;
    for (const auto& [p, c] : d.support()) {
        if (c < 0 && !(p == q)) negative.emplace_back(p, -c);
        else work.add(p, c);
    }
    // m*q - p is equivalent to an effective divisor for m = g+1 (Riemann-Roch);
    // use the smallest m that works.
    for (const auto& [p, k] : negative) {
        bool ok = false;
        for (int m = 1; m <= std::max(g.genus(), 0) + 1 && !ok; ++m) {
            GraphDivisor mq;
            mq.add(q, m);
            GraphDivisor r = reduce_effective(mq, p, g);
            if (r[p] >= 1) {
                r.add(p, -1);
                work += k * r;
                work.add(q, -k * m);
                ok = true;
            }
        }
        if (!ok) throw std::logic_error("could not clear a negative coefficient");
    }
    return reduce_effective(work, q, g);
}

bool linearly_equivalent(const GraphDivisor& a, const GraphDivisor& b, const MetricGraph& g) {
    if (a.degree() != b.degree()) return false;
    if (g.num_vertices() == 0) return a == b;
    return q_reduce(a - b, GraphPoint::at_vertex(0), g).is_zero();
}

bool equivalent_to_effective(const GraphDivisor& d, const MetricGraph& g) {
    GraphPoint q = GraphPoint::at_vertex(0);
    return q_reduce(d, q, g)[q] >= 0;
}

// ---- rigidity ----

RigidityResult is_rigid(const GraphDivisor& d, const MetricGraph& g) {
    if (!d.is_effective()) throw NotEffective("is_rigid needs an effective divisor");
    std::set<GraphPoint> pts;
    for (const auto& [p, c] : d.support()) pts.insert(p);
    Model m = refine(g, pts);
    int n = static_cast<int>(m.nodes.size());
    int ns = static_cast<int>(m.segs.size());
    if (ns > 24) throw std::invalid_argument("is_rigid: too many segments for subset enumeration");

    auto coeff = [&](int x) { return d[m.nodes[x]]; };

    // Returns true if the closed set (chosen segments + nodes) admits no point
    // with outdeg > a, i.e. it certifies non-rigidity.
    auto violates = [&](const std::vector<char>& chosen, const std::vector<char>& in_s) {
        for (int x = 0; x < n; ++x) {
            if (!in_s[x]) continue;
            int out = 0;
            for (int s : m.inc[x])
                if (!chosen[s]) ++out;
            if (out > 0 && !pts.count(m.nodes[x])) return false;  // boundary outside supp
            if (out > coeff(x)) return false;
        }
        return true;
    };

    auto witness = [&](const std::vector<char>& chosen, const std::vector<char>& in_s) {
        RigidityResult r;
        r.rigid = false;
        for (int s = 0; s < ns; ++s)
            if (chosen[s]) r.witness_segments.emplace_back(m.segs[s].edge, m.segs[s].lo, m.segs[s].hi);
        for (int x = 0; x < n; ++x) {
            bool covered = false;
            for (int s : m.inc[x]) covered = covered || chosen[s];
            if (in_s[x] && !covered) r.witness_points.push_back(m.nodes[x]);
        }
        std::optional<Rat> eps;
        for (int s = 0; s < ns; ++s) {
            if (chosen[s]) continue;
            const auto& seg = m.segs[s];
            bool ia = in_s[seg.a], ib = in_s[seg.b];
            if (!ia && !ib) continue;
            Rat cap = (ia && ib) ? Rat(seg.len() / 2) : seg.len();
            if (!eps || cap < *eps) eps = cap;
        }
        PLFunction f;
        f.pieces.resize(g.num_edges());
        Rat e = eps ? *eps : Rat(1);
        for (int s = 0; s < ns; ++s) {
            const auto& seg = m.segs[s];
            auto& bp = f.pieces[seg.edge];
            std::vector<std::pair<Rat, Rat>> local;
            bool ia = in_s[seg.a], ib = in_s[seg.b];
            if (chosen[s]) {
                local = {{seg.lo, Rat(0)}, {seg.hi, Rat(0)}};
            } else {
                local.emplace_back(seg.lo, ia ? Rat(0) : Rat(-e));
                if (ia) local.emplace_back(seg.lo + e, -e);
                if (ib) local.emplace_back(seg.hi - e, -e);
                local.emplace_back(seg.hi, ib ? Rat(0) : Rat(-e));
            }
            for (auto& pt : local)
                if (bp.empty() || pt.first > bp.back().first) bp.push_back(pt);
        }
        r.witness_function = std::move(f);
        return r;
    };

    std::vector<char> chosen(ns, 0), in_s(n, 0);
    for (int x = 0; x < n; ++x) {
        if (!pts.count(m.nodes[x])) continue;
        std::fill(in_s.begin(), in_s.end(), 0);
        in_s[x] = 1;
        if (m.inc[x].empty()) continue;  // the whole graph is a single point
        if (violates(chosen, in_s)) return witness(chosen, in_s);
    }
    unsigned long full = (1ul << ns) - 1;
    for (unsigned long mask = 1; mask < full; ++mask) {
        std::fill(in_s.begin(), in_s.end(), 0);
        for (int s = 0; s < ns; ++s) {
            chosen[s] = (mask >> s) & 1ul;
            if (chosen[s]) in_s[m.segs[s].a] = in_s[m.segs[s].b] = 1;
        }
        if (violates(chosen, in_s)) return witness(chosen, in_s);
    }
    return {};
}

// ---- Eulerian subgraphs and theta characteristics ----

bool is_eulerian(const MetricGraph& g, const std::vector<int>& edges) {
    if (edges.empty()) return false;
    std::vector<int> deg(g.num_vertices(), 0);
    for (int e : edges) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
    }
    return std::all_of(deg.begin(), deg.end(), [](int x) { return x % 2 == 0; });
}

std::vector<EulerianSubgraph> eulerian_subgraphs(const MetricGraph& g) {
    g.validate();
    int n = g.num_vertices(), ne = g.num_edges();
    std::vector<int> parent_edge(n, -1), depth(n, -1);
    std::vector<char> tree(ne, 0);
    std::queue<int> bfs;
    depth[0] = 0;
    bfs.push(0);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int e : g.incident(v)) {
            int w = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
            if (depth[w] >= 0) continue;
            depth[w] = depth[v] + 1;
            parent_edge[w] = e;
            tree[e] = 1;
            bfs.push(w);
        }
    }
    auto up = [&](int v) {
        const auto& ed = g.edge(parent_edge[v]);
        return ed.u == v ? ed.v : ed.u;
    };
    std::vector<std::vector<char>> cycles;
    for (int e = 0; e < ne; ++e) {
        if (tree[e]) continue;
        std::vector<char> c(ne, 0);
        c[e] = 1;
        int a = g.edge(e).u, b = g.edge(e).v;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                c[parent_edge[a]] ^= 1;
                a = up(a);
            } else {
                c[parent_edge[b]] ^= 1;
                b = up(b);
            }
        }
        cycles.push_back(std::move(c));
    }
    int gen = static_cast<int>(cycles.size());
    if (gen > 20) throw std::invalid_argument("genus too large to enumerate Eulerian subgraphs");
    std::vector<EulerianSubgraph> out;
    for (unsigned long mask = 1; mask < (1ul << gen); ++mask) {
        std::vector<char> acc(ne, 0);
        for (int k = 0; k < gen; ++k)
            if ((mask >> k) & 1ul)
                for (int e = 0; e < ne; ++e) acc[e] ^= cycles[k][e];
        EulerianSubgraph s;
        for (int e = 0; e < ne; ++e)
            if (acc[e]) s.edges.push_back(e);
        out.push_back(std::move(s));
    }
    return out;
}

ThetaCharacteristic zharkov_theta(const MetricGraph& g, const EulerianSubgraph& s) {
    if (!is_eulerian(g, s.edges)) throw InvalidPoint("edge set is not a nonempty Eulerian subgraph");
    auto d = distance_from_edges(g, s.edges).vertex_dist;
    std::set<int> in_s(s.edges.begin(), s.edges.end());
    std::vector<int> deg_s(g.num_vertices(), 0), incoming(g.num_vertices(), 0);
    GraphDivisor div;
    for (int e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        if (in_s.count(e)) {
            ++deg_s[ed.u];
            ++deg_s[ed.v];
            continue;
        }
        Rat xs = (d[ed.v] + ed.len - d[ed.u]) / 2;
        if (sgn(xs) <= 0) ++incoming[ed.u];
        else if (xs >= ed.len) ++incoming[ed.v];
        else div.add(point_on_edge(g, e, xs), 1);
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        int indeg = deg_s[v] > 0 ? deg_s[v] / 2 : incoming[v];
        div.add(GraphPoint::at_vertex(v), indeg - 1);
    }
    return {div, s};
}

std::vector<ThetaCharacteristic> all_theta_characteristics(const MetricGraph& g) {
    std::vector<ThetaCharacteristic> out;
    for (const auto& s : eulerian_subgraphs(g)) out.push_back(zharkov_theta(g, s));
    return out;
}

// ---- named graphs ----

MetricGraph make_circle(const Rat& len) {
    MetricGraph g;
    g.add_vertex("V1");
    g.add_edge(0, 0, len);
    return g;
}

MetricGraph make_theta_graph(const Rat& a, const Rat& b, const Rat& c) {
    MetricGraph g;
    g.add_vertex("V1");
    g.add_vertex("V2");
    g.add_edge(0, 1, a);
    g.add_edge(0, 1, b);
    g.add_edge(0, 1, c);
    return g;
}

MetricGraph make_k4(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& e,
                    const Rat& f) {
    MetricGraph g;
    for (int k = 1; k <= 4; ++k) g.add_vertex("V" + std::to_string(k));
    g.add_edge(0, 1, a);  // E12
    g.add_edge(0, 2, b);  // E13
    g.add_edge(0, 3, c);  // E14
    g.add_edge(2, 3, d);  // E34
    g.add_edge(1, 3, e);  // E24
    g.add_edge(1, 2, f);  // E23
    return g;
}

}  // namespace tropk4
