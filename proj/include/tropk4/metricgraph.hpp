#pragma once

#include "tropk4/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace tropk4 {

struct GraphEdge {
    int u = 0;
    int v = 0;
    Rat len;
};

class MetricGraph {
public:
    int add_vertex(const std::string& name);
    int add_edge(int u, int v, const Rat& len);
    int add_edge(const std::string& u, const std::string& v, const Rat& len);

    int num_vertices() const { return static_cast<int>(names_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const GraphEdge& edge(int e) const { return edges_.at(e); }
    int vertex_index(const std::string& name) const;  // -1 if absent
    const std::string& vertex_name(int v) const { return names_.at(v); }

    // Loops count twice.
    int degree(int v) const;
    // Edge ids incident to v; loops listed twice.
    std::vector<int> incident(int v) const;
    int genus() const { return num_edges() - num_vertices() + 1; }
    bool is_connected() const;
    // Throws InvalidGraph / DisconnectedGraph.
    void validate() const;

private:
    std::vector<std::string> names_;
    std::vector<GraphEdge> edges_;
};

// Either a vertex, or a point strictly inside an edge at `offset` from edge.u.
struct GraphPoint {
    int vertex = -1;
    int edge = -1;
    Rat offset;

    bool is_vertex() const { return vertex >= 0; }
    static GraphPoint at_vertex(int v) { return GraphPoint{v, -1, Rat(0)}; }

    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        return a.vertex == b.vertex && a.edge == b.edge && a.offset == b.offset;
    }
    friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
        if (a.vertex != b.vertex) return a.vertex > b.vertex;  // vertices first
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.offset < b.offset;
    }
};

// Canonical point at `offset` along edge e (offsets 0 / len map to vertices).
GraphPoint point_on_edge(const MetricGraph& g, int e, const Rat& offset);
GraphPoint midpoint(const MetricGraph& g, int e);
std::string to_string(const MetricGraph& g, const GraphPoint& p);

class GraphDivisor {
public:
    GraphDivisor() = default;

    void add(const GraphPoint& p, int c);
    int operator[](const GraphPoint& p) const;
    const std::map<GraphPoint, int>& support() const { return coeffs_; }
    int degree() const;
    bool is_effective() const;
    bool is_zero() const { return coeffs_.empty(); }

    GraphDivisor& operator+=(const GraphDivisor& o);
    GraphDivisor& operator-=(const GraphDivisor& o);
    friend GraphDivisor operator+(GraphDivisor a, const GraphDivisor& b) { return a += b; }
    friend GraphDivisor operator-(GraphDivisor a, const GraphDivisor& b) { return a -= b; }
    friend GraphDivisor operator*(int k, const GraphDivisor& d);
    friend bool operator==(const GraphDivisor&, const GraphDivisor&) = default;

private:
    std::map<GraphPoint, int> coeffs_;
};

std::string to_string(const MetricGraph& g, const GraphDivisor& d);

// Per edge: breakpoints (offset from edge.u, value), first offset 0, last
// offset len, strictly increasing offsets.
struct PLFunction {
    std::vector<std::vector<std::pair<Rat, Rat>>> pieces;

    Rat value_at(const MetricGraph& g, const GraphPoint& p) const;
};

// Throws InvalidInput-style errors (InvalidPoint) when slopes are not
// integral or values disagree at vertices.
void validate_pl(const PLFunction& f, const MetricGraph& g);

GraphDivisor canonical_divisor(const MetricGraph& g);
GraphDivisor divisor_of(const PLFunction& f, const MetricGraph& g);

// Distance from a closed set, given as a set of whole edges plus extra
// points. Values are exact.
struct DistanceField {
    std::vector<Rat> vertex_dist;
};
DistanceField distance_from_edges(const MetricGraph& g, const std::vector<int>& edges);
// The PL function d(S, .) for S a union of edges.
PLFunction distance_function(const MetricGraph& g, const std::vector<int>& edges);

struct RigidityResult {
    bool rigid = true;
    // Witness when not rigid: the closed set as (edge, lo, hi) segments plus
    // isolated points, and a PL function moving d off itself.
    std::vector<std::tuple<int, Rat, Rat>> witness_segments;
    std::vector<GraphPoint> witness_points;
    std::optional<PLFunction> witness_function;
};

RigidityResult is_rigid(const GraphDivisor& d, const MetricGraph& g);

GraphDivisor q_reduce(const GraphDivisor& d, const GraphPoint& q, const MetricGraph& g);
bool linearly_equivalent(const GraphDivisor& a, const GraphDivisor& b, const MetricGraph& g);
// r(D) >= 0.
bool equivalent_to_effective(const GraphDivisor& d, const MetricGraph& g);

struct EulerianSubgraph {
    std::vector<int> edges;  // sorted edge ids
    friend bool operator==(const EulerianSubgraph&, const EulerianSubgraph&) = default;
};

std::vector<EulerianSubgraph> eulerian_subgraphs(const MetricGraph& g);
bool is_eulerian(const MetricGraph& g, const std::vector<int>& edges);

struct ThetaCharacteristic {
    GraphDivisor divisor;
    EulerianSubgraph source;
};

ThetaCharacteristic zharkov_theta(const MetricGraph& g, const EulerianSubgraph& s);
std::vector<ThetaCharacteristic> all_theta_characteristics(const MetricGraph& g);

// Named constructors used by tests, CLI and acceptance checks.
MetricGraph make_circle(const Rat& len);
MetricGraph make_theta_graph(const Rat& a, const Rat& b, const Rat& c);
// Edge order E12, E13, E14, E34, E24, E23 with lengths a..f.
MetricGraph make_k4(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& e,
                    const Rat& f);
int find_edge(const MetricGraph& g, int u, int v);  // first edge joining u,v or -1

}  // namespace tropk4
