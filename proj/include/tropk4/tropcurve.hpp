#pragma once

#include "tropk4/metricgraph.hpp"
#include "tropk4/series.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropk4 {

struct Pt {
    Rat x, y;
    friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Pt& a, const Pt& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
    friend Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
    friend Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
};
Pt scale(const Rat& k, const Pt& p);
std::string to_string(const Pt& p);

using Lattice = std::pair<int, int>;  // (i, j): exponent of x and y

// Plane quartic sum c_ij x^i y^j z^(4-i-j). Either full coefficients (series
// in t) or valuations only.
struct QuarticInput {
    std::map<Lattice, PuiseuxSeries> coeffs;  // only when full
    std::map<Lattice, Rat> vals;              // finite valuations; absent = +inf
    bool full = false;

    static QuarticInput from_valuations(const std::map<Lattice, Rat>& v);
    static QuarticInput from_coefficients(const std::map<Lattice, PuiseuxSeries>& c);
    std::optional<Rat> val(int i, int j) const;
};

// The quartic used throughout the examples: xyz(x+y+z) + t(...) + t^2(...) + t^5(...).
QuarticInput example_quartic();

struct NewtonCell {
    std::vector<Lattice> vertices;  // convex polygon, counter-clockwise
    std::vector<Lattice> points;    // all support points lying on the lower face
    Rat a, b, c;                    // face: height = c + a*i + b*j
};

struct NewtonSubdivision {
    std::map<Lattice, Rat> heights;
    std::vector<NewtonCell> cells;
};

NewtonSubdivision newton_subdivision(const QuarticInput& q);
NewtonSubdivision newton_subdivision(const std::map<Lattice, Rat>& heights);

struct CurveEdge {
    int u = 0, v = 0;
    int mult = 1;
    std::optional<std::pair<Lattice, Lattice>> dual;
};

struct CurveRay {
    int base = 0;
    int dx = 0, dy = 0;  // primitive
    int mult = 1;
    std::optional<std::pair<Lattice, Lattice>> dual;
};

// Embedded balanced graph. Edges may overlap in the plane (folded edges of
// embedded K4s); balancing is checked per abstract vertex.
struct TropicalCurve2D {
    std::vector<Pt> vertices;
    std::vector<CurveEdge> edges;
    std::vector<CurveRay> rays;
    std::vector<int> vertex_cell;  // dual cell index, -1 if none
    std::vector<std::vector<Lattice>> cells;  // cell vertices, filled by dual_curve
    std::map<Lattice, Rat> heights;           // filled by dual_curve

    int add_vertex(const Pt& p, int cell = -1);
    // Primitive direction u from vertex u to v and the lattice length.
    std::pair<std::array<int, 2>, Rat> edge_direction(int e) const;
    bool is_balanced(std::string* why = nullptr) const;
    // Multiset of ray directions weighted by multiplicity.
    std::map<std::array<int, 2>, int> degree() const;
};

std::array<int, 2> primitive(const Pt& d, Rat* lattice_len = nullptr);

TropicalCurve2D dual_curve(const NewtonSubdivision& s);

struct K4FormResult {
    bool value = false;
    bool pattern_only = true;  // true when no t=0 values were available
    bool leading_equal = false;  // c11(0) = c21(0) = c12(0) (full input only)
};
K4FormResult is_k4_form(const QuarticInput& q);

bool honeycomb_check(const QuarticInput& q);
bool is_unit_triangulation(const NewtonSubdivision& s);

// Location of a curve point: a bounded edge at a lattice parameter from its
// u-end, a ray at a parameter from its base, or a vertex.
struct CurveLocation {
    enum Kind { Vertex, Edge, Ray } kind = Vertex;
    int index = 0;
    Rat param;
};

struct SkeletonMap {
    MetricGraph graph;
    TropicalCurve2D curve;
    // Per curve vertex: its retraction.
    std::vector<GraphPoint> vertex_image;
    // Per curve edge: skeleton edge id and offsets of its u and v ends along
    // that skeleton edge, or -1 for edges collapsed to a point.
    struct EdgeImage {
        int skel_edge = -1;
        Rat off_u, off_v;
    };
    std::vector<EdgeImage> edge_image;
    std::vector<int> skeleton_vertex_of;  // curve vertex -> skeleton vertex or -1

    GraphPoint retract(const CurveLocation& loc) const;
    std::optional<CurveLocation> locate(const Pt& p) const;
};

struct K4Skeleton {
    bool is_k4 = false;
    std::optional<SkeletonMap> map;
    std::string reason;
};

// Extracts the 2-core; K4 when it has 4 trivalent branch points joined
// pairwise by single chains. V4 is the branch point dual to the triangle
// conv{(1,1),(2,1),(1,2)} when present.
K4Skeleton retracts_to_k4(const TropicalCurve2D& c);
// All 24 relabelings of the second K4 are tried.
bool k4_isometric(const MetricGraph& a, const MetricGraph& b);
// Six lengths in the order E12, E13, E14, E34, E24, E23.
std::array<Rat, 6> k4_lengths(const MetricGraph& g);

struct TropicalLine {
    Pt center;
};

struct StablePoint {
    Pt point;
    int multiplicity = 0;
    int component = 0;
    CurveLocation location;
};

// Set-theoretic piece of L n C lying on one curve edge or ray.
struct IntersectionPart {
    Pt a, b;
    int component = 0;
    CurveLocation::Kind kind = CurveLocation::Edge;  // Edge or Ray
    int index = 0;
};
struct LineIntersection {
    std::vector<StablePoint> points;
    std::vector<IntersectionPart> parts;
};
LineIntersection intersect_line(const TropicalCurve2D& c, const TropicalLine& l);
std::vector<StablePoint> stable_intersection(const TropicalCurve2D& c, const TropicalLine& l);
// Component multiplicities (sorted), e.g. {2,2} or {4}.
std::vector<int> component_pattern(const std::vector<StablePoint>& pts);

struct WeightedPoint {
    Pt point;
    int multiplicity = 1;
    std::optional<CurveLocation> location;
};
GraphDivisor retract_divisor(const SkeletonMap& sm, const std::vector<WeightedPoint>& pts);

struct EmbeddedK4 {
    TropicalCurve2D curve;
    GraphDivisor d0, d1, d2;  // 2p_x+2q_x, 2p_y+2q_y, 2p_z+2q_z
    std::array<GraphPoint, 2> px, py, pz;  // (p, q) pairs
    PLFunction x_coordinate;               // F on the graph
    MetricGraph graph;                     // the (possibly relabelled) input
    std::array<int, 4> relabel;            // input vertex -> used label
};

// `cycle` names the three input vertices playing V1, V2, V3 (any order
// allowed; the embedding may permute V1, V2 to satisfy c <= d, e).
EmbeddedK4 embed_k4(const MetricGraph& g, std::array<int, 3> cycle = {0, 1, 2});

}  // namespace tropk4
