#pragma once

#include "tropk4/metricgraph.hpp"
#include "tropk4/tropcurve.hpp"

#include <array>
#include <string>
#include <vector>

namespace tropk4 {

// The seven regions for bitangent centers relative to O, with the limit of
// the bitangent line as tag.
struct RegionClass {
    int region = 0;   // 1..7
    std::string tag;  // x, y, z, x+y+z, x+y, x+z, y+z
};
RegionClass classify_region(const Pt& p, const Pt& o);

struct HoneycombSpecialPoints {
    Pt O, Sx, Sy, Sz, Tx, Ty, Tz;
};
HoneycombSpecialPoints honeycomb_special_points(const TropicalCurve2D& c);

struct GenericityResult {
    bool generic = false;
    std::array<Rat, 3> values;  // a31+a11-a30-a12, a03+a21-a13-a11, a10+a12-a01-a21
};
GenericityResult is_generic_honeycomb(const QuarticInput& q);
// The three expressions alone; needs the nine valuations involved.
std::array<Rat, 3> genericity_expressions(const QuarticInput& q);

struct BitangentCenter {
    Pt center;
    int count = 4;
    enum Validity { Exact, OnRay } validity = Exact;
    std::array<int, 2> ray_dir{0, 0};  // OnRay: closed ray from `center`
    std::string name;                   // O, Tx, ..., Sz
    std::vector<int> pattern;           // stable intersection components (Exact only)
};
struct TropicalBitangentSet {
    std::vector<BitangentCenter> entries;
    int total() const;
};
TropicalBitangentSet tropical_bitangent_centers(const QuarticInput& q);

struct TangencyRecord {
    std::string id;
    Pt center;
    std::vector<int> pattern;
    GraphDivisor tangency;  // p + q on the skeleton
    int theta = -1;         // index into GroupingReport::thetas
};
struct GroupingReport {
    MetricGraph skeleton;
    std::vector<ThetaCharacteristic> thetas;
    std::vector<TangencyRecord> records;
    std::vector<std::vector<int>> buckets;  // per theta: record indices
};

// Centers (-val A, -val B) of the tropicalized bitangent lines, with ids.
// Throws GroupingViolation unless there are 7 buckets of 4, one per theta.
GroupingReport verify_grouping(const QuarticInput& q, const std::vector<std::pair<std::string, Pt>>& centers,
                               bool parallel = true);
// Generic honeycombs: uses the seven centers with multiplicity 4.
GroupingReport verify_grouping(const QuarticInput& q, bool parallel = true);

// Tangency divisor of one tropical bitangent. Components whose retracted
// intersection divisor has even coefficients are halved. Any other component
// only pins the contact points to its retraction image: the theta whose
// effective representative, minus the halved part, is supported on those
// images with half of each component's multiplicity is selected; it must be
// unique. `theta` is -1 when nothing matches.
struct Tangency {
    GraphDivisor divisor;
    int theta = -1;
    std::vector<int> pattern;
};
Tangency resolve_tangency(const SkeletonMap& sm, const LineIntersection& li,
                          const std::vector<ThetaCharacteristic>& thetas);

std::string describe(const GroupingReport& r);

}  // namespace tropk4
