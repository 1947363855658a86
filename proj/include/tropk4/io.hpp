#pragma once

#include "tropk4/bitangents.hpp"
#include "tropk4/metricgraph.hpp"
#include "tropk4/puiseux.hpp"
#include "tropk4/tropcurve.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tropk4 {

using Json = nlohmann::ordered_json;

// Parse errors carry line and column of the offending byte.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const Json& j);  // two-space indent, trailing newline

// {"vertices": ["V1",...], "edges": [{"u":"V1","v":"V2","len":"3/2"}, ...]}
MetricGraph graph_from_json(const Json& j);
Json graph_to_json(const MetricGraph& g);

// [{"edge":0,"offset":"1/2","coeff":2}, {"vertex":"V4","coeff":2}, ...]
GraphDivisor divisor_from_json(const Json& j, const MetricGraph& g);
Json divisor_to_json(const GraphDivisor& d, const MetricGraph& g);

// {"coeffs": {"2,1": [["0","1","0"]], ...}} with (exponent, re, im) triples,
// or {"vals": {"2,1": "0", ...}}.
QuarticInput quartic_from_json(const Json& j);
Json quartic_to_json(const QuarticInput& q);

// {"valA":"2","valB":"2","n":2,"A":"...","B":"...","precision":"4"}
BitangentBranch branch_from_json(const Json& j);
Json branch_to_json(const BitangentBranch& b);
std::vector<BitangentBranch> branches_from_json(const Json& j);  // array or {"branches": [...]}

Json point_to_json(const Pt& p);
Json subdivision_to_json(const NewtonSubdivision& s);
Json curve_to_json(const TropicalCurve2D& c);
Json skeleton_to_json(const K4Skeleton& s);
Json thetas_to_json(const std::vector<ThetaCharacteristic>& t, const MetricGraph& g);
Json centers_to_json(const TropicalBitangentSet& s);
Json grouping_to_json(const GroupingReport& r);
Json solve_report_to_json(const BitangentSolveReport& r);

}  // namespace tropk4
