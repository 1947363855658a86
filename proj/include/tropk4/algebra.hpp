#pragma once

#include "tropk4/poly.hpp"
#include "tropk4/series.hpp"

#include <complex>
#include <string>
#include <vector>

namespace tropk4 {

struct NewtonSlope {
    ExtRat valuation;  // nullopt: the root zero (valuation +infinity)
    int multiplicity = 0;
    friend bool operator==(const NewtonSlope&, const NewtonSlope&) = default;
};

struct NewtonPolygonResult {
    std::vector<NewtonSlope> slopes;  // increasing valuation, +infinity last
    friend bool operator==(const NewtonPolygonResult&, const NewtonPolygonResult&) = default;
};

// coeffs[k] is the coefficient of x^k. A coefficient with no known term is
// treated as zero.
NewtonPolygonResult newton_polygon_valuations(const std::vector<PuiseuxSeries>& coeffs);

// Sylvester resultant of p and q with respect to var, computed by fraction
// free (Bareiss) elimination with exact division.
Poly resultant(const Poly& p, const Poly& q, const std::string& var);

using Complex = std::complex<long double>;

struct RootOptions {
    double tol = 1e-12;
    int max_iter = 500;
};

struct ApproxRoot {
    Complex z;
    int multiplicity = 0;
};

std::vector<ApproxRoot> complex_roots(const UPoly& p, const RootOptions& opt = {});

GaussRat rationalize(std::complex<long double> z, double tol, long max_denominator);
Rat rationalize_real(long double x, double tol, long max_denominator);

}  // namespace tropk4
