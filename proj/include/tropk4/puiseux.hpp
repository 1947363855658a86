#pragma once

#include "tropk4/poly.hpp"
#include "tropk4/series.hpp"
#include "tropk4/tropcurve.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tropk4 {

// The seven cubics in X0..X4 cutting out the binary quartics
// X4 x^4 + X3 x^3 y + X2 x^2 y^2 + X1 x y^3 + X0 y^4 that are perfect squares.
template <class T>
std::array<T, 7> square_ideal(const std::array<T, 5>& X) {
    const T &X0 = X[0], &X1 = X[1], &X2 = X[2], &X3 = X[3], &X4 = X[4];
    GaussRat c2(2), c4(4), c8(8), c16(16);
    return {
        c8 * (X1 * X4 * X4) - c4 * (X2 * X3 * X4) + X3 * X3 * X3,
        c16 * (X0 * X4 * X4) + c2 * (X1 * X3 * X4) - c4 * (X2 * X2 * X4) + X2 * X3 * X3,
        c8 * (X0 * X3 * X4) - c4 * (X1 * X2 * X4) + X1 * X3 * X3,
        X0 * X3 * X3 - X1 * X1 * X4,
        c8 * (X0 * X1 * X4) - c4 * (X0 * X2 * X3) + X1 * X1 * X3,
        c16 * (X0 * X0 * X4) + c2 * (X0 * X1 * X3) - c4 * (X0 * X2 * X2) + X1 * X1 * X2,
        c8 * (X0 * X0 * X3) - c4 * (X0 * X1 * X2) + X1 * X1 * X1,
    };
}

struct SquareIdealGenerators {
    std::array<Poly, 7> gens;  // variables X0..X4
    static SquareIdealGenerators make();
};

bool is_perfect_square(const std::array<GaussRat, 5>& c);
// Perfect square for every value of the variables (all generators vanish identically).
bool is_perfect_square(const std::array<Poly, 5>& c);

// f(x,y,-Ax-By) = sum c_k x^k y^(4-k); gens are the seven cubics in c.
struct BitangentSystem {
    std::array<Poly, 5> coeffs;  // variables t, A, B
    std::array<Poly, 7> gens;
};

// f in variables x, y, z, t; homogeneous of degree 4 in x, y, z.
BitangentSystem build_bitangent_system(const Poly& f);

// Full-coefficient quartic input as a polynomial in x, y, z, t. Coefficients
// must have integral exponents.
Poly quartic_poly(const QuarticInput& q);
QuarticInput quartic_input(const Poly& f);

struct SolverOptions {
    int depth = 4;
    int window = 3;
    double tol = 1e-9;
    long max_den = 4096;
    int jobs = 0;  // 0: OpenMP default
    bool parallel = true;
    int extra_levels = 12;  // levels allowed beyond depth before a branch must be simple
    int budget = 24;        // known s-orders kept per generator beyond depth
};

// ---- the t = 0 solve ----

struct T0Point {
    GaussRat a, b;
    int multiplicity = 1;  // root multiplicity in the eliminant
    bool simple = false;   // some 2x2 Jacobian of the forms is nonsingular
};
// alpha*a + beta*b = gamma
struct T0Line {
    GaussRat alpha, beta, gamma;
};
struct T0Result {
    std::vector<T0Point> points;
    std::vector<T0Line> lines;
    bool nonlinear = false;  // a curve component that is not a union of lines over Q(i)
    int unresolved = 0;      // eliminant roots that are not Gaussian rationals
};

// Common zeros of polynomials in (a, b). With torus = true only a, b != 0
// is searched and the lines a = 0, b = 0 are ignored.
T0Result solve_at_t0(const std::vector<Poly>& forms, bool torus, const SolverOptions& opt = {});

// Polynomials in (s, a, b); keys are (s, a, b) exponents.
using TriPoly = std::map<std::array<int, 3>, GaussRat>;
// Laurent polynomials in s.
using SPoly = std::map<int, GaussRat>;

struct WorkingGen {
    TriPoly terms;  // s-content cleared: least s exponent 0
    int prec = 0;   // terms with s exponent >= prec are unknown
    bool known = false;
};

// (A, B) = P(s) + M(s) (a, b)
struct AffineFrame {
    std::array<SPoly, 2> P;
    std::array<std::array<SPoly, 2>, 2> M;
};

// The recentered system after the base change t = s^n.
struct WorkingSystem {
    std::array<WorkingGen, 7> gens;
    AffineFrame frame;

    static WorkingSystem seed(const BitangentSystem& sys, const Rat& vA, const Rat& vB, int n, int budget);

    // s^0 parts of the known generators, variables a, b.
    std::vector<Poly> leading_forms() const;
    // Indexed by generator; a zero Poly for unknown ones.
    std::array<Poly, 7> leading_forms_indexed() const;
    int known() const;

    WorkingSystem recenter_point(const GaussRat& a0, const GaussRat& b0) const;
    WorkingSystem recenter_line(const T0Line& l) const;
    // Keeps at most `orders` known s-orders per generator.
    void trim(int orders);
};

// ---- branches ----

struct BitangentBranch {
    PuiseuxSeries A, B;
    Rat valA, valB;
    int n = 1;
    int multiplicity = 1;
    std::string chart = "z";  // z: Ax+By+z; y, x: solved in a swapped chart and mapped back
    Rat precision() const;     // min of the precisions of A and B
};

// Branches whose tropicalization is (-valA, -valB), with ramification n.
// A and B carry depth + 1 terms in s = t^(1/n) past their leading ones.
std::vector<BitangentBranch> expand_branches(const Poly& f, const std::pair<Rat, Rat>& valuation, int n,
                                             int depth, const SolverOptions& opt = {});
std::vector<BitangentBranch> expand_branches(const BitangentSystem& sys, const std::pair<Rat, Rat>& valuation,
                                             int n, int depth, const SolverOptions& opt = {});

struct ExpansionAttempt {
    std::vector<BitangentBranch> branches;
    int dead_ends = 0;
};
ExpansionAttempt try_expand(const BitangentSystem& sys, const std::pair<Rat, Rat>& valuation, int n,
                            const SolverOptions& opt);

struct SeedLog {
    std::string entry;  // tropical center name
    Rat valA, valB;
    int n = 0;
    std::string chart;
    std::string outcome;
    int found = 0;
};

struct BitangentSolveReport {
    std::vector<BitangentBranch> branches;  // canonical order
    std::vector<SeedLog> log;
    int diagonal = 0;               // branches with A == B
    bool swap_closed = false;       // closed under (A,B) -> (B,A) (only meaningful for symmetric f)
    bool conjugation_closed = false;
    bool symmetric_input = false;
    bool no_line_through_origin = false;  // no bitangent Ax + By = 0
    Rat min_residual_margin;              // min over branches of residual valuation minus the bound
};

BitangentSolveReport solve_bitangents(const Poly& f, const SolverOptions& opt = {});
std::vector<BitangentBranch> discover_and_expand_all(const Poly& f, int depth, const SolverOptions& opt = {});

void canonical_sort(std::vector<BitangentBranch>& b);

// Lower bound on the valuations of the seven generators at (A, B): the least
// known nonzero term, or the precision when everything known vanishes.
Rat residual_valuation(const BitangentSystem& sys, const BitangentBranch& br);
Rat residual_bound(const BitangentBranch& br, int depth);

// True when no line Ax + By = 0 is a bitangent (checked at several rational t).
bool no_bitangent_through_origin(const Poly& f);

Poly swap_variables(const Poly& f, const std::string& u, const std::string& v);

// Post-hoc properties of a branch set (symmetric-coordinate claims).
struct ClaimsReport {
    std::map<Rat, int> sum_valuations;  // val(A+B) over distinct values of A+B
    int distinct_sums = 0;
    bool sum_plus_one_nonpositive = true;  // val(A+B+1) <= 0 for every branch
    std::map<std::pair<Rat, Rat>, int> diagonal;  // A == B, by valuation
    bool equal_valuation_sums = true;  // val A = val B <= -2 implies val(A+B) = val A
};
ClaimsReport check_claims(const std::vector<BitangentBranch>& branches);

std::string render_table(const std::vector<BitangentBranch>& branches);

}  // namespace tropk4
