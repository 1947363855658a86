#include <doctest.h>

#include "golden_branches.hpp"
#include "tropk4/bitangents.hpp"
#include "tropk4/errors.hpp"
#include "tropk4/puiseux.hpp"

#include <random>

using namespace tropk4;

namespace {

Poly example_f() { return quartic_poly(example_quartic()); }

const BitangentSolveReport& example_report() {
    static const BitangentSolveReport rep = [] {
        SolverOptions o;
        o.depth = 4;
        return solve_bitangents(example_f(), o);
    }();
    return rep;
}

std::array<GaussRat, 5> quartic_coeffs(const std::array<Rat, 3>& q) {
    // (q2 x^2 + q1 xy + q0 y^2)^2, entry k is the coefficient of x^k y^(4-k)
    Rat a = q[0] * q[0], b = 2 * q[0] * q[1], c = q[1] * q[1] + 2 * q[0] * q[2], d = 2 * q[1] * q[2], e = q[2] * q[2];
    return {GaussRat(a), GaussRat(b), GaussRat(c), GaussRat(d), GaussRat(e)};
}

}  // namespace

TEST_CASE("square-detecting generators") {
    auto G = SquareIdealGenerators::make().gens;
    std::vector<std::string> v{"X0", "X1", "X2", "X3", "X4"};
    auto X = [&](int k) { return Poly::variable(v, v[k]); };
    Poly g1 = GaussRat(8) * (X(1) * X(4) * X(4)) - GaussRat(4) * (X(2) * X(3) * X(4)) + X(3) * X(3) * X(3);
    CHECK(G[0] == g1);
    CHECK(G[3] == X(0) * X(3) * X(3) - X(1) * X(1) * X(4));
    for (const auto& g : G) CHECK(g.total_degree() == 3);

    CHECK(is_perfect_square({GaussRat(0), GaussRat(0), GaussRat(0), GaussRat(0), GaussRat(1)}));
    CHECK_FALSE(is_perfect_square({GaussRat(1), GaussRat(0), GaussRat(0), GaussRat(0), GaussRat(1)}));
    CHECK(square_ideal(std::array<GaussRat, 5>{1, 0, 0, 0, 1})[5] == GaussRat(16));
    CHECK(is_perfect_square({GaussRat(1), GaussRat(0), GaussRat(2), GaussRat(0), GaussRat(1)}));
}

TEST_CASE("perfect squares against squared quadratics") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<Rat, 3> q{Rat(d(rng)), Rat(d(rng)), Rat(d(rng))};
        auto c = quartic_coeffs(q);
        CHECK(is_perfect_square(c));
        // with an x^2 term the square root is determined by the top three
        // coefficients, so moving the y^4 coefficient breaks squareness
        if (sgn(q[2]) != 0) {
            c[0] += GaussRat(1 + trial % 3);
            CHECK_FALSE(is_perfect_square(c));
        }
    }
}

TEST_CASE("bitangent system") {
    std::vector<std::string> xyzt{"x", "y", "z", "t"};
    Poly z4 = Poly::monomial(xyzt, {0, 0, 4, 0}, GaussRat(1));
    auto sys = build_bitangent_system(z4);
    Poly A = Poly::variable({"t", "A", "B"}, "A"), B = Poly::variable({"t", "A", "B"}, "B");
    CHECK(sys.coeffs[0] == B.pow(4));
    CHECK(sys.coeffs[1] == GaussRat(4) * A * B.pow(3));
    CHECK(sys.coeffs[2] == GaussRat(6) * A.pow(2) * B.pow(2));
    CHECK(sys.coeffs[4] == A.pow(4));
    for (const auto& g : sys.gens) CHECK(g.is_zero());

    auto ex = build_bitangent_system(example_f());
    for (const auto& g : ex.gens) {
        CHECK(std::max(g.degree(1), 0) + std::max(g.degree(2), 0) <= 24);
        int tot = 0;
        for (const auto& [m, c] : g.terms()) tot = std::max(tot, m[1] + m[2]);
        CHECK(tot <= 12);
        CHECK(g.degree(0) <= 15);
    }
    // At t = 0 and A = B = 1 the quartic restricts to zero.
    for (const auto& c : ex.coeffs) CHECK(c.evaluate(0, GaussRat(0)).evaluate_all({0, 1, 1}).is_zero());

    Poly cubic = Poly::monomial(xyzt, {3, 0, 0, 0}, GaussRat(1));
    CHECK_THROWS_AS(build_bitangent_system(cubic), NotQuartic);
    CHECK_THROWS_AS(build_bitangent_system(Poly(xyzt)), NotQuartic);
}

TEST_CASE("quartic input round trip") {
    Poly f = example_f();
    CHECK(quartic_poly(quartic_input(f)) == f);
    CHECK(swap_variables(swap_variables(f, "y", "z"), "y", "z") == f);
    CHECK(swap_variables(f, "x", "y") == f);
    CHECK_THROWS_AS(quartic_poly(QuarticInput::from_valuations(example_quartic().vals)), NotQuartic);
}

TEST_CASE("t = 0 solve at the origin") {
    auto sys = build_bitangent_system(example_f());
    auto w = WorkingSystem::seed(sys, Rat(0), Rat(0), 1, 30);
    auto r = solve_at_t0(w.leading_forms(), true);
    REQUIRE(r.points.size() == 1);
    CHECK(r.lines.empty());
    CHECK(r.points[0].a == GaussRat(1));
    CHECK(r.points[0].b == GaussRat(1));
    // the eliminant multiplicity bounds the four branches from above
    CHECK(r.points[0].multiplicity >= 4);
    CHECK_FALSE(r.points[0].simple);

    auto w2 = w.recenter_point(GaussRat(1), GaussRat(1));
    auto r2 = solve_at_t0(w2.leading_forms(), false);
    REQUIRE(r2.points.size() == 4);
    std::set<std::pair<long, long>> got;
    for (const auto& p : r2.points) {
        CHECK(p.multiplicity == 1);
        CHECK(p.simple);
        got.insert({p.a.re.get_num().get_si(), p.b.re.get_num().get_si()});
    }
    CHECK(got == std::set<std::pair<long, long>>{{0, 0}, {4, 4}, {0, -4}, {-4, 0}});
}

TEST_CASE("t = 0 solve: lines, curves and empty systems") {
    std::vector<std::string> ab{"a", "b"};
    Poly a = Poly::variable(ab, "a"), b = Poly::variable(ab, "b"), one = Poly::constant(ab, GaussRat(1));
    auto r = solve_at_t0({a - one, a - GaussRat(2) * one}, false);
    CHECK(r.points.empty());
    CHECK(r.lines.empty());

    Poly l = (b - one) * (b - one);
    auto r2 = solve_at_t0({l * (a - GaussRat(2) * one), l * (a + b)}, false);
    REQUIRE(r2.lines.size() == 1);
    CHECK(r2.lines[0].alpha == GaussRat(0));
    CHECK(r2.lines[0].beta == GaussRat(1));
    CHECK(r2.lines[0].gamma == GaussRat(1));
    REQUIRE(r2.points.size() == 1);
    CHECK(r2.points[0].a == GaussRat(2));
    CHECK(r2.points[0].b == GaussRat(-2));
    CHECK_FALSE(r2.nonlinear);

    // a line with a Gaussian slope
    Poly li = GaussRat(2) * a + GaussRat::i() * b - GaussRat(3) * one;
    auto r3 = solve_at_t0({li * a, li * (b - one)}, false);
    REQUIRE(r3.lines.size() == 1);
    CHECK(r3.lines[0].alpha * GaussRat(3) / GaussRat(2) == r3.lines[0].gamma);

    Poly circle = a * a + b * b - one;
    auto r4 = solve_at_t0({circle * a, circle * b}, false);
    CHECK(r4.nonlinear);

    // torus mode drops the coordinate axes
    auto r5 = solve_at_t0({a * (b - one), b * (a - GaussRat(3) * one)}, true);
    REQUIRE(r5.points.size() == 1);
    CHECK(r5.points[0].a == GaussRat(3));
}

TEST_CASE("expansions at the origin") {
    auto br = expand_branches(example_f(), {Rat(0), Rat(0)}, 1, 4);
    REQUIRE(br.size() == 4);
    std::vector<std::pair<std::string, std::string>> got;
    for (const auto& b : br) got.push_back({b.A.to_string(), b.B.to_string()});
    std::string one = "1 + O(t^(5))";
    std::string D = "1 + 4*t + 4*t^3 - 24*t^4 + O(t^(5))";
    CHECK(std::count(got.begin(), got.end(), std::make_pair(one, one)) == 1);
    CHECK(std::count(got.begin(), got.end(), std::make_pair(D, D)) == 1);
    for (const auto& b : br) {
        CHECK(b.n == 1);
        CHECK(*b.A.precision() == 5);
    }
    // (1, 1-4t+16t^2-68t^3+...) and its mirror
    int mixed = 0;
    for (const auto& b : br)
        if (golden::leading_match(b.A, "1", "5") && golden::leading_match(b.B, "1 - 4*t + 16*t^2 - 68*t^3", "4"))
            ++mixed;
    CHECK(mixed == 1);
}

TEST_CASE("expansions at (2,2) need a square root of t") {
    auto br = expand_branches(example_f(), {Rat(2), Rat(2)}, 2, 3);
    REQUIRE(br.size() == 4);
    const char* Pp = "t^2 + 2*i*t^(5/2) - 2*t^3 - 5*i*t^(7/2)";
    const char* Pm = "t^2 - 2*i*t^(5/2) - 2*t^3 + 5*i*t^(7/2)";
    int pp = 0, pm = 0;
    for (const auto& b : br) {
        CHECK(b.n == 2);
        CHECK(*b.A.precision() == 4);
        if (golden::leading_match(b.A, Pp, "4") && golden::leading_match(b.B, Pp, "4")) ++pp;
        if (golden::leading_match(b.A, Pp, "4") && golden::leading_match(b.B, Pm, "4")) ++pm;
    }
    CHECK(pp == 1);
    CHECK(pm == 1);

    auto sys = build_bitangent_system(example_f());
    auto one = try_expand(sys, {Rat(2), Rat(2)}, 1, SolverOptions{});
    CHECK(one.branches.empty());
    CHECK(one.dead_ends > 0);
}

TEST_CASE("no branch at a valuation off the tropical centers") {
    CHECK_THROWS_AS(expand_branches(example_f(), {Rat(1), Rat(1)}, 1, 3), NoSolutionAtValuation);
    CHECK_THROWS_AS(expand_branches(example_f(), {make_rat(1, 2), Rat(0)}, 1, 3), NoSolutionAtValuation);
}

TEST_CASE("all 28 bitangents of the example quartic") {
    const auto& rep = example_report();
    REQUIRE(rep.branches.size() == 28);
    CHECK(golden::match_table(rep.branches) == 28);

    std::map<std::pair<Rat, Rat>, int> vals;
    for (const auto& b : rep.branches) ++vals[{b.valA, b.valB}];
    std::map<std::pair<Rat, Rat>, int> expect{
        {{0, 0}, 4},  {{-2, 0}, 4}, {{0, -2}, 4}, {{2, 2}, 4},  {{-2, -2}, 2},
        {{-4, -4}, 2}, {{2, 0}, 2},  {{4, 0}, 2},  {{0, 2}, 2}, {{0, 4}, 2},
    };
    CHECK(vals == expect);

    CHECK(rep.diagonal == 4);
    CHECK(rep.symmetric_input);
    CHECK(rep.swap_closed);
    CHECK(rep.conjugation_closed);
    CHECK(rep.no_line_through_origin);
    CHECK(rep.min_residual_margin >= 0);
    for (const auto& b : rep.branches) {
        CHECK(b.n <= vals[{b.valA, b.valB}]);
        CHECK(*b.A.valuation() == b.valA);
        CHECK(*b.B.valuation() == b.valB);
    }
}

TEST_CASE("claims about A+B hold on the computed branches") {
    auto c = check_claims(example_report().branches);
    CHECK(c.distinct_sums == 16);
    CHECK(c.sum_valuations == std::map<Rat, int>{{Rat(-4), 1}, {Rat(-2), 5}, {Rat(0), 7}, {Rat(2), 3}});
    CHECK(c.sum_plus_one_nonpositive);
    CHECK(c.diagonal == std::map<std::pair<Rat, Rat>, int>{{{0, 0}, 2}, {{2, 2}, 2}});
    CHECK(c.equal_valuation_sums);
}

TEST_CASE("serial and parallel discovery agree") {
    SolverOptions o;
    o.depth = 3;
    o.parallel = false;
    auto serial = solve_bitangents(example_f(), o);
    o.parallel = true;
    auto par = solve_bitangents(example_f(), o);
    REQUIRE(serial.branches.size() == par.branches.size());
    for (std::size_t k = 0; k < serial.branches.size(); ++k) {
        CHECK(serial.branches[k].A == par.branches[k].A);
        CHECK(serial.branches[k].B == par.branches[k].B);
    }
    CHECK(render_table(serial.branches) == render_table(par.branches));
}

TEST_CASE("residuals shrink with depth") {
    auto sys = build_bitangent_system(example_f());
    for (int depth : {2, 5}) {
        auto br = expand_branches(sys, {Rat(-2), Rat(0)}, 2, depth);
        for (const auto& b : br) CHECK(residual_valuation(sys, b) >= residual_bound(b, depth));
    }
    // a wrong coefficient is caught
    auto br = expand_branches(sys, {Rat(0), Rat(0)}, 1, 4);
    auto bad = br[0];
    bad.A += PuiseuxSeries::monomial(GaussRat(1), Rat(1));
    CHECK(residual_valuation(sys, bad) < residual_valuation(sys, br[0]));
}

TEST_CASE("lines through the origin") {
    CHECK(no_bitangent_through_origin(example_f()));
    // f(0,y,z) = (y^2+z^2)^2 makes x = 0 a bitangent
    std::vector<std::string> xyzt{"x", "y", "z", "t"};
    auto m = [&](int i, int j, int k, long c) { return Poly::monomial(xyzt, {i, j, k, 0}, GaussRat(c)); };
    Poly f = m(4, 0, 0, 1) + m(1, 3, 0, 1) + m(1, 0, 3, 1) + m(0, 4, 0, 1) + m(0, 2, 2, 2) + m(0, 0, 4, 1);
    CHECK_FALSE(no_bitangent_through_origin(f));
}

TEST_CASE("the 28 computed bitangents group into seven theta characteristics") {
    std::vector<std::pair<std::string, Pt>> centers;
    const auto& br = example_report().branches;
    for (std::size_t k = 0; k < br.size(); ++k)
        centers.push_back({"b" + std::to_string(k), Pt{-br[k].valA, -br[k].valB}});
    auto rep = verify_grouping(example_quartic(), centers);
    REQUIRE(rep.buckets.size() == 7);
    std::set<int> thetas;
    for (std::size_t t = 0; t < 7; ++t) {
        CHECK(rep.buckets[t].size() == 4);
        for (int i : rep.buckets[t]) {
            thetas.insert(rep.records[i].theta);
            const auto& tangency = rep.records[i].tangency;
            CHECK(linearly_equivalent(tangency, rep.thetas[t].divisor, rep.skeleton));
        }
    }
    CHECK(thetas.size() == 7);
    centers.pop_back();
    CHECK_THROWS_AS(verify_grouping(example_quartic(), centers), GroupingViolation);
}
