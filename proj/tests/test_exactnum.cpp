#include <doctest.h>

#include "tropk4/algebra.hpp"
#include "tropk4/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <set>

using namespace tropk4;

namespace {

PuiseuxSeries S(const char* s) { return PuiseuxSeries::parse(s); }

Poly var(const std::vector<std::string>& vars, const std::string& v) {
    return Poly::variable(vars, v);
}

Poly cst(const std::vector<std::string>& vars, long c) { return Poly::constant(vars, GaussRat(c)); }

std::vector<Complex> eigen_roots(const UPoly& p) {
    int d = p.degree();
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
    GaussRat inv = p.lead().inverse();
    for (int k = 0; k < d; ++k) {
        GaussRat c = p.coeffs()[k] * inv;
        C(k, d - 1) = -std::complex<double>(c.re.get_d(), c.im.get_d());
        if (k > 0) C(k, k - 1) = 1;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
    std::vector<Complex> out;
    for (int k = 0; k < d; ++k) out.emplace_back(es.eigenvalues()(k).real(), es.eigenvalues()(k).imag());
    return out;
}

UPoly random_upoly(std::mt19937& rng, int deg, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<GaussRat> c(deg + 1);
    for (auto& v : c) v = GaussRat(dist(rng));
    if (c.back().is_zero()) c.back() = GaussRat(1);
    return UPoly(c);
}

std::multiset<std::pair<std::string, int>> as_multiset(const NewtonPolygonResult& r) {
    std::multiset<std::pair<std::string, int>> out;
    for (const auto& s : r.slopes)
        for (int k = 0; k < s.multiplicity; ++k) out.insert({to_string(s.valuation), 1});
    return out;
}

}  // namespace

TEST_CASE("rationals and gaussian rationals") {
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(parse_rat(" -7 ") == Rat(-7));
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("x"), ParseError);
    GaussRat z(Rat(1, 2), Rat(-3));
    CHECK(z * z.inverse() == GaussRat(1));
    CHECK(z.conj().conj() == z);
    CHECK(to_string(GaussRat(Rat(0), Rat(2))) == "2*i");
    CHECK(to_string(GaussRat(Rat(1), Rat(-1))) == "(1 - i)");
    CHECK(floor_rat(Rat(-3, 2)) == -2);
    CHECK(ceil_rat(Rat(-3, 2)) == -1);
}

TEST_CASE("series arithmetic") {
    CHECK((S("t") + S("t")).to_string() == "2*t");
    CHECK((S("t^(1/2) + O(t^2)") * S("t^(1/2) + O(t^2)")).to_string() == "t + O(t^(5/2))");
    CHECK((S("1 + 4*t + O(t^2)") * S("1 - 4*t + O(t^2)")).to_string() == "1 + O(t^(2))");
    auto a = S("t^2 + 2*i*t^(5/2) - 2*t^3 + O(t^(4))");
    CHECK(a.to_string() == "t^2 + 2*i*t^(5/2) - 2*t^3 + O(t^(4))");
    CHECK(a.ramification() == 2);
    CHECK(*a.valuation() == 2);
    auto b = S("1/2*t^(-4) + (1 + 1/2*i)*t^(-7/2) - i*t + O(t^(-2))");
    CHECK(PuiseuxSeries::parse(b.to_string()) == b);
    CHECK(b.coeff(Rat(-7, 2)) == GaussRat(Rat(1), Rat(1, 2)));
    CHECK(S("0") == PuiseuxSeries());
    CHECK_THROWS_AS(S("t^"), ParseError);
    CHECK_THROWS_AS(S("1 + + O(t)"), ParseError);

    auto inv = S("1 + t").inverse(Rat(4));
    CHECK(inv.to_string() == "1 - t + t^2 - t^3 + O(t^(4))");
    auto prod = S("2*t^(-1) + 3 + O(t^2)") * S("2*t^(-1) + 3 + O(t^2)").inverse(Rat(5));
    CHECK(prod.to_string() == "1 + O(t^(3))");
}

TEST_CASE("series multiplication properties") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> c(-5, 5), e(-4, 6), pr(4, 10);
    auto rnd = [&] {
        PuiseuxSeries s;
        for (int k = 0; k < 4; ++k) s.add_term(Rat(e(rng), 2), GaussRat(c(rng), c(rng)));
        if (s.is_zero()) s.add_term(Rat(1), GaussRat(1));
        return s.truncated(Rat(pr(rng)));
    };
    for (int it = 0; it < 100; ++it) {
        auto a = rnd(), b = rnd(), d = rnd();
        CHECK(a * b == b * a);
        auto l = (a * b) * d, r = a * (b * d);
        Rat p = std::min(*l.precision(), *r.precision());
        CHECK(l.truncated(p) == r.truncated(p));
        CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
    }
}

TEST_CASE("newton polygon valuations") {
    auto r1 = newton_polygon_valuations({S("-t"), S("0"), S("1")});
    REQUIRE(r1.slopes.size() == 1);
    CHECK(*r1.slopes[0].valuation == Rat(1, 2));
    CHECK(r1.slopes[0].multiplicity == 2);

    auto r2 = newton_polygon_valuations({S("t^3"), S("-t - t^2"), S("1")});
    REQUIRE(r2.slopes.size() == 2);
    CHECK(*r2.slopes[0].valuation == 1);
    CHECK(*r2.slopes[1].valuation == 2);
    CHECK(r2.slopes[0].multiplicity == 1);

    auto r3 = newton_polygon_valuations({S("0"), S("0"), S("0"), S("1")});
    REQUIRE(r3.slopes.size() == 1);
    CHECK(!r3.slopes[0].valuation);
    CHECK(r3.slopes[0].multiplicity == 3);

    CHECK_THROWS_AS(newton_polygon_valuations({S("0")}), ZeroPolynomial);
}

TEST_CASE("newton polygon additivity under products") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> deg(1, 4), ex(-3, 6), c(-3, 3), zero(0, 5);
    auto rnd = [&] {
        int d = deg(rng);
        std::vector<PuiseuxSeries> p(d + 1);
        for (int k = 0; k <= d; ++k) {
            if (k < d && zero(rng) == 0) continue;
            int cc = c(rng);
            p[k] = PuiseuxSeries::monomial(GaussRat(cc == 0 ? 1 : cc), Rat(ex(rng), 2));
        }
        return p;
    };
    for (int it = 0; it < 200; ++it) {
        auto p = rnd(), q = rnd();
        std::vector<PuiseuxSeries> pq(p.size() + q.size() - 1);
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) pq[i + j] += p[i] * q[j];
        auto lhs = as_multiset(newton_polygon_valuations(pq));
        auto rhs = as_multiset(newton_polygon_valuations(p));
        for (auto& x : as_multiset(newton_polygon_valuations(q))) rhs.insert(x);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("polynomials") {
    std::vector<std::string> v{"x", "y"};
    Poly x = var(v, "x"), y = var(v, "y");
    Poly p = (x + y).pow(3);
    CHECK(p.total_degree() == 3);
    CHECK(p.coeff({1, 2}) == GaussRat(3));
    auto q = p.divide_exact(x + y);
    REQUIRE(q);
    CHECK(*q == (x + y) * (x + y));
    CHECK(!p.divide_exact(x - y));
    CHECK(p.substitute(1, cst(v, 0) - x).is_zero());
    CHECK(p.derivative(0) == Poly::constant(v, GaussRat(3)) * (x + y).pow(2));
    CHECK((x * x - y).evaluate(0, GaussRat(2)) == cst(v, 4) - y);

    UPoly f({GaussRat(-2), GaussRat(5), GaussRat(-4), GaussRat(1)});  // (x-1)^2 (x-2)
    auto sf = f.squarefree();
    REQUIRE(sf.size() == 2);
    CHECK(sf[0].first == UPoly({GaussRat(-2), GaussRat(1)}));
    CHECK(sf[0].second == 1);
    CHECK(sf[1].first == UPoly({GaussRat(-1), GaussRat(1)}));
    CHECK(sf[1].second == 2);
}

TEST_CASE("resultant examples") {
    std::vector<std::string> v{"x", "a", "b"};
    Poly x = var(v, "x"), a = var(v, "a"), b = var(v, "b");
    CHECK(resultant(x - a, x - b, "x") == a - b);
    CHECK(resultant(x * x - cst(v, 1), x - cst(v, 1), "x").is_zero());
    CHECK_THROWS_AS(resultant(a, x, "x"), DegreeZero);
}

TEST_CASE("resultant against a root-product oracle") {
    std::mt19937 rng(3);
    std::vector<std::string> v{"x"};
    for (int it = 0; it < 20; ++it) {
        UPoly p = random_upoly(rng, 3, -6, 6), q = random_upoly(rng, 3, -6, 6);
        Poly r = resultant(p.to_poly(v, 0), q.to_poly(v, 0), "x");
        auto rp = eigen_roots(p), rq = eigen_roots(q);
        std::complex<long double> prod = std::pow(std::complex<long double>(p.lead().re.get_d()), 3) *
                                          std::pow(std::complex<long double>(q.lead().re.get_d()), 3);
        for (auto& a : rp)
            for (auto& b : rq) prod *= a - b;
        long double exact = r.constant_term().re.get_d();
        CHECK(std::abs(prod - std::complex<long double>(exact)) <= 1e-6L * std::max<long double>(1, std::abs(exact)));
    }
}

TEST_CASE("resultant symmetry and multiplicativity") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-4, 4), d(1, 3);
    std::vector<std::string> v{"x", "y"};
    auto rnd = [&] {
        Poly p(v);
        int dx = d(rng);
        for (int i = 0; i <= dx; ++i)
            for (int j = 0; j <= 2; ++j) p.add_term({i, j}, GaussRat(c(rng)));
        p.add_term({dx, 0}, GaussRat(5));
        if (p.degree(0) < 1) p.add_term({1, 0}, GaussRat(1));
        return p;
    };
    for (int it = 0; it < 100; ++it) {
        Poly p = rnd(), q = rnd(), r = rnd();
        Poly pq = resultant(p, q, "x"), qp = resultant(q, p, "x");
        CHECK((pq == qp || pq == -qp));
        CHECK(resultant(p, q * r, "x") == pq * resultant(p, r, "x"));
    }
}

TEST_CASE("complex roots") {
    auto r1 = complex_roots(UPoly({GaussRat(1), GaussRat(0), GaussRat(1)}));
    REQUIRE(r1.size() == 2);
    CHECK(rationalize(r1[0].z, 1e-9, 100) == GaussRat(Rat(0), Rat(-1)));
    CHECK(rationalize(r1[1].z, 1e-9, 100) == GaussRat::i());

    auto r2 = complex_roots(UPoly({GaussRat(-2), GaussRat(5), GaussRat(-4), GaussRat(1)}));
    REQUIRE(r2.size() == 2);
    CHECK(rationalize(r2[0].z, 1e-9, 100) == GaussRat(1));
    CHECK(r2[0].multiplicity == 2);
    CHECK(rationalize(r2[1].z, 1e-9, 100) == GaussRat(2));
    CHECK(r2[1].multiplicity == 1);

    std::mt19937 rng(17);
    for (int it = 0; it < 20; ++it) {
        UPoly p = random_upoly(rng, 5, -9, 9);
        std::vector<GaussRat> c = p.coeffs();
        c.resize(6);
        c[5] = GaussRat(1);
        p = UPoly(c);
        auto ours = complex_roots(p);
        auto ref = eigen_roots(p);
        int count = 0;
        for (const auto& r : ours) {
            count += r.multiplicity;
            auto best = std::min_element(ref.begin(), ref.end(), [&](auto a, auto b) {
                return std::abs(a - r.z) < std::abs(b - r.z);
            });
            CHECK(std::abs(*best - r.z) < 1e-6L);
        }
        CHECK(count == 5);
    }
}

TEST_CASE("rationalize") {
    CHECK(rationalize_real(0.4999999999L, 1e-6, 1000) == Rat(1, 2));
    CHECK(rationalize({2.0000000001L, 0.9999999999L}, 1e-9, 1000) == GaussRat(Rat(2), Rat(1)));
    CHECK_THROWS_AS(rationalize_real(3.14159265L, 1e-9, 50), NoSmallRational);
    CHECK_THROWS_AS(rationalize_real(0.5L, 0.1, 10), Ambiguous);
}

TEST_CASE("rationalized roots substitute to exact zero") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> c(-6, 6), den(1, 4);
    for (int it = 0; it < 30; ++it) {
        UPoly p({GaussRat(1)});
        for (int k = 0; k < 4; ++k) {
            GaussRat root(Rat(c(rng), den(rng)), Rat(c(rng), den(rng)));
            root.re.canonicalize();
            root.im.canonicalize();
            p = p * UPoly({-root, GaussRat(1)});
        }
        for (const auto& r : complex_roots(p)) {
            GaussRat z = rationalize(r.z, 1e-9, 1000);
            CHECK(p.eval(z).is_zero());
        }
    }
}
