#include "tropk4/algebra.hpp"

#include "tropk4/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace tropk4 {

NewtonPolygonResult newton_polygon_valuations(const std::vector<PuiseuxSeries>& coeffs) {
    std::vector<std::pair<int, Rat>> pts;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) pts.emplace_back(static_cast<int>(k), *coeffs[k].valuation());
    if (pts.empty()) throw ZeroPolynomial("newton polygon of the zero polynomial");

    // Lower hull, collinear points dropped so each segment is maximal.
    std::vector<std::pair<int, Rat>> hull;
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return Rat((a.first - o.first) * (b.second - o.second) -
                   (a.second - o.second) * (b.first - o.first));
    };
    for (const auto& p : pts) {
        while (hull.size() >= 2 && sgn(cross(hull[hull.size() - 2], hull.back(), p)) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }

    NewtonPolygonResult out;
    for (std::size_t k = hull.size() - 1; k >= 1; --k) {
        int dx = hull[k].first - hull[k - 1].first;
        Rat slope = (hull[k].second - hull[k - 1].second) / Rat(dx);
        out.slopes.push_back({Rat(-slope), dx});
    }
    if (pts.front().first > 0) out.slopes.push_back({std::nullopt, pts.front().first});
    return out;
}

Poly resultant(const Poly& p, const Poly& q, const std::string& var) {
    auto vars = merge_vars(p.vars(), q.vars());
    if (std::find(vars.begin(), vars.end(), var) == vars.end())
        throw DegreeZero("variable '" + var + "' absent from both inputs");
    Poly a = p.with_vars(vars), b = q.with_vars(vars);
    int x = a.require_index(var);
    int m = a.degree(x), n = b.degree(x);
    if (m < 1 || n < 1) throw DegreeZero("resultant input constant in " + var);
    auto ca = a.coefficients(x), cb = b.coefficients(x);
    int N = m + n;
    std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N, Poly(vars)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = ca[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = cb[n - k];

    bool negate = false;
    Poly prev = Poly::constant(vars, GaussRat(1));
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            // Prefer the pivot with fewest terms to limit growth.
            int best = -1;
            for (int r = k + 1; r < N; ++r)
                if (!M[r][k].is_zero() && (best < 0 || M[r][k].size() < M[best][k].size())) best = r;
            if (best < 0) return Poly(vars);
            std::swap(M[k], M[best]);
            negate = !negate;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                Poly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
                auto d = num.divide_exact(prev);
                if (!d) throw std::logic_error("Bareiss division not exact");
                M[i][j] = std::move(*d);
            }
            M[i][k] = Poly(vars);
        }
        prev = M[k][k];
    }
    Poly det = M[N - 1][N - 1];
    return negate ? -det : det;
}

namespace {

std::vector<Complex> aberth(const UPoly& f, const RootOptions& opt) {
    int d = f.degree();
    std::vector<Complex> c(d + 1);
    GaussRat inv = f.lead().inverse();
    for (int k = 0; k <= d; ++k) {
        GaussRat v = f.coeffs()[k] * inv;
        c[k] = Complex(v.re.get_d(), v.im.get_d());
    }
    if (d == 1) return {-c[0]};

    auto eval = [&](Complex z, Complex& dp) {
        Complex p = c[d];
        dp = 0;
        for (int k = d - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        return p;
    };

    long double bound = 0;
    for (int k = 0; k < d; ++k) bound = std::max(bound, std::abs(c[k]));
    bound = 1 + bound;
    std::vector<Complex> z(d);
    for (int k = 0; k < d; ++k) {
        long double ang = 2 * std::numbers::pi_v<long double> * k / d + 0.4L;
        z[k] = std::polar(bound * 0.5L, ang);
    }
    for (int it = 0; it < opt.max_iter; ++it) {
        long double worst = 0;
        for (int k = 0; k < d; ++k) {
            Complex dp;
            Complex p = eval(z[k], dp);
            if (p == Complex(0)) continue;
            Complex ratio = p / dp;
            Complex s = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) s += Complex(1) / (z[k] - z[j]);
            Complex w = ratio / (Complex(1) - ratio * s);
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(z[k])));
        }
        if (worst < opt.tol) return z;
    }
    throw ToleranceNotMet("root iteration did not converge for degree " + std::to_string(d));
}

}  // namespace

std::vector<ApproxRoot> complex_roots(const UPoly& p, const RootOptions& opt) {
    if (p.degree() < 1) throw DegreeZero("complex_roots of a constant");
    std::vector<ApproxRoot> out;
    for (const auto& [factor, mult] : p.squarefree())
        for (const Complex& z : aberth(factor, opt)) out.push_back({z, mult});
    std::sort(out.begin(), out.end(), [](const ApproxRoot& a, const ApproxRoot& b) {
        if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
        return a.z.imag() < b.z.imag();
    });
    return out;
}

Rat rationalize_real(long double x, double tol, long max_denominator) {
    if (!(tol > 0)) throw std::invalid_argument("rationalize tolerance must be positive");
    std::set<Rat> found;
    for (long q = 1; q <= max_denominator; ++q) {
        long double p = std::round(x * q);
        if (std::fabs(x - p / q) > tol) continue;
        Rat r(Int(static_cast<long>(p)), Int(q));
        r.canonicalize();
        found.insert(r);
        if (found.size() > 1) break;
    }
    if (found.empty())
        throw NoSmallRational("no rational with denominator <= " + std::to_string(max_denominator) +
                              " near " + std::to_string(static_cast<double>(x)));
    if (found.size() > 1)
        throw Ambiguous("several rationals within tolerance of " +
                        std::to_string(static_cast<double>(x)));
    return *found.begin();
}

GaussRat rationalize(std::complex<long double> z, double tol, long max_denominator) {
    return {rationalize_real(z.real(), tol, max_denominator),
            rationalize_real(z.imag(), tol, max_denominator)};
}

}  // namespace tropk4
