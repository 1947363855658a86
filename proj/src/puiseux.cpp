#include "tropk4/puiseux.hpp"

#include "tropk4/algebra.hpp"
#include "tropk4/bitangents.hpp"
#include "tropk4/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>
#include <set>
#include <sstream>

namespace tropk4 {

namespace {

const std::vector<std::string> kAB{"a", "b"};
const std::vector<std::string> kTAB{"t", "A", "B"};
constexpr int kExact = std::numeric_limits<int>::max() / 4;

Int binom(int n, int k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace

// ---- square-detecting ideal ----

SquareIdealGenerators SquareIdealGenerators::make() {
    std::vector<std::string> vars{"X0", "X1", "X2", "X3", "X4"};
    std::array<Poly, 5> X;
    for (int k = 0; k < 5; ++k) X[k] = Poly::variable(vars, vars[k]);
    return {square_ideal(X)};
}

bool is_perfect_square(const std::array<GaussRat, 5>& c) {
    for (const auto& g : square_ideal(c))
        if (!g.is_zero()) return false;
    return true;
}

bool is_perfect_square(const std::array<Poly, 5>& c) {
    for (const auto& g : square_ideal(c))
        if (!g.is_zero()) return false;
    return true;
}

BitangentSystem build_bitangent_system(const Poly& f) {
    if (f.is_zero()) throw NotQuartic("zero polynomial");
    int ix = f.index_of("x"), iy = f.index_of("y"), iz = f.index_of("z"), it = f.index_of("t");
    auto exp_of = [](const Monomial& m, int k) { return k < 0 ? 0 : m[k]; };
    BitangentSystem sys;
    for (auto& c : sys.coeffs) c = Poly(kTAB);
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t k = 0; k < m.size(); ++k) {
            int kk = static_cast<int>(k);
            if (m[k] != 0 && kk != ix && kk != iy && kk != iz && kk != it)
                throw NotQuartic("unexpected variable " + f.vars()[k]);
        }
        int dx = exp_of(m, ix), dy = exp_of(m, iy), dz = exp_of(m, iz), e = exp_of(m, it);
        if (dx + dy + dz != 4) throw NotQuartic("term of degree " + std::to_string(dx + dy + dz) + " in x,y,z");
        // z^dz = (-1)^dz sum_j C(dz,j) A^j B^(dz-j) x^j y^(dz-j)
        for (int j = 0; j <= dz; ++j) {
            GaussRat w = c * GaussRat(Rat(binom(dz, j)));
            if (dz % 2) w = -w;
            sys.coeffs[dx + j].add_term({e, j, dz - j}, w);
        }
    }
    sys.gens = square_ideal(sys.coeffs);
    return sys;
}

Poly quartic_poly(const QuarticInput& q) {
    if (!q.full) throw NotQuartic("full coefficients required");
    Rat lo;
    bool any = false;
    for (const auto& [ij, s] : q.coeffs)
        for (const auto& [e, c] : s.terms()) {
            if (!is_integer(e)) throw NotQuartic("coefficient exponent " + to_string(e) + " is not integral");
            if (!any || e < lo) lo = e;
            any = true;
        }
    std::vector<std::string> vars{"x", "y", "z", "t"};
    Poly f(vars);
    for (const auto& [ij, s] : q.coeffs)
        for (const auto& [e, c] : s.terms()) {
            Rat sh = e - lo;
            f.add_term({ij.first, ij.second, 4 - ij.first - ij.second, static_cast<int>(sh.get_num().get_si())}, c);
        }
    if (f.is_zero()) throw NotQuartic("zero polynomial");
    return f;
}

QuarticInput quartic_input(const Poly& f) {
    int ix = f.index_of("x"), iy = f.index_of("y"), iz = f.index_of("z"), it = f.index_of("t");
    auto exp_of = [](const Monomial& m, int k) { return k < 0 ? 0 : m[k]; };
    std::map<Lattice, PuiseuxSeries> c;
    for (const auto& [m, v] : f.terms()) {
        int dx = exp_of(m, ix), dy = exp_of(m, iy), dz = exp_of(m, iz);
        if (dx + dy + dz != 4) throw NotQuartic("not homogeneous of degree 4");
        c[{dx, dy}] += PuiseuxSeries::monomial(v, Rat(exp_of(m, it)));
    }
    return QuarticInput::from_coefficients(c);
}

Poly swap_variables(const Poly& f, const std::string& u, const std::string& v) {
    auto vars = f.vars();
    for (const auto& name : {u, v})
        if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
    Poly g = f.with_vars(vars);
    auto renamed = vars;
    int iu = g.require_index(u), iv = g.require_index(v);
    std::swap(renamed[iu], renamed[iv]);
    Poly out(renamed);
    for (const auto& [m, c] : g.terms()) out.add_term(m, c);
    return out.with_vars(vars);
}

// ---- bivariate helpers over Q(i)[a][b] ----

namespace {

using BV = std::vector<UPoly>;  // coefficient of b^k, a polynomial in a

void bv_trim(BV& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

BV to_bv(const Poly& p) {
    Poly q = p.with_vars(kAB);
    std::vector<std::vector<GaussRat>> c;
    for (const auto& [m, v] : q.terms()) {
        if (static_cast<int>(c.size()) <= m[1]) c.resize(m[1] + 1);
        if (static_cast<int>(c[m[1]].size()) <= m[0]) c[m[1]].resize(m[0] + 1);
        c[m[1]][m[0]] += v;
    }
    BV out;
    for (auto& v : c) out.emplace_back(std::move(v));
    bv_trim(out);
    return out;
}

Poly from_bv(const BV& f) {
    Poly p(kAB);
    for (std::size_t j = 0; j < f.size(); ++j)
        for (int i = 0; i <= f[j].degree(); ++i)
            if (!f[j][i].is_zero()) p.add_term({i, static_cast<int>(j)}, f[j][i]);
    return p;
}

int bv_deg(const BV& f) { return static_cast<int>(f.size()) - 1; }

UPoly exact_div(const UPoly& a, const UPoly& d) {
    auto [q, r] = UPoly::divmod(a, d);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

UPoly bv_content(const BV& f) {
    UPoly g;
    for (const auto& c : f) g = UPoly::gcd(g, c);
    return g;
}

BV bv_divide(const BV& f, const UPoly& d) {
    BV out;
    for (const auto& c : f) out.push_back(exact_div(c, d));
    return out;
}

BV bv_pp(const BV& f) {
    if (f.empty()) return f;
    return bv_divide(f, bv_content(f));
}

BV bv_prem(BV F, const BV& G) {
    int dG = bv_deg(G);
    UPoly lcG = G.back();
    while (!F.empty() && bv_deg(F) >= dG) {
        UPoly lcF = F.back();
        int k = bv_deg(F) - dG;
        for (auto& c : F) c = c * lcG;
        for (int i = 0; i <= dG; ++i) F[i + k] = F[i + k] - lcF * G[i];
        bv_trim(F);
    }
    return F;
}

BV bv_normalize(BV f) {
    if (f.empty()) return f;
    GaussRat inv = f.back().lead().inverse();
    UPoly s({inv});
    for (auto& c : f) c = c * s;
    return f;
}

BV bv_gcd(BV F, BV G) {
    bv_trim(F);
    bv_trim(G);
    if (F.empty()) return bv_normalize(G);
    if (G.empty()) return bv_normalize(F);
    UPoly c = UPoly::gcd(bv_content(F), bv_content(G));
    F = bv_pp(F);
    G = bv_pp(G);
    if (bv_deg(F) < bv_deg(G)) std::swap(F, G);
    while (true) {
        if (bv_deg(G) == 0) {
            F = BV{UPoly({GaussRat(1)})};
            break;
        }
        BV R = bv_prem(F, G);
        if (R.empty()) {
            F = G;
            break;
        }
        F = std::move(G);
        G = bv_pp(R);
    }
    for (auto& x : F) x = x * c;
    return bv_normalize(F);
}

UPoly upow(const UPoly& p, int e) {
    UPoly r({GaussRat(1)});
    for (int k = 0; k < e; ++k) r = r * p;
    return r;
}

// Resultant with respect to b, Bareiss elimination over Q(i)[a].
UPoly bv_resultant(const BV& F, const BV& G) {
    int m = bv_deg(F), n = bv_deg(G);
    if (m < 0 || n < 0) return UPoly();
    if (m == 0) return upow(F[0], n);
    if (n == 0) return upow(G[0], m);
    int N = m + n;
    std::vector<std::vector<UPoly>> M(N, std::vector<UPoly>(N));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[r][r + k] = F[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) M[n + r][r + k] = G[n - k];
    bool negate = false;
    UPoly prev({GaussRat(1)});
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int best = -1;
            for (int r = k + 1; r < N; ++r)
                if (!M[r][k].is_zero() && (best < 0 || M[r][k].degree() < M[best][k].degree())) best = r;
            if (best < 0) return UPoly();
            std::swap(M[k], M[best]);
            negate = !negate;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) M[i][j] = exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev);
            M[i][k] = UPoly();
        }
        prev = M[k][k];
    }
    UPoly det = M[N - 1][N - 1];
    return negate ? UPoly() - det : det;
}

int root_multiplicity(UPoly p, const GaussRat& z) {
    UPoly lin({-z, GaussRat(1)});
    int m = 0;
    while (!p.is_zero()) {
        auto [q, r] = UPoly::divmod(p, lin);
        if (!r.is_zero()) break;
        p = q;
        ++m;
    }
    return m;
}

struct RootSet {
    std::vector<std::pair<GaussRat, int>> roots;
    int unresolved = 0;
};

// Gaussian rational roots of p, verified exactly; the others are counted.
RootSet rational_roots(const UPoly& p, const SolverOptions& opt) {
    RootSet out;
    if (p.degree() < 1) return out;
    for (const auto& r : complex_roots(p)) {
        std::optional<GaussRat> hit;
        for (double tol : {opt.tol, opt.tol * 1e3, opt.tol * 1e5}) {
            try {
                GaussRat z = rationalize(r.z, tol, opt.max_den);
                if (p.eval(z).is_zero()) {
                    hit = z;
                    break;
                }
            } catch (const Error&) {
            }
        }
        if (!hit) {
            ++out.unresolved;
            continue;
        }
        bool dup = false;
        for (auto& [z, m] : out.roots)
            if (z == *hit) dup = true;
        if (!dup) out.roots.push_back({*hit, r.multiplicity});
    }
    return out;
}

UPoly eval_a(const BV& f, const GaussRat& a0) {
    std::vector<GaussRat> c;
    for (const auto& x : f) c.push_back(x.eval(a0));
    return UPoly(std::move(c));
}

Poly top_form(const Poly& g) {
    int d = g.total_degree();
    Poly out(g.vars());
    for (const auto& [m, c] : g.terms())
        if (m[0] + m[1] == d) out.add_term(m, c);
    return out;
}

// Linear factors alpha*a + beta*b - gamma of g over Q(i); returns the cofactor.
Poly split_lines(const Poly& g, std::vector<T0Line>& lines, int& unresolved, const SolverOptions& opt) {
    Poly h = g;
    auto divide_out = [&h](const Poly& l) {
        while (true) {
            auto q = h.divide_exact(l);
            if (!q) break;
            h = *q;
        }
    };
    Poly top = top_form(g);
    int d = g.total_degree();
    // kappa*a + b: top(1, -kappa) = 0
    std::vector<GaussRat> pc(d + 1);
    for (const auto& [m, c] : top.terms()) pc[m[1]] += (m[1] % 2 ? -c : c);
    UPoly p(pc);
    RootSet kap = rational_roots(p, opt);
    unresolved += kap.unresolved;
    std::vector<std::string> vw{"a", "b", "w"};
    Poly va = Poly::variable(vw, "a"), vwp = Poly::variable(vw, "w");
    for (const auto& [kappa, mult] : kap.roots) {
        Poly sub = vwp - kappa * va;
        Poly H = g.with_vars(vw).substitute(1, sub).with_vars({"a", "w"});
        UPoly u;
        for (const auto& c : H.coefficients(0)) u = UPoly::gcd(u, UPoly::from_poly(c.with_vars({"a", "w"}), 1));
        RootSet gam = rational_roots(u, opt);
        unresolved += gam.unresolved;
        for (const auto& [gamma, gm] : gam.roots) {
            Poly l(kAB);
            l.add_term({1, 0}, kappa);
            l.add_term({0, 1}, GaussRat(1));
            l.add_term({0, 0}, -gamma);
            if (!h.divide_exact(l)) continue;
            lines.push_back({kappa, GaussRat(1), gamma});
            divide_out(l);
        }
    }
    if (pc[d].is_zero()) {
        // top form divisible by a: lines a = gamma
        BV f = to_bv(g);
        UPoly u;
        for (const auto& c : f) u = UPoly::gcd(u, c);
        RootSet gam = rational_roots(u, opt);
        unresolved += gam.unresolved;
        for (const auto& [gamma, gm] : gam.roots) {
            Poly l(kAB);
            l.add_term({1, 0}, GaussRat(1));
            l.add_term({0, 0}, -gamma);
            if (!h.divide_exact(l)) continue;
            lines.push_back({GaussRat(1), GaussRat(0), gamma});
            divide_out(l);
        }
    }
    return h;
}

}  // namespace

T0Result solve_at_t0(const std::vector<Poly>& forms, bool torus, const SolverOptions& opt) {
    T0Result res;
    std::vector<Poly> L;
    for (const auto& f : forms) {
        Poly p = f.with_vars(kAB);
        if (p.is_zero()) continue;
        if (torus) p = p.strip_power(0).strip_power(1);
        if (p.is_constant()) return res;
        L.push_back(p);
    }
    if (L.empty()) {
        res.nonlinear = true;
        return res;
    }
    BV g = to_bv(L[0]);
    for (std::size_t k = 1; k < L.size() && bv_deg(g) >= 0; ++k) {
        g = bv_gcd(g, to_bv(L[k]));
        if (bv_deg(g) == 0 && g[0].degree() == 0) break;
    }
    Poly gp = from_bv(g);
    std::vector<Poly> M = L;
    if (gp.total_degree() > 0) {
        Poly rest = split_lines(gp, res.lines, res.unresolved, opt);
        if (rest.total_degree() > 0) res.nonlinear = true;
        for (auto& m : M) m = *m.divide_exact(gp);
    }

    // isolated points of the cofactors
    std::vector<BV> Mb;
    for (const auto& m : M) {
        if (m.is_constant()) return res;
        Mb.push_back(to_bv(m));
    }
    std::vector<std::size_t> order(Mb.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (bv_deg(Mb[x]) != bv_deg(Mb[y])) return bv_deg(Mb[x]) < bv_deg(Mb[y]);
        return M[x].total_degree() < M[y].total_degree();
    });
    UPoly R;
    std::vector<UPoly> eliminants;
    int maxdeg = 0;
    for (const auto& f : Mb) maxdeg = std::max(maxdeg, bv_deg(f));
    for (const auto& f : Mb)
        if (bv_deg(f) == 0) {
            R = UPoly::gcd(R, f[0]);
            // its resultant with a partner of b-degree d is f^d
            eliminants.push_back(upow(f[0], std::max(maxdeg, 1)));
        }
    int used = 0;
    for (std::size_t x = 0; x < order.size() && used < 4; ++x)
        for (std::size_t y = x + 1; y < order.size() && used < 4; ++y) {
            const BV &F = Mb[order[x]], &G = Mb[order[y]];
            if (bv_deg(F) == 0 || bv_deg(G) == 0) continue;
            UPoly r = bv_resultant(F, G);
            if (r.is_zero()) continue;
            eliminants.push_back(r);
            R = R.is_zero() ? r : UPoly::gcd(R, r);
            ++used;
            if (R.degree() == 0) break;
        }
    if (R.is_zero()) throw PositiveDimensional("eliminant vanishes identically");
    RootSet ra = rational_roots(R, opt);
    res.unresolved += ra.unresolved;
    for (const auto& [a0, gm] : ra.roots) {
        // Upper bound on the branch count: least root multiplicity over the eliminants.
        int mult = -1;
        for (const auto& e : eliminants) {
            int m = root_multiplicity(e, a0);
            if (mult < 0 || m < mult) mult = m;
        }
        UPoly hb;
        for (const auto& f : Mb) hb = UPoly::gcd(hb, eval_a(f, a0));
        if (hb.degree() < 1) continue;
        RootSet rb = rational_roots(hb, opt);
        res.unresolved += rb.unresolved;
        for (const auto& [b0, bm] : rb.roots) {
            bool ok = true;
            for (const auto& m : M) ok = ok && m.evaluate_all({a0, b0}).is_zero();
            if (!ok) continue;
            if (torus && (a0.is_zero() || b0.is_zero())) continue;
            bool on_line = false;
            for (const auto& l : res.lines) on_line = on_line || (l.alpha * a0 + l.beta * b0 == l.gamma);
            if (on_line) continue;
            res.points.push_back({a0, b0, mult, false});
        }
    }
    // simplicity
    std::vector<std::array<GaussRat, 2>> grads;
    for (auto& pt : res.points) {
        grads.clear();
        for (const auto& l : L)
            grads.push_back({l.derivative(0).evaluate_all({pt.a, pt.b}), l.derivative(1).evaluate_all({pt.a, pt.b})});
        for (std::size_t x = 0; x < grads.size() && !pt.simple; ++x)
            for (std::size_t y = x + 1; y < grads.size(); ++y)
                if (!(grads[x][0] * grads[y][1] - grads[x][1] * grads[y][0]).is_zero()) {
                    pt.simple = true;
                    break;
                }
        if (pt.simple) pt.multiplicity = 1;
    }
    std::sort(res.points.begin(), res.points.end(), [](const T0Point& x, const T0Point& y) {
        if (!(x.a == y.a)) return x.a < y.a;
        return x.b < y.b;
    });
    return res;
}

// ---- working system ----

namespace {

void add_to(TriPoly& p, const std::array<int, 3>& k, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = p.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

TriPoly tri_mul(const TriPoly& x, const TriPoly& y, int cap) {
    TriPoly out;
    for (const auto& [kx, cx] : x)
        for (const auto& [ky, cy] : y) {
            int s = kx[0] + ky[0];
            if (s >= cap) continue;
            add_to(out, {s, kx[1] + ky[1], kx[2] + ky[2]}, cx * cy);
        }
    return out;
}

void normalize(WorkingGen& g) {
    if (g.terms.empty()) {
        g.known = false;
        return;
    }
    int lo = g.terms.begin()->first[0];
    for (const auto& [k, c] : g.terms) lo = std::min(lo, k[0]);
    if (lo != 0) {
        TriPoly t;
        for (const auto& [k, c] : g.terms) t.emplace(std::array<int, 3>{k[0] - lo, k[1], k[2]}, c);
        g.terms = std::move(t);
        if (g.prec < kExact) g.prec -= lo;
    }
    g.known = true;
}

SPoly sp_mul(const SPoly& x, const SPoly& y) {
    SPoly out;
    for (const auto& [ex, cx] : x)
        for (const auto& [ey, cy] : y) {
            GaussRat& slot = out[ex + ey];
            slot += cx * cy;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

SPoly sp_add(SPoly x, const SPoly& y) {
    for (const auto& [e, c] : y) {
        x[e] += c;
        if (x[e].is_zero()) x.erase(e);
    }
    return x;
}

SPoly sp_const(const GaussRat& c, int e = 0) {
    SPoly p;
    if (!c.is_zero()) p[e] = c;
    return p;
}

// a = ua[0] + ua[1] a' + ua[2] b', b likewise.
struct Substitution {
    std::array<SPoly, 3> ua, ub;
};

AffineFrame apply_frame(const AffineFrame& f, const Substitution& s) {
    AffineFrame out;
    for (int r = 0; r < 2; ++r) {
        out.P[r] = sp_add(sp_add(f.P[r], sp_mul(f.M[r][0], s.ua[0])), sp_mul(f.M[r][1], s.ub[0]));
        out.M[r][0] = sp_add(sp_mul(f.M[r][0], s.ua[1]), sp_mul(f.M[r][1], s.ub[1]));
        out.M[r][1] = sp_add(sp_mul(f.M[r][0], s.ua[2]), sp_mul(f.M[r][1], s.ub[2]));
    }
    return out;
}

WorkingSystem apply_sub(const WorkingSystem& w, const Substitution& s) {
    int cap = 0;
    int maxdeg = 0;
    for (const auto& g : w.gens) {
        if (!g.known) continue;
        cap = std::max(cap, g.prec);
        for (const auto& [k, c] : g.terms) maxdeg = std::max(maxdeg, std::max(k[1], k[2]));
    }
    auto expr = [](const std::array<SPoly, 3>& u) {
        TriPoly t;
        for (const auto& [e, c] : u[0]) add_to(t, {e, 0, 0}, c);
        for (const auto& [e, c] : u[1]) add_to(t, {e, 1, 0}, c);
        for (const auto& [e, c] : u[2]) add_to(t, {e, 0, 1}, c);
        return t;
    };
    TriPoly ea = expr(s.ua), eb = expr(s.ub);
    std::vector<TriPoly> Ap{TriPoly{{{0, 0, 0}, GaussRat(1)}}}, Bp = Ap;
    for (int k = 1; k <= maxdeg; ++k) {
        Ap.push_back(tri_mul(Ap.back(), ea, cap));
        Bp.push_back(tri_mul(Bp.back(), eb, cap));
    }
    std::map<std::pair<int, int>, TriPoly> Q;
    auto q = [&](int i, int j) -> const TriPoly& {
        auto it = Q.find({i, j});
        if (it == Q.end()) it = Q.emplace(std::make_pair(i, j), tri_mul(Ap[i], Bp[j], cap)).first;
        return it->second;
    };
    WorkingSystem out;
    out.frame = apply_frame(w.frame, s);
    for (std::size_t gi = 0; gi < w.gens.size(); ++gi) {
        const WorkingGen& g = w.gens[gi];
        WorkingGen& h = out.gens[gi];
        if (!g.known) continue;
        h.prec = g.prec;
        for (const auto& [k, c] : g.terms)
            for (const auto& [kk, d] : q(k[1], k[2])) {
                int e = k[0] + kk[0];
                if (e >= g.prec) continue;
                add_to(h.terms, {e, kk[1], kk[2]}, c * d);
            }
        normalize(h);
    }
    return out;
}

}  // namespace

WorkingSystem WorkingSystem::seed(const BitangentSystem& sys, const Rat& vA, const Rat& vB, int n, int budget) {
    Rat na = vA * n, nb = vB * n;
    if (!is_integer(na) || !is_integer(nb))
        throw NoSolutionAtValuation("valuation (" + to_string(vA) + ", " + to_string(vB) + ") not in (1/" +
                                    std::to_string(n) + ")Z");
    long ia = na.get_num().get_si(), ib = nb.get_num().get_si();
    WorkingSystem w;
    for (int k = 0; k < 7; ++k) {
        WorkingGen& g = w.gens[k];
        g.prec = kExact;
        Poly gk = sys.gens[k].with_vars(kTAB);
        for (const auto& [m, c] : gk.terms())
            add_to(g.terms, {static_cast<int>(n * m[0] + ia * m[1] + ib * m[2]), m[1], m[2]}, c);
        normalize(g);
    }
    w.trim(budget);
    w.frame.M[0][0] = sp_const(GaussRat(1), static_cast<int>(ia));
    w.frame.M[1][1] = sp_const(GaussRat(1), static_cast<int>(ib));
    return w;
}

std::array<Poly, 7> WorkingSystem::leading_forms_indexed() const {
    std::array<Poly, 7> out;
    for (int k = 0; k < 7; ++k) {
        out[k] = Poly(kAB);
        if (!gens[k].known) continue;
        for (const auto& [e, c] : gens[k].terms)
            if (e[0] == 0) out[k].add_term({e[1], e[2]}, c);
    }
    return out;
}

std::vector<Poly> WorkingSystem::leading_forms() const {
    std::vector<Poly> out;
    auto all = leading_forms_indexed();
    for (int k = 0; k < 7; ++k)
        if (gens[k].known) out.push_back(all[k]);
    return out;
}

int WorkingSystem::known() const {
    int c = 0;
    for (const auto& g : gens) c += g.known;
    return c;
}

WorkingSystem WorkingSystem::recenter_point(const GaussRat& a0, const GaussRat& b0) const {
    Substitution s;
    s.ua = {sp_const(a0), sp_const(GaussRat(1), 1), SPoly{}};
    s.ub = {sp_const(b0), SPoly{}, sp_const(GaussRat(1), 1)};
    return apply_sub(*this, s);
}

WorkingSystem WorkingSystem::recenter_line(const T0Line& l) const {
    Substitution s;
    if (!l.beta.is_zero()) {
        s.ua = {SPoly{}, sp_const(GaussRat(1)), SPoly{}};
        s.ub = {sp_const(l.gamma / l.beta), sp_const(-(l.alpha / l.beta)), sp_const(GaussRat(1), 1)};
    } else {
        s.ua = {sp_const(l.gamma / l.alpha), sp_const(GaussRat(1), 1), SPoly{}};
        s.ub = {SPoly{}, SPoly{}, sp_const(GaussRat(1))};
    }
    return apply_sub(*this, s);
}

void WorkingSystem::trim(int orders) {
    for (auto& g : gens) {
        if (!g.known) continue;
        g.prec = std::min(g.prec, orders);
        for (auto it = g.terms.begin(); it != g.terms.end();)
            it = (*it).first[0] >= g.prec ? g.terms.erase(it) : std::next(it);
        if (g.terms.empty()) g.known = false;
    }
}

// ---- branch exploration ----

namespace {

int min_exp(const SPoly& p) { return p.empty() ? kExact : p.begin()->first; }

struct Explorer {
    const SolverOptions& opt;
    int tA = 0, tB = 0;  // exclusive target exponents in s
    int max_levels = 0;
    std::vector<AffineFrame> leaves;
    int dead = 0;

    int row_val(const AffineFrame& f, int r) const { return std::min(min_exp(f.M[r][0]), min_exp(f.M[r][1])); }
    bool reached(const AffineFrame& f) const { return row_val(f, 0) >= tA && row_val(f, 1) >= tB; }
    int remaining(const AffineFrame& f) const {
        return std::max({tA - row_val(f, 0), tB - row_val(f, 1), 0});
    }

    void point(const WorkingSystem& w, const GaussRat& a0, const GaussRat& b0, int level, int li, int lj) {
        Substitution s;
        s.ua = {sp_const(a0), sp_const(GaussRat(1), 1), SPoly{}};
        s.ub = {sp_const(b0), SPoly{}, sp_const(GaussRat(1), 1)};
        AffineFrame f2 = apply_frame(w.frame, s);
        if (li >= 0 && reached(f2)) {
            leaves.push_back(f2);
            return;
        }
        if (level + 1 > max_levels) throw UnresolvedMultiplicity("branch not simple after " + std::to_string(level) + " levels");
        if (li >= 0) {
            WorkingSystem t = w;
            t.trim(remaining(w.frame) + 3);
            run(t.recenter_point(a0, b0), level + 1, li, lj);
        } else {
            run(w.recenter_point(a0, b0), level + 1, li, lj);
        }
    }

    void run(const WorkingSystem& w, int level, int li, int lj) {
        auto forms = w.leading_forms_indexed();
        if (li >= 0 && w.gens[li].known && w.gens[lj].known && forms[li].total_degree() <= 1 &&
            forms[lj].total_degree() <= 1) {
            const Poly &P = forms[li], &Q = forms[lj];
            GaussRat p0 = P.coeff({0, 0}), pa = P.coeff({1, 0}), pb = P.coeff({0, 1});
            GaussRat q0 = Q.coeff({0, 0}), qa = Q.coeff({1, 0}), qb = Q.coeff({0, 1});
            GaussRat det = pa * qb - pb * qa;
            if (!det.is_zero()) {
                GaussRat a0 = (q0 * pb - p0 * qb) / det;
                GaussRat b0 = (p0 * qa - pa * q0) / det;
                for (int k = 0; k < 7; ++k)
                    if (w.gens[k].known && !forms[k].evaluate_all({a0, b0}).is_zero()) {
                        ++dead;
                        return;
                    }
                point(w, a0, b0, level, li, lj);
                return;
            }
        }
        std::vector<Poly> L;
        std::vector<int> idx;
        for (int k = 0; k < 7; ++k)
            if (w.gens[k].known) {
                L.push_back(forms[k]);
                idx.push_back(k);
            }
        if (L.size() < 2) throw UnresolvedMultiplicity("fewer than two known generators; raise the budget");
        T0Result r = solve_at_t0(L, level == 0, opt);
        if (r.nonlinear) throw PositiveDimensional("non-linear component at level " + std::to_string(level));
        dead += r.unresolved;
        if (r.points.empty() && r.lines.empty()) {
            if (level == 0) throw NoSolutionAtValuation("no solution of the leading system");
            ++dead;
            return;
        }
        for (const auto& pt : r.points) {
            int pi = -1, pj = -1;
            if (pt.simple) {
                std::vector<std::array<GaussRat, 2>> g;
                for (const auto& l : L)
                    g.push_back({l.derivative(0).evaluate_all({pt.a, pt.b}), l.derivative(1).evaluate_all({pt.a, pt.b})});
                for (std::size_t x = 0; x < g.size() && pi < 0; ++x)
                    for (std::size_t y = x + 1; y < g.size(); ++y)
                        if (!(g[x][0] * g[y][1] - g[x][1] * g[y][0]).is_zero()) {
                            pi = idx[x];
                            pj = idx[y];
                            break;
                        }
            }
            point(w, pt.a, pt.b, level, pi, pj);
        }
        for (const auto& l : r.lines) {
            if (level + 1 > max_levels) throw UnresolvedMultiplicity("line component persists");
            run(w.recenter_line(l), level + 1, -1, -1);
        }
    }
};

PuiseuxSeries to_series(const SPoly& p, int target, int n) {
    PuiseuxSeries s = PuiseuxSeries::zero(make_rat(target, n));
    for (const auto& [e, c] : p)
        if (e < target) s.add_term(make_rat(e, n), c);
    return s;
}

}  // namespace

ExpansionAttempt try_expand(const BitangentSystem& sys, const std::pair<Rat, Rat>& valuation, int n,
                            const SolverOptions& opt) {
    const auto& [vA, vB] = valuation;
    WorkingSystem w = WorkingSystem::seed(sys, vA, vB, n, opt.depth + opt.budget);
    Explorer ex{opt, 0, 0, 0, {}, 0};
    ex.tA = static_cast<int>(Rat(vA * n).get_num().get_si()) + opt.depth + 1;
    ex.tB = static_cast<int>(Rat(vB * n).get_num().get_si()) + opt.depth + 1;
    ex.max_levels = opt.depth + 1 + opt.extra_levels;
    ex.run(w, 0, -1, -1);
    ExpansionAttempt out;
    out.dead_ends = ex.dead;
    for (const auto& f : ex.leaves) {
        BitangentBranch b;
        b.A = to_series(f.P[0], ex.tA, n);
        b.B = to_series(f.P[1], ex.tB, n);
        b.valA = vA;
        b.valB = vB;
        b.n = n;
        // Line components let a leading coefficient vanish; such branches
        // belong to another valuation.
        if (b.A.valuation() != ExtRat(vA) || b.B.valuation() != ExtRat(vB)) continue;
        out.branches.push_back(std::move(b));
    }
    return out;
}

std::vector<BitangentBranch> expand_branches(const BitangentSystem& sys, const std::pair<Rat, Rat>& valuation,
                                             int n, int depth, const SolverOptions& opt) {
    SolverOptions o = opt;
    o.depth = depth;
    auto att = try_expand(sys, valuation, n, o);
    if (att.branches.empty())
        throw NoSolutionAtValuation("every candidate at (" + to_string(valuation.first) + ", " +
                                    to_string(valuation.second) + ") dead-ends");
    canonical_sort(att.branches);
    return att.branches;
}

std::vector<BitangentBranch> expand_branches(const Poly& f, const std::pair<Rat, Rat>& valuation, int n, int depth,
                                             const SolverOptions& opt) {
    return expand_branches(build_bitangent_system(f), valuation, n, depth, opt);
}

Rat BitangentBranch::precision() const {
    ExtRat p = ext_min(A.precision(), B.precision());
    return p ? *p : Rat(kExact);
}

// ---- discovery ----

namespace {

struct Chart {
    std::string name;  // z, y, x
    BitangentSystem sys;
};

// Valuation in a chart from the valuation in the z chart.
std::pair<Rat, Rat> chart_valuation(const std::string& c, const Rat& vA, const Rat& vB) {
    if (c == "y") return {vA - vB, -vB};
    if (c == "x") return {-vA, vB - vA};
    return {vA, vB};
}

BitangentBranch map_back(const std::string& c, const BitangentBranch& br, const Rat& vA, const Rat& vB,
                         int depth) {
    BitangentBranch out = br;
    out.chart = c;
    out.valA = vA;
    out.valB = vB;
    Rat pa = vA + Rat(depth + 1, br.n), pb = vB + Rat(depth + 1, br.n);
    pa.canonicalize();
    pb.canonicalize();
    if (c == "y") {
        // A' = A/B, B' = 1/B
        PuiseuxSeries B = br.B.inverse(pb);
        out.B = B.truncated(pb);
        out.A = (br.A * B).truncated(pa);
    } else if (c == "x") {
        // A' = 1/A, B' = B/A
        PuiseuxSeries A = br.A.inverse(pa);
        out.A = A.truncated(pa);
        out.B = (br.B * A).truncated(pb);
    }
    return out;
}

struct Attempt {
    std::vector<BitangentBranch> branches;
    int dead = 0;
    bool ok() const { return !branches.empty() && dead == 0; }
};

struct EntryWork {
    std::vector<BitangentBranch> branches;
    std::vector<SeedLog> log;
    std::exception_ptr err;
};

class Discoverer {
public:
    Discoverer(const Poly& f, const SolverOptions& opt) : opt_(opt) {
        charts_.push_back({"z", build_bitangent_system(f)});
        charts_.push_back({"y", build_bitangent_system(swap_variables(f, "y", "z"))});
        charts_.push_back({"x", build_bitangent_system(swap_variables(f, "x", "z"))});
    }

    // Branches at one valuation; empty when there are none.
    std::vector<BitangentBranch> at(const std::string& entry, const Rat& vA, const Rat& vB, int count,
                                    std::vector<SeedLog>& log) const {
        Attempt best;
        for (const auto& chart : charts_) {
            auto [cA, cB] = chart_valuation(chart.name, vA, vB);
            for (int n : {1, 2, 4}) {
                if (n > count) break;
                if (!is_integer(Rat(vA * n)) || !is_integer(Rat(vB * n))) continue;
                SeedLog lg{entry, vA, vB, n, chart.name, "", 0};
                try {
                    ExpansionAttempt a = try_expand(chart.sys, {cA, cB}, n, opt_);
                    Attempt at;
                    for (const auto& b : a.branches) at.branches.push_back(map_back(chart.name, b, vA, vB, opt_.depth));
                    at.dead = a.dead_ends;
                    lg.found = static_cast<int>(at.branches.size());
                    lg.outcome = at.ok() ? "ok"
                                 : at.dead ? "dead ends: " + std::to_string(at.dead)
                                           : "no branch with this valuation";
                    log.push_back(lg);
                    if (at.ok()) return at.branches;
                    if (at.branches.size() > best.branches.size()) best = at;
                } catch (const NoSolutionAtValuation& e) {
                    lg.outcome = "no solution";
                    log.push_back(lg);
                    // The seed system does not depend on n.
                    if (chart.name == "z") return best.branches;
                    break;
                } catch (const PositiveDimensional& e) {
                    lg.outcome = e.what();
                    log.push_back(lg);
                    break;
                } catch (const UnresolvedMultiplicity& e) {
                    lg.outcome = e.what();
                    log.push_back(lg);
                }
            }
        }
        return best.branches;
    }

    EntryWork entry(const BitangentCenter& c) const {
        EntryWork w;
        try {
            if (c.validity == BitangentCenter::Exact) {
                w.branches = at(c.name, -c.center.x, -c.center.y, c.count, w.log);
                return w;
            }
            int found = 0;
            std::set<std::pair<Rat, Rat>> tried;
            for (int den : {1, 2, 4}) {
                for (int j = 0; j <= opt_.window * den && found < c.count; ++j) {
                    Rat step(j, den);
                    step.canonicalize();
                    Pt p{c.center.x + step * c.ray_dir[0], c.center.y + step * c.ray_dir[1]};
                    if (!tried.insert({p.x, p.y}).second) continue;
                    auto br = at(c.name, -p.x, -p.y, c.count - found, w.log);
                    found += static_cast<int>(br.size());
                    for (auto& b : br) w.branches.push_back(std::move(b));
                }
                if (found >= c.count) break;
            }
            if (found < c.count)
                throw WindowExhausted(c.name + ": found " + std::to_string(found) + " of " +
                                      std::to_string(c.count) + " branches within " + std::to_string(opt_.window) +
                                      " steps");
        } catch (...) {
            w.err = std::current_exception();
        }
        return w;
    }

private:
    SolverOptions opt_;
    std::vector<Chart> charts_;
};

bool same(const BitangentBranch& x, const BitangentBranch& y) { return x.A == y.A && x.B == y.B; }

}  // namespace

void canonical_sort(std::vector<BitangentBranch>& b) {
    auto key = [](const PuiseuxSeries& s) {
        std::vector<std::pair<Rat, GaussRat>> k(s.terms().begin(), s.terms().end());
        return k;
    };
    std::sort(b.begin(), b.end(), [&](const BitangentBranch& x, const BitangentBranch& y) {
        if (x.valA != y.valA) return x.valA < y.valA;
        if (x.valB != y.valB) return x.valB < y.valB;
        auto ka = key(x.A), kb = key(y.A);
        if (ka != kb) return ka < kb;
        return key(x.B) < key(y.B);
    });
}

Rat residual_valuation(const BitangentSystem& sys, const BitangentBranch& br) {
    int dmax = 0;
    for (const auto& c : sys.coeffs) dmax = std::max({dmax, c.degree(1), c.degree(2)});
    std::vector<PuiseuxSeries> Ap{PuiseuxSeries::constant(GaussRat(1))}, Bp = Ap;
    for (int k = 1; k <= dmax; ++k) {
        Ap.push_back(Ap.back() * br.A);
        Bp.push_back(Bp.back() * br.B);
    }
    std::array<PuiseuxSeries, 5> c;
    for (int k = 0; k < 5; ++k) {
        Poly ck = sys.coeffs[k].with_vars(kTAB);
        for (const auto& [m, v] : ck.terms())
            c[k] += PuiseuxSeries::monomial(v, Rat(m[0])) * Ap[m[1]] * Bp[m[2]];
    }
    std::optional<Rat> lo;
    for (const auto& g : square_ideal(c)) {
        ExtRat v = g.is_zero() ? g.precision() : g.valuation();
        if (!v) continue;
        if (!lo || *v < *lo) lo = *v;
    }
    return lo ? *lo : Rat(kExact);
}

Rat residual_bound(const BitangentBranch& br, int depth) {
    Rat m = std::max(abs_rat(br.valA), abs_rat(br.valB));
    Rat b = Rat(depth, br.n) - 12 * m;
    b.canonicalize();
    return b;
}

bool no_bitangent_through_origin(const Poly& f) {
    std::vector<std::string> vl{"l", "t"};
    int ix = f.index_of("x"), iy = f.index_of("y"), iz = f.index_of("z"), it = f.index_of("t");
    auto exp_of = [](const Monomial& m, int k) { return k < 0 ? 0 : m[k]; };
    // x = l*y: binary quartic in (y, z); x = 0 separately.
    std::array<Poly, 5> X, X0;
    for (int k = 0; k < 5; ++k) {
        X[k] = Poly(vl);
        X0[k] = Poly(vl);
    }
    for (const auto& [m, c] : f.terms()) {
        int dx = exp_of(m, ix), dy = exp_of(m, iy), dz = exp_of(m, iz), e = exp_of(m, it);
        if (dx + dy + dz != 4) throw NotQuartic("not homogeneous of degree 4");
        X[dx + dy].add_term({dx, e}, c);
        if (dx == 0) X0[dy].add_term({0, e}, c);
    }
    if (is_perfect_square(X0)) return false;
    auto gens = square_ideal(X);
    for (const Rat& t0 : {make_rat(1, 3), make_rat(2, 7), make_rat(5, 11)}) {
        UPoly g;
        for (const auto& p : gens) g = UPoly::gcd(g, UPoly::from_poly(p.evaluate(1, GaussRat(t0)), 0));
        if (g.is_zero() || g.degree() > 0) return false;
    }
    return true;
}

BitangentSolveReport solve_bitangents(const Poly& f, const SolverOptions& opt) {
    if (opt.depth < 1) throw std::invalid_argument("depth must be at least 1");
    QuarticInput q = quartic_input(f);
    TropicalBitangentSet centers = tropical_bitangent_centers(q);
    Discoverer disc(f, opt);
    std::vector<EntryWork> work(centers.entries.size());
    int threads = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (opt.parallel)
    for (int k = 0; k < static_cast<int>(centers.entries.size()); ++k) work[k] = disc.entry(centers.entries[k]);

    BitangentSolveReport rep;
    for (auto& w : work) {
        if (w.err) std::rethrow_exception(w.err);
        for (auto& l : w.log) rep.log.push_back(std::move(l));
        for (auto& b : w.branches) rep.branches.push_back(std::move(b));
    }
    canonical_sort(rep.branches);
    if (rep.branches.size() != 28) {
        std::ostringstream os;
        os << "found " << rep.branches.size() << " branches";
        for (const auto& l : rep.log)
            os << "\n  " << l.entry << " val (" << to_string(l.valA) << ", " << to_string(l.valB) << ") n=" << l.n
               << " chart " << l.chart << ": " << l.outcome << " [" << l.found << "]";
        throw BranchCountMismatch(os.str());
    }

    BitangentSystem sys = build_bitangent_system(f);
    bool first = true;
    for (const auto& b : rep.branches) {
        Rat margin = residual_valuation(sys, b) - residual_bound(b, opt.depth);
        if (margin < 0)
            throw ResidualCheckFailed("branch at (" + to_string(b.valA) + ", " + to_string(b.valB) + ")");
        if (first || margin < rep.min_residual_margin) rep.min_residual_margin = margin;
        first = false;
        if (b.A == b.B) ++rep.diagonal;
    }
    rep.symmetric_input = swap_variables(f, "x", "y") == f;
    rep.swap_closed = rep.conjugation_closed = true;
    for (const auto& b : rep.branches) {
        BitangentBranch sw = b, cj = b;
        std::swap(sw.A, sw.B);
        cj.A = b.A.conj();
        cj.B = b.B.conj();
        bool hs = false, hc = false;
        for (const auto& o : rep.branches) {
            hs = hs || same(o, sw);
            hc = hc || same(o, cj);
        }
        rep.swap_closed = rep.swap_closed && hs;
        rep.conjugation_closed = rep.conjugation_closed && hc;
    }
    rep.no_line_through_origin = no_bitangent_through_origin(f);
    return rep;
}

std::vector<BitangentBranch> discover_and_expand_all(const Poly& f, int depth, const SolverOptions& opt) {
    SolverOptions o = opt;
    o.depth = depth;
    return solve_bitangents(f, o).branches;
}

ClaimsReport check_claims(const std::vector<BitangentBranch>& branches) {
    ClaimsReport r;
    std::vector<PuiseuxSeries> sums;
    auto known_val = [](const PuiseuxSeries& s) -> std::optional<Rat> {
        if (s.is_zero()) return std::nullopt;
        return *s.valuation();
    };
    for (const auto& b : branches) {
        PuiseuxSeries s = b.A + b.B;
        auto v = known_val(s);
        bool fresh = std::find(sums.begin(), sums.end(), s) == sums.end();
        if (fresh) {
            sums.push_back(s);
            if (v) ++r.sum_valuations[*v];
        }
        auto w = known_val(s + PuiseuxSeries::constant(GaussRat(1)));
        if (!w || *w > 0) r.sum_plus_one_nonpositive = false;
        if (b.A == b.B) ++r.diagonal[{b.valA, b.valB}];
        if (b.valA == b.valB && b.valA <= -2 && (!v || *v != b.valA)) r.equal_valuation_sums = false;
    }
    r.distinct_sums = static_cast<int>(sums.size());
    return r;
}

std::string render_table(const std::vector<BitangentBranch>& branches) {
    std::ostringstream os;
    os << "(val A, val B)  n  A  |  B\n";
    for (const auto& b : branches)
        os << "(" << to_string(b.valA) << ", " << to_string(b.valB) << ")  " << b.n << "  " << b.A.to_string()
           << "  |  " << b.B.to_string() << "\n";
    return os.str();
}

}  // namespace tropk4
