#include "tropk4/poly.hpp"

#include "tropk4/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tropk4 {

std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

Poly Poly::constant(std::vector<std::string> vars, const GaussRat& c) {
    Poly p(std::move(vars));
    p.add_term(Monomial(p.nvars(), 0), c);
    return p;
}

Poly Poly::variable(std::vector<std::string> vars, const std::string& name) {
    Poly p(std::move(vars));
    Monomial m(p.nvars(), 0);
    m[p.require_index(name)] = 1;
    p.add_term(m, GaussRat(1));
    return p;
}

Poly Poly::monomial(std::vector<std::string> vars, Monomial m, const GaussRat& c) {
    Poly p(std::move(vars));
    if (m.size() != p.nvars()) throw std::invalid_argument("monomial arity mismatch");
    p.add_term(m, c);
    return p;
}

int Poly::index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

int Poly::require_index(const std::string& name) const {
    int k = index_of(name);
    if (k < 0) throw std::invalid_argument("unknown variable '" + name + "'");
    return k;
}

void Poly::add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

GaussRat Poly::constant_term() const { return coeff(Monomial(nvars(), 0)); }

GaussRat Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussRat() : it->second;
}

int Poly::degree(int var) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

int Poly::min_degree(int var) const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first[var];
    for (const auto& [m, c] : terms_) d = std::min(d, m[var]);
    return d;
}

int Poly::total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

Poly Poly::derivative(int var) const {
    Poly out(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial n = m;
        --n[var];
        out.add_term(n, c * GaussRat(m[var]));
    }
    return out;
}

std::vector<Poly> Poly::coefficients(int var) const {
    std::vector<Poly> out(std::max(degree(var) + 1, 0), Poly(vars_));
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        n[var] = 0;
        out[m[var]].add_term(n, c);
    }
    return out;
}

Poly Poly::substitute(int var, const Poly& value) const {
    Poly v = value.with_vars(merge_vars(vars_, value.vars()));
    auto coeffs = coefficients(var);
    Poly out(v.vars());
    // Horner in var.
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        out = out * v;
        out += coeffs[k].with_vars(v.vars());
    }
    return out;
}

Poly Poly::evaluate(int var, const GaussRat& value) const {
    Poly out(vars_);
    std::vector<GaussRat> powers{GaussRat(1)};
    for (const auto& [m, c] : terms_) {
        while (static_cast<int>(powers.size()) <= m[var]) powers.push_back(powers.back() * value);
        Monomial n = m;
        n[var] = 0;
        out.add_term(n, c * powers[m[var]]);
    }
    return out;
}

GaussRat Poly::evaluate_all(const std::vector<GaussRat>& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluate_all arity mismatch");
    GaussRat sum;
    for (const auto& [m, c] : terms_) {
        GaussRat t = c;
        for (std::size_t k = 0; k < m.size(); ++k)
            if (m[k]) t *= tropk4::pow(point[k], static_cast<unsigned>(m[k]));
        sum += t;
    }
    return sum;
}

Poly Poly::strip_power(int var, int* removed) const {
    int d = std::max(min_degree(var), 0);
    if (removed) *removed = d;
    if (d == 0) return *this;
    Poly out(vars_);
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        n[var] -= d;
        out.terms_.emplace_hint(out.terms_.end(), n, c);
    }
    return out;
}

Poly Poly::with_vars(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<int> where(vars_.size(), -1);
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(vars.begin(), vars.end(), vars_[k]);
        if (it != vars.end()) where[k] = static_cast<int>(it - vars.begin());
    }
    Poly out(vars);
    for (const auto& [m, c] : terms_) {
        Monomial n(vars.size(), 0);
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (where[k] < 0)
                throw std::invalid_argument("variable '" + vars_[k] + "' dropped while re-embedding");
            n[where[k]] = m[k];
        }
        out.add_term(n, c);
    }
    return out;
}

Poly Poly::conj() const {
    Poly out(vars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, c.conj());
    return out;
}

void Poly::align_with(const Poly& o) {
    if (vars_ == o.vars_) return;
    *this = with_vars(merge_vars(vars_, o.vars_));
}

Poly& Poly::operator+=(const Poly& o) {
    align_with(o);
    const Poly& b = o.vars_ == vars_ ? o : o.with_vars(vars_);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    align_with(o);
    const Poly& b = o.vars_ == vars_ ? o : o.with_vars(vars_);
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.vars_ != b.vars_) {
        auto vars = merge_vars(a.vars_, b.vars_);
        return a.with_vars(vars) * b.with_vars(vars);
    }
    Poly out(a.vars_);
    Monomial m(a.nvars());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
            out.add_term(m, ca * cb);
        }
    return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const GaussRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

Poly operator-(Poly a) {
    for (auto& [m, v] : a.terms_) v = -v;
    return a;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto vars = merge_vars(a.vars_, b.vars_);
    return a.with_vars(vars).terms_ == b.with_vars(vars).terms_;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(vars_, GaussRat(1));
    Poly base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    if (d.is_zero()) throw NotInvertible("polynomial division by zero");
    auto vars = merge_vars(vars_, d.vars_);
    Poly r = with_vars(vars);
    Poly dd = d.with_vars(vars);
    Poly q(vars);
    const auto& [lm, lc] = dd.leading();
    GaussRat lc_inv = lc.inverse();
    Monomial m(vars.size());
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading();
        for (std::size_t k = 0; k < m.size(); ++k) {
            m[k] = rm[k] - lm[k];
            if (m[k] < 0) return std::nullopt;
        }
        GaussRat c = rc * lc_inv;
        q.add_term(m, c);
        Monomial n(vars.size());
        for (const auto& [dm, dc] : dd.terms_) {
            for (std::size_t k = 0; k < n.size(); ++k) n[k] = dm[k] + m[k];
            r.add_term(n, -(c * dc));
        }
    }
    return q;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[k];
            if (m[k] > 1) mono += "^" + std::to_string(m[k]);
        }
        std::string coef = tropk4::to_string(c);
        bool neg = !coef.empty() && coef[0] == '-';
        if (neg) coef.erase(0, 1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        if (mono.empty()) os << coef;
        else if (coef == "1") os << mono;
        else os << coef << "*" << mono;
        first = false;
    }
    return os.str();
}

// ---- UPoly ----

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_poly(const Poly& p, int var) {
    std::vector<GaussRat> c(std::max(p.degree(var) + 1, 0));
    for (const auto& [m, v] : p.terms()) {
        for (std::size_t k = 0; k < m.size(); ++k)
            if (static_cast<int>(k) != var && m[k] != 0)
                throw std::invalid_argument("polynomial is not univariate in " + p.vars()[var]);
        c[m[var]] += v;
    }
    return UPoly(std::move(c));
}

Poly UPoly::to_poly(const std::vector<std::string>& vars, int var) const {
    Poly p(vars);
    Monomial m(vars.size(), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        m[var] = static_cast<int>(k);
        p.add_term(m, c_[k]);
    }
    return p;
}

GaussRat UPoly::eval(const GaussRat& x) const {
    GaussRat acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UPoly UPoly::derivative() const {
    std::vector<GaussRat> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * GaussRat(static_cast<long>(k)));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    GaussRat inv = c_.back().inverse();
    std::vector<GaussRat> d = c_;
    for (auto& v : d) v *= inv;
    return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<GaussRat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
    return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussRat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw NotInvertible("univariate division by zero");
    std::vector<GaussRat> r = a.c_;
    int db = b.degree();
    std::vector<GaussRat> q(std::max(a.degree() - db + 1, 0));
    GaussRat inv = b.lead().inverse();
    for (int k = a.degree(); k >= db; --k) {
        if (r[k].is_zero()) continue;
        GaussRat f = r[k] * inv;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

std::vector<std::pair<UPoly, int>> UPoly::squarefree() const {
    std::vector<std::pair<UPoly, int>> out;
    if (degree() < 1) return out;
    UPoly f = monic();
    UPoly fp = f.derivative();
    UPoly a = gcd(f, fp);
    UPoly b = divmod(f, a).first;
    UPoly c = divmod(fp, a).first;
    UPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = c - b.derivative();
    }
    return out;
}

}  // namespace tropk4
