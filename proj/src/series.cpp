#include "tropk4/series.hpp"

#include "tropk4/errors.hpp"

#include <cctype>
#include <numeric>
#include <vector>

namespace tropk4 {

ExtRat ext_min(const ExtRat& a, const ExtRat& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? a : b;
}

ExtRat ext_add(const ExtRat& a, const ExtRat& b) {
    if (!a || !b) return std::nullopt;
    return Rat(*a + *b);
}

bool ext_less(const ExtRat& a, const ExtRat& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

std::string to_string(const ExtRat& r) { return r ? r->get_str() : std::string("inf"); }

int PuiseuxSeries::exponent_ramification(const Rat& e) {
    return static_cast<int>(e.get_den().get_si());
}

PuiseuxSeries PuiseuxSeries::constant(const GaussRat& c) {
    PuiseuxSeries s;
    s.add_term(Rat(0), c);
    return s;
}

PuiseuxSeries PuiseuxSeries::monomial(const GaussRat& c, const Rat& e) {
    PuiseuxSeries s;
    s.add_term(e, c);
    return s;
}

PuiseuxSeries PuiseuxSeries::zero(const ExtRat& precision) {
    PuiseuxSeries s;
    s.prec_ = precision;
    if (precision) s.n_ = exponent_ramification(*precision);
    return s;
}

ExtRat PuiseuxSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

GaussRat PuiseuxSeries::leading_coeff() const {
    return terms_.empty() ? GaussRat() : terms_.begin()->second;
}

GaussRat PuiseuxSeries::coeff(const Rat& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRat() : it->second;
}

void PuiseuxSeries::add_term(const Rat& exponent, const GaussRat& c) {
    if (c.is_zero()) return;
    Rat e = exponent;
    e.canonicalize();
    if (prec_ && e >= *prec_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    int d = exponent_ramification(e);
    n_ = std::lcm(n_, d);
}

void PuiseuxSeries::set_ramification(int n) {
    if (n <= 0 || n % n_ != 0)
        throw std::invalid_argument("ramification must be a multiple of the current one");
    n_ = n;
}

void PuiseuxSeries::enforce_precision() {
    if (!prec_) return;
    terms_.erase(terms_.lower_bound(*prec_), terms_.end());
}

PuiseuxSeries PuiseuxSeries::truncated(const Rat& p) const {
    PuiseuxSeries s = *this;
    s.prec_ = ext_min(prec_, p);
    s.enforce_precision();
    return s;
}

PuiseuxSeries PuiseuxSeries::conj() const {
    PuiseuxSeries s = *this;
    for (auto& [e, c] : s.terms_) c = c.conj();
    return s;
}

PuiseuxSeries PuiseuxSeries::scale_exponents(const Rat& k) const {
    if (sgn(k) <= 0) throw std::invalid_argument("exponent scaling must be positive");
    PuiseuxSeries s;
    if (prec_) s.prec_ = Rat(*prec_ * k);
    for (const auto& [e, c] : terms_) s.add_term(e * k, c);
    return s;
}

PuiseuxSeries& PuiseuxSeries::operator+=(const PuiseuxSeries& o) {
    prec_ = ext_min(prec_, o.prec_);
    n_ = std::lcm(n_, o.n_);
    enforce_precision();
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

PuiseuxSeries& PuiseuxSeries::operator-=(const PuiseuxSeries& o) { return *this += -o; }

PuiseuxSeries operator-(const PuiseuxSeries& a) {
    PuiseuxSeries s = a;
    for (auto& [e, c] : s.terms_) c = -c;
    return s;
}

namespace {

// Lower bound for the valuation of a series: its valuation, or its precision
// when no term is known.
ExtRat val_lower(const PuiseuxSeries& a) {
    return a.is_zero() ? a.precision() : a.valuation();
}

}  // namespace

PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    PuiseuxSeries s;
    ExtRat p1 = a.prec_ ? ext_add(a.prec_, val_lower(b)) : ExtRat();
    ExtRat p2 = b.prec_ ? ext_add(b.prec_, val_lower(a)) : ExtRat();
    s.prec_ = ext_min(p1, p2);
    // An exact zero factor makes the product exactly zero.
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) s.prec_.reset();
    s.n_ = std::lcm(a.n_, b.n_);
    for (const auto& [ea, ca] : a.terms_) {
        Rat base = ea;
        for (const auto& [eb, cb] : b.terms_) {
            Rat e = base + eb;
            if (s.prec_ && e >= *s.prec_) break;
            s.add_term(e, ca * cb);
        }
    }
    return s;
}

PuiseuxSeries operator*(const GaussRat& c, const PuiseuxSeries& a) {
    if (c.is_zero()) return PuiseuxSeries();
    PuiseuxSeries s = a;
    for (auto& [e, v] : s.terms_) v *= c;
    return s;
}

PuiseuxSeries PuiseuxSeries::inverse(const Rat& prec) const {
    if (terms_.empty()) throw NotInvertible("inverse of a series with no known term");
    Rat v = *valuation();
    GaussRat lc_inv = leading_coeff().inverse();
    // a = lc t^v (1 + r), val(r) > 0.
    PuiseuxSeries r;
    for (const auto& [e, c] : terms_)
        if (e != v) r.add_term(e - v, c * lc_inv);
    r.prec_ = prec_ ? ExtRat(Rat(*prec_ - v)) : ExtRat();
    r.n_ = n_;
    // Relative precision of the result.
    Rat rel = prec_ ? Rat(*prec_ - v) : Rat(prec + v);
    if (r.is_zero() && is_exact()) {
        PuiseuxSeries s = monomial(lc_inv, -v);
        s.n_ = n_;
        return s;
    }
    PuiseuxSeries geom = constant(GaussRat(1)).truncated(rel);
    PuiseuxSeries term = geom;
    PuiseuxSeries neg_r = (-r).truncated(rel);
    Rat step = r.is_zero() ? rel : *r.valuation();
    for (Rat k = step; k < rel; k += step) {
        term = (term * neg_r).truncated(rel);
        geom += term;
    }
    PuiseuxSeries out;
    out.n_ = n_;
    out.prec_ = Rat(rel - v);
    for (const auto& [e, c] : geom.terms_) out.add_term(e - v, c * lc_inv);
    return out;
}

std::string PuiseuxSeries::to_string() const {
    std::string out;
    auto push = [&out](std::string piece) {
        bool neg = !piece.empty() && piece[0] == '-';
        if (out.empty()) out = piece;
        else out += neg ? " - " + piece.substr(1) : " + " + piece;
    };
    auto power = [](const Rat& e) -> std::string {
        if (e == 1) return "t";
        if (e.get_den() == 1 && sgn(e) > 0) return "t^" + e.get_str();
        return "t^(" + e.get_str() + ")";
    };
    for (const auto& [e, c] : terms_) {
        if (sgn(e) == 0) {
            push(tropk4::to_string(c));
            continue;
        }
        if (c.is_one()) push(power(e));
        else if (c == GaussRat(-1)) push("-" + power(e));
        else push(tropk4::to_string(c) + "*" + power(e));
    }
    if (prec_) push("O(t^(" + prec_->get_str() + "))");
    if (out.empty()) out = "0";
    return out;
}

namespace {

class SeriesParser {
public:
    explicit SeriesParser(std::string_view s) : s_(s) {}

    PuiseuxSeries parse_all() {
        PuiseuxSeries out = parse_sum(false);
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return out;
    }

private:
    struct Mono {
        GaussRat c{1};
        Rat e{0};
    };

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" +
                         std::string(s_) + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char ch) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == ch;
    }
    bool accept(char ch) {
        if (!peek(ch)) return false;
        ++pos_;
        return true;
    }
    void expect(char ch) {
        if (!accept(ch)) fail(std::string("expected '") + ch + "'");
    }

    Int parse_uint() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    Rat parse_signed_rat() {
        bool neg = accept('-');
        if (!neg) accept('+');
        Int num = parse_uint();
        Int den = 1;
        if (accept('/')) den = parse_uint();
        if (den == 0) fail("zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return neg ? Rat(-r) : r;
    }

    Rat parse_exponent() {
        if (accept('(')) {
            Rat r = parse_signed_rat();
            expect(')');
            return r;
        }
        bool neg = accept('-');
        Rat r(parse_uint());
        return neg ? Rat(-r) : r;
    }

    // inside_parens: an 'O(...)' term is only allowed at top level.
    PuiseuxSeries parse_sum(bool inside_parens) {
        PuiseuxSeries out;
        bool first = true;
        while (true) {
            skip_ws();
            bool neg = false;
            if (first) {
                if (accept('-')) neg = true;
                else accept('+');
            } else if (accept('-')) {
                neg = true;
            } else if (!accept('+')) {
                break;
            }
            first = false;
            if (!inside_parens && peek('O')) {
                if (neg) fail("negated O-term");
                ++pos_;
                expect('(');
                expect('t');
                Rat p(1);
                if (accept('^')) p = parse_exponent();
                expect(')');
                out = out + PuiseuxSeries::zero(p);
                continue;
            }
            Mono m = parse_product();
            if (neg) m.c = -m.c;
            out += PuiseuxSeries::monomial(m.c, m.e);
        }
        if (first) fail("empty expression");
        return out;
    }

    Mono parse_product() {
        Mono m = parse_factor();
        while (accept('*')) {
            Mono f = parse_factor();
            m.c *= f.c;
            m.e += f.e;
        }
        return m;
    }

    Mono parse_factor() {
        skip_ws();
        Mono m;
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            Int num = parse_uint();
            Int den = 1;
            if (accept('/')) den = parse_uint();
            if (den == 0) fail("zero denominator");
            Rat r(num, den);
            r.canonicalize();
            m.c = GaussRat(r);
        } else if (ch == 'i') {
            ++pos_;
            m.c = GaussRat::i();
        } else if (ch == 't') {
            ++pos_;
            m.e = accept('^') ? parse_exponent() : Rat(1);
        } else if (ch == '(') {
            ++pos_;
            PuiseuxSeries inner = parse_sum(true);
            expect(')');
            if (inner.terms().size() > 1) fail("parenthesised sum must be a single monomial");
            if (!inner.is_zero()) {
                m.c = inner.terms().begin()->second;
                m.e = inner.terms().begin()->first;
            } else {
                m.c = GaussRat();
            }
        } else if (ch == '-') {
            ++pos_;
            m = parse_factor();
            m.c = -m.c;
        } else {
            fail(std::string("unexpected character '") + ch + "'");
        }
        return m;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

PuiseuxSeries PuiseuxSeries::parse(std::string_view text) {
    return SeriesParser(text).parse_all();
}

}  // namespace tropk4
