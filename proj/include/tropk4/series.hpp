#pragma once

#include "tropk4/gauss.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace tropk4 {

// nullopt stands for +infinity (an exactly known series, or the valuation
// of the zero series).
using ExtRat = std::optional<Rat>;

ExtRat ext_min(const ExtRat& a, const ExtRat& b);
ExtRat ext_add(const ExtRat& a, const ExtRat& b);
bool ext_less(const ExtRat& a, const ExtRat& b);
std::string to_string(const ExtRat& r);

// Truncated Puiseux series sum c_e t^e + O(t^P), exponents in (1/n)Z.
class PuiseuxSeries {
public:
    PuiseuxSeries() = default;  // exact zero

    static PuiseuxSeries constant(const GaussRat& c);
    static PuiseuxSeries monomial(const GaussRat& c, const Rat& e);
    static PuiseuxSeries zero(const ExtRat& precision);

    int ramification() const { return n_; }
    const std::map<Rat, GaussRat>& terms() const { return terms_; }
    const ExtRat& precision() const { return prec_; }
    bool is_exact() const { return !prec_.has_value(); }
    bool is_zero() const { return terms_.empty(); }

    ExtRat valuation() const;
    GaussRat leading_coeff() const;
    GaussRat coeff(const Rat& e) const;

    void add_term(const Rat& e, const GaussRat& c);
    // Declares a larger ramification (must be a multiple of the current one).
    void set_ramification(int n);
    // Lowers the precision to min(P, p) and drops terms at or beyond it.
    PuiseuxSeries truncated(const Rat& p) const;

    PuiseuxSeries conj() const;
    // Substitutes t -> t^k.
    PuiseuxSeries scale_exponents(const Rat& k) const;

    // 1/a. For exact non-monomial a the result is computed to absolute
    // precision `prec`.
    PuiseuxSeries inverse(const Rat& prec) const;

    PuiseuxSeries& operator+=(const PuiseuxSeries& o);
    PuiseuxSeries& operator-=(const PuiseuxSeries& o);
    friend PuiseuxSeries operator+(PuiseuxSeries a, const PuiseuxSeries& b) { return a += b; }
    friend PuiseuxSeries operator-(PuiseuxSeries a, const PuiseuxSeries& b) { return a -= b; }
    friend PuiseuxSeries operator-(const PuiseuxSeries& a);
    friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
    friend PuiseuxSeries operator*(const GaussRat& c, const PuiseuxSeries& a);

    // Same known terms and same precision.
    friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) {
        return a.terms_ == b.terms_ && a.prec_ == b.prec_;
    }

    std::string to_string() const;
    static PuiseuxSeries parse(std::string_view text);

private:
    void enforce_precision();
    static int exponent_ramification(const Rat& e);

    int n_ = 1;
    std::map<Rat, GaussRat> terms_;
    ExtRat prec_;
};

}  // namespace tropk4
