#pragma once

#include "tropk4/rational.hpp"

#include <complex>
#include <string>

namespace tropk4 {

struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() = default;
    GaussRat(const Rat& r) : re(r) {}  // NOLINT implicit on purpose
    GaussRat(long r) : re(r) {}        // NOLINT
    GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }

    GaussRat conj() const { return {re, -im}; }
    Rat norm() const { return re * re + im * im; }
    GaussRat inverse() const;

    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    // Lexicographic on (re, im); only used for canonical sorting.
    friend bool operator<(const GaussRat& a, const GaussRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

GaussRat pow(const GaussRat& a, unsigned e);

// "3", "-1/2", "2*i", "i", "-i", "(1 + 2*i)".
std::string to_string(const GaussRat& z);

}  // namespace tropk4
