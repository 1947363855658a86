#include "tropk4/gauss.hpp"

#include "tropk4/errors.hpp"

namespace tropk4 {

GaussRat GaussRat::inverse() const {
    Rat n = norm();
    if (sgn(n) == 0) throw NotInvertible("division by zero in Q(i)");
    return {re / n, -im / n};
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRat pow(const GaussRat& a, unsigned e) {
    GaussRat result(1), base = a;
    while (e) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return result;
}

std::string to_string(const GaussRat& z) {
    if (z.is_real()) return z.re.get_str();
    std::string imag;
    if (z.im == 1) imag = "i";
    else if (z.im == -1) imag = "-i";
    else imag = z.im.get_str() + "*i";
    if (sgn(z.re) == 0) return imag;
    std::string out = "(" + z.re.get_str();
    if (sgn(z.im) < 0) out += " - " + imag.substr(1);
    else out += " + " + imag;
    return out + ")";
}

}  // namespace tropk4
