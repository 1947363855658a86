#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace tropk4 {

using Int = mpz_class;
using Rat = mpq_class;

// Accepts "3", "-7/2", " 5 / 4 ". Throws ParseError otherwise.
Rat parse_rat(std::string_view s);
std::string to_string(const Rat& r);

Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);
Rat abs_rat(const Rat& r);

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace tropk4
