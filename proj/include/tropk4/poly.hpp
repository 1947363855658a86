#pragma once

#include "tropk4/gauss.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropk4 {

using Monomial = std::vector<int>;

// Sparse multivariate polynomial over Q(i). Terms are keyed by exponent
// vectors in lex order of the variable list, so the last entry of terms()
// is the lex-leading term.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, const GaussRat& c);
    static Poly variable(std::vector<std::string> vars, const std::string& name);
    static Poly monomial(std::vector<std::string> vars, Monomial m, const GaussRat& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Monomial, GaussRat>& terms() const { return terms_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t size() const { return terms_.size(); }
    int index_of(const std::string& name) const;  // -1 if absent
    int require_index(const std::string& name) const;

    void add_term(const Monomial& m, const GaussRat& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussRat constant_term() const;
    GaussRat coeff(const Monomial& m) const;
    const std::pair<const Monomial, GaussRat>& leading() const { return *terms_.rbegin(); }

    int degree(int var) const;
    int min_degree(int var) const;
    int total_degree() const;

    Poly derivative(int var) const;
    // Coefficients of var^k, k = 0..degree(var); var keeps exponent 0 in them.
    std::vector<Poly> coefficients(int var) const;
    Poly substitute(int var, const Poly& value) const;
    Poly evaluate(int var, const GaussRat& value) const;
    GaussRat evaluate_all(const std::vector<GaussRat>& point) const;
    // Divides every term by var^min_degree(var).
    Poly strip_power(int var, int* removed = nullptr) const;
    // Re-embeds into another variable list; variables not present in `vars`
    // must have exponent zero everywhere.
    Poly with_vars(const std::vector<std::string>& vars) const;
    Poly conj() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const GaussRat& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GaussRat& c) { return a *= c; }
    friend Poly operator*(const GaussRat& c, Poly a) { return a *= c; }
    friend Poly operator-(Poly a);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly pow(unsigned e) const;
    std::optional<Poly> divide_exact(const Poly& d) const;

    std::string to_string() const;

private:
    void align_with(const Poly& o);

    std::vector<std::string> vars_;
    std::map<Monomial, GaussRat> terms_;
};

// Union of variable lists, preserving order of a then new names of b.
std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b);

// Dense univariate polynomial over Q(i), coefficient k is of x^k.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<GaussRat> c) : c_(std::move(c)) { trim(); }

    static UPoly from_poly(const Poly& p, int var);
    Poly to_poly(const std::vector<std::string>& vars, int var) const;

    const std::vector<GaussRat>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const GaussRat& lead() const { return c_.back(); }
    GaussRat operator[](std::size_t k) const { return k < c_.size() ? c_[k] : GaussRat(); }

    GaussRat eval(const GaussRat& x) const;
    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // a = q*b + r with deg r < deg b.
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
    static UPoly gcd(UPoly a, UPoly b);  // monic, zero if both zero

    // Yun's algorithm: returns (factor, multiplicity) with factors monic,
    // square-free and pairwise coprime.
    std::vector<std::pair<UPoly, int>> squarefree() const;

private:
    void trim();
    std::vector<GaussRat> c_;
};

}  // namespace tropk4
