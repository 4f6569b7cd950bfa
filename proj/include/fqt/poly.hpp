#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fqt/finite_field.hpp"

namespace fqt {

/// Univariate polynomial over F_q. Coefficients are stored constant term
/// first with no trailing zeros; the zero polynomial has an empty coefficient
/// vector and degree() == -1 (standing in for degree -infinity).
class Poly {
  public:
    explicit Poly(Field field) : field_(field) {}
    Poly(Field field, std::vector<FieldElem> coeffs);

    static Poly zero(Field field) { return Poly(field); }
    static Poly one(Field field) { return constant(FieldElem::one(field)); }
    static Poly constant(FieldElem c);
    static Poly x(Field field);  // the generator t

    /// Coefficients given as integer encodings (see FieldElem::from_int).
    static Poly from_ints(Field field, const std::vector<std::uint64_t>& coeffs);

    Field field() const { return field_; }
    const std::vector<FieldElem>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    FieldElem lead() const;
    FieldElem coeff(std::size_t i) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const FieldElem& s) const;
    Poly shifted(std::size_t n) const;  // multiply by X^n

    /// Quotient and remainder with deg(rem) < deg(divisor).
    std::pair<Poly, Poly> divmod(const Poly& divisor) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    bool divides(const Poly& multiple) const;

    Poly monic() const;
    Poly derivative() const;
    FieldElem eval(const FieldElem& x) const;
    Poly pow(std::uint64_t e) const;

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string to_string(const std::string& var = "t") const;

  private:
    Field field_;
    std::vector<FieldElem> c_;
};

/// Monic gcd (gcd(0, 0) = 0).
Poly gcd(const Poly& a, const Poly& b);

/// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g the monic gcd.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& modulus);

/// Inverse of a modulo m (requires gcd(a, m) = 1).
Poly inverse_mod(const Poly& a, const Poly& m);

/// Canonical total order: by degree, then constant-term-first lexicographic
/// on integer-encoded coefficients. Single source of enumeration determinism.
bool poly_less(const Poly& a, const Poly& b);

/// Parses the polynomial text syntax, e.g. "t^2 + 2*t + 1" (coefficients are
/// integer encodings of field elements; '*' optional between coefficient and
/// variable power).
Poly parse_poly(Field field, const std::string& text);

}  // namespace fqt
