#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqt/factor.hpp"
#include "fqt/poly.hpp"

namespace fqt {

/// Reduced rational function over F_q(t): gcd(num, den) = 1, den monic and
/// nonzero, zero represented as 0/1. Equal values have identical
/// representations, so operator== is structural.
class RatFunc {
  public:
    explicit RatFunc(Field field);  // zero
    RatFunc(Poly num, Poly den);    // normalizes

    static RatFunc zero(Field field) { return RatFunc(field); }
    static RatFunc one(Field field) { return from_poly(Poly::one(field)); }
    static RatFunc t(Field field) { return from_poly(Poly::x(field)); }
    static RatFunc from_poly(Poly p);
    static RatFunc constant(FieldElem c) { return from_poly(Poly::constant(c)); }

    Field field() const { return num_.field(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Constant means algebraic over F_q, i.e. an element of F_q.
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    std::optional<FieldElem> constant_value() const;

    /// max(deg num, deg den); 0 exactly for constants.
    int height() const { return std::max(num_.degree(), den_.degree()); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc inverse() const;
    RatFunc pow(std::int64_t e) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string to_string(const std::string& var = "t") const;

  private:
    Poly num_;
    Poly den_;
};

/// A place of F_q(t): either a finite place given by a monic irreducible
/// polynomial, or the place at infinity.
class Place {
  public:
    static Place finite(Poly pi);
    static Place infinity(Field field);

    bool is_infinity() const { return infinity_; }
    const Poly& pi() const;
    Field field() const { return field_; }

    /// deg pi for finite places, 1 at infinity.
    int degree() const { return infinity_ ? 1 : pi_.degree(); }

    std::string to_string() const;

  private:
    Place(Field f, bool inf, Poly pi) : field_(f), infinity_(inf), pi_(std::move(pi)) {}
    Field field_;
    bool infinity_;
    Poly pi_;
};

/// v_place(f); nullopt encodes +infinity (f = 0). At a finite place pi this
/// is the multiplicity of pi in num minus the multiplicity in den; at
/// infinity it is deg(den) - deg(num).
std::optional<std::int64_t> valuation(const RatFunc& f, const Place& place);

/// One term a / pi^exp of a partial fraction decomposition, deg a < deg pi.
struct PartialFractionTerm {
    Poly pi;
    std::uint32_t exp;
    Poly digit;
};

struct PartialFractions {
    Poly poly_part;
    std::vector<PartialFractionTerm> terms;

    RatFunc recombine() const;
};

PartialFractions partial_fractions(const RatFunc& f, std::uint64_t seed = 0);

/// Partial fractions against a known factorization of the denominator
/// (den_fact.reconstruct() times lead must equal the true denominator of
/// num/den up to the built-in normalization).
PartialFractions partial_fractions_factored(const Poly& num, const Factorization& den_fact);

struct SquareResult {
    bool is_square;
    std::optional<RatFunc> root;
};

/// f is a square in F_q(t) iff every place-valuation is even and (for odd p)
/// the leading-unit of the factorization is a square in F_q; in
/// characteristic 2 the parity condition alone suffices since F_q is perfect.
SquareResult ratfunc_is_square(const RatFunc& f, std::uint64_t seed = 0);

RatFunc parse_ratfunc(Field field, const std::string& text);

/// All reduced rational functions with deg num <= max_num_deg and
/// deg den <= max_den_deg, in canonical order.
std::vector<RatFunc> enumerate_ratfuncs(Field field, int max_num_deg, int max_den_deg);

}  // namespace fqt
