#include "fqt/ratfunc.hpp"

#include <algorithm>
#include <cctype>

namespace fqt {

RatFunc::RatFunc(Field field) : num_(field), den_(Poly::one(field)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.field() != den_.field()) throw FieldMismatchError();
    if (den_.is_zero()) throw DivisionByZeroError();
    if (num_.is_zero()) {
        den_ = Poly::one(den_.field());
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FieldElem lead = den_.lead();
    if (!lead.is_one()) {
        FieldElem il = lead.inverse();
        num_ = num_ * il;
        den_ = den_ * il;
    }
}

RatFunc RatFunc::from_poly(Poly p) {
    Field f = p.field();
    return RatFunc(std::move(p), Poly::one(f));
}

std::optional<FieldElem> RatFunc::constant_value() const {
    if (!is_constant()) return std::nullopt;
    return num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DivisionByZeroError();
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc result = RatFunc::one(field());
    RatFunc base = *this;
    std::uint64_t n = static_cast<std::uint64_t>(e);
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

std::string RatFunc::to_string(const std::string& var) const {
    std::string n = num_.to_string(var);
    if (den_.degree() == 0) return n;
    std::string d = den_.to_string(var);
    auto is_sum = [](const std::string& s) { return s.find(' ') != std::string::npos; };
    std::string out = is_sum(n) ? "(" + n + ")" : n;
    out += "/";
    bool den_paren = is_sum(d) || d.find('*') != std::string::npos || d.find('^') != std::string::npos;
    out += den_paren ? "(" + d + ")" : d;
    return out;
}

Place Place::finite(Poly pi) {
    if (!pi.is_monic()) throw DegreeOutOfRangeError("finite place polynomial must be monic");
    if (!is_irreducible(pi))
        throw DegreeOutOfRangeError("finite place polynomial must be irreducible");
    Field f = pi.field();
    return Place(f, false, std::move(pi));
}

Place Place::infinity(Field field) { return Place(field, true, Poly(field)); }

const Poly& Place::pi() const {
    if (infinity_) throw InternalError("infinite place has no polynomial");
    return pi_;
}

std::string Place::to_string() const {
    return infinity_ ? "inf" : pi_.to_string();
}

namespace {

std::int64_t multiplicity_of(const Poly& pi, Poly f) {
    std::int64_t m = 0;
    while (true) {
        auto [q, r] = f.divmod(pi);
        if (!r.is_zero()) return m;
        ++m;
        f = std::move(q);
    }
}

}  // namespace

std::optional<std::int64_t> valuation(const RatFunc& f, const Place& place) {
    if (f.is_zero()) return std::nullopt;
    if (place.is_infinity()) return f.den().degree() - f.num().degree();
    return multiplicity_of(place.pi(), f.num()) - multiplicity_of(place.pi(), f.den());
}

RatFunc PartialFractions::recombine() const {
    RatFunc acc = RatFunc::from_poly(poly_part);
    for (const auto& term : terms)
        acc = acc + RatFunc(term.digit, term.pi.pow(term.exp));
    return acc;
}

PartialFractions partial_fractions_factored(const Poly& num, const Factorization& den_fact) {
    Poly den = den_fact.reconstruct();
    auto [poly_part, rem] = num.divmod(den);
    PartialFractions out{std::move(poly_part), {}};
    if (rem.is_zero()) return out;

    // rem/den = sum over pi of r_pi / pi^m with r_pi = rem * (den/pi^m)^{-1} mod pi^m
    for (const auto& [pi, mult] : den_fact.factors) {
        Poly pim = pi.pow(mult);
        Poly cof = den / pim;
        Poly r = (rem * inverse_mod(cof, pim)) % pim;
        // pi-adic digits of r, least significant first
        for (std::uint32_t i = 0; i < mult && !r.is_zero(); ++i) {
            auto [q, digit] = r.divmod(pi);
            if (!digit.is_zero())
                out.terms.push_back(PartialFractionTerm{pi, mult - i, std::move(digit)});
            r = std::move(q);
        }
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
        if (a.pi != b.pi) return poly_less(a.pi, b.pi);
        return a.exp > b.exp;
    });
    return out;
}

PartialFractions partial_fractions(const RatFunc& f, std::uint64_t seed) {
    if (f.den().degree() == 0) return PartialFractions{f.num(), {}};
    Factorization den_fact = factorize(f.den(), seed);
    return partial_fractions_factored(f.num(), den_fact);
}

SquareResult ratfunc_is_square(const RatFunc& f, std::uint64_t seed) {
    Field field = f.field();
    if (f.is_zero()) return {true, RatFunc::zero(field)};

    Factorization nf = factorize(f.num(), seed);
    Factorization df = factorize(f.den(), seed);
    for (const auto& [pi, m] : nf.factors)
        if (m % 2 != 0) return {false, std::nullopt};
    for (const auto& [pi, m] : df.factors)
        if (m % 2 != 0) return {false, std::nullopt};

    FieldElem unit = nf.lead / df.lead;
    std::optional<FieldElem> unit_root = sqrt_of(unit);
    if (!unit_root) return {false, std::nullopt};

    Poly rn = Poly::constant(*unit_root);
    for (const auto& [pi, m] : nf.factors) rn = rn * pi.pow(m / 2);
    Poly rd = Poly::one(field);
    for (const auto& [pi, m] : df.factors) rd = rd * pi.pow(m / 2);
    RatFunc root(std::move(rn), std::move(rd));
    if (!(root * root == f)) throw InternalError("square witness does not square to input");
    return {true, std::move(root)};
}

namespace {

// full rational-expression grammar: sums, differences, products, quotients,
// powers, parentheses, integer coefficients and the variable t
struct RatParser {
    Field field;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::uint64_t parse_nat() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw SyntaxError(pos, "number");
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            v = v * 10 + (s[pos++] - '0');
        return v;
    }

    RatFunc parse_base() {
        skip_ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::uint64_t v = parse_nat();
            return RatFunc::constant(FieldElem::from_int(field, v % field.q()));
        }
        if (pos < s.size() && s[pos] == 't') {
            ++pos;
            return RatFunc::t(field);
        }
        if (eat('(')) {
            RatFunc inner = parse_expr();
            if (!eat(')')) throw SyntaxError(pos, "')'");
            return inner;
        }
        throw SyntaxError(pos, "coefficient, 't' or '('");
    }

    RatFunc parse_factor() {
        RatFunc base = parse_base();
        if (eat('^')) {
            bool neg = eat('-');
            std::uint64_t e = parse_nat();
            std::int64_t exp = static_cast<std::int64_t>(e);
            return base.pow(neg ? -exp : exp);
        }
        return base;
    }

    RatFunc parse_term() {
        RatFunc acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_factor();
            } else if (eat('/')) {
                acc = acc / parse_factor();
            } else if (pos < s.size() && (s[pos] == 't' || s[pos] == '(')) {
                acc = acc * parse_factor();  // juxtaposition, e.g. "2t"
            } else {
                return acc;
            }
        }
    }

    RatFunc parse_expr() {
        bool neg = eat('-');
        RatFunc acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) {
                acc = acc + parse_term();
            } else if (eat('-')) {
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }
};

}  // namespace

RatFunc parse_ratfunc(Field field, const std::string& text) {
    RatParser parser{field, text};
    RatFunc f = parser.parse_expr();
    parser.skip_ws();
    if (parser.pos != text.size()) throw SyntaxError(parser.pos, "end of input");
    return f;
}

std::vector<RatFunc> enumerate_ratfuncs(Field field, int max_num_deg, int max_den_deg) {
    std::vector<Poly> nums, dens;
    // numerators: all polynomials of degree <= max_num_deg in canonical order
    std::uint64_t num_count = 1;
    for (int i = 0; i <= max_num_deg; ++i) num_count *= field.q();
    for (std::uint64_t code = 0; code < num_count; ++code) {
        std::uint64_t c = code;
        std::vector<std::uint64_t> digits;
        for (int i = 0; i <= max_num_deg; ++i) {
            digits.push_back(c % field.q());
            c /= field.q();
        }
        nums.push_back(Poly::from_ints(field, digits));
    }
    std::sort(nums.begin(), nums.end(), poly_less);
    // denominators: monic of degree <= max_den_deg
    dens.push_back(Poly::one(field));
    for (int d = 1; d <= max_den_deg; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= field.q();
        for (std::uint64_t code = 0; code < count; ++code) {
            std::uint64_t c = code;
            std::vector<std::uint64_t> digits;
            for (int i = 0; i < d; ++i) {
                digits.push_back(c % field.q());
                c /= field.q();
            }
            digits.push_back(1);
            dens.push_back(Poly::from_ints(field, digits));
        }
    }
    std::sort(dens.begin(), dens.end(), poly_less);

    std::vector<RatFunc> out;
    for (const auto& den : dens) {
        for (const auto& num : nums) {
            if (num.is_zero() && den.degree() > 0) continue;  // zero is 0/1 only
            if (den.degree() > 0 && gcd(num, den).degree() > 0) continue;
            out.emplace_back(num, den);
        }
    }
    return out;
}

}  // namespace fqt
