#include "fqt/poly.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace fqt {

namespace {

void trim(std::vector<FieldElem>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

Poly::Poly(Field field, std::vector<FieldElem> coeffs) : field_(field), c_(std::move(coeffs)) {
    for (const auto& e : c_)
        if (e.field() != field_) throw FieldMismatchError();
    trim(c_);
}

Poly Poly::constant(FieldElem c) {
    Field f = c.field();
    std::vector<FieldElem> v;
    if (!c.is_zero()) v.push_back(std::move(c));
    return Poly(f, std::move(v));
}

Poly Poly::x(Field field) {
    return Poly(field, {FieldElem::zero(field), FieldElem::one(field)});
}

Poly Poly::from_ints(Field field, const std::vector<std::uint64_t>& coeffs) {
    std::vector<FieldElem> v;
    v.reserve(coeffs.size());
    for (auto c : coeffs) v.push_back(FieldElem::from_int(field, c % field.q()));
    return Poly(field, std::move(v));
}

FieldElem Poly::lead() const {
    if (is_zero()) throw InternalError("lead() of zero polynomial");
    return c_.back();
}

FieldElem Poly::coeff(std::size_t i) const {
    if (i < c_.size()) return c_[i];
    return FieldElem::zero(field_);
}

Poly Poly::operator+(const Poly& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), FieldElem::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
    std::vector<FieldElem> r(std::max(c_.size(), o.c_.size()), FieldElem::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
    return Poly(field_, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<FieldElem> r;
    r.reserve(c_.size());
    for (const auto& e : c_) r.push_back(-e);
    return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
    if (is_zero() || o.is_zero()) return Poly(field_);
    std::vector<FieldElem> r(c_.size() + o.c_.size() - 1, FieldElem::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(field_, std::move(r));
}

Poly Poly::operator*(const FieldElem& s) const {
    std::vector<FieldElem> r;
    r.reserve(c_.size());
    for (const auto& e : c_) r.push_back(e * s);
    return Poly(field_, std::move(r));
}

Poly Poly::shifted(std::size_t n) const {
    if (is_zero()) return *this;
    std::vector<FieldElem> r(c_.size() + n, FieldElem::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + n] = c_[i];
    return Poly(field_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
    if (field_ != divisor.field_) throw FieldMismatchError();
    if (divisor.is_zero()) throw DivisionByZeroError();
    if (degree() < divisor.degree()) return {Poly(field_), *this};

    FieldElem inv_lead = divisor.lead().inverse();
    std::vector<FieldElem> rem = c_;
    const std::size_t dn = divisor.c_.size();
    std::vector<FieldElem> quot(c_.size() - dn + 1, FieldElem::zero(field_));
    for (std::size_t i = rem.size(); i >= dn; --i) {
        FieldElem c = rem[i - 1] * inv_lead;
        if (!c.is_zero()) {
            std::size_t shift = i - dn;
            quot[shift] = c;
            for (std::size_t j = 0; j < dn; ++j)
                rem[shift + j] = rem[shift + j] - c * divisor.c_[j];
        }
    }
    return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

bool Poly::divides(const Poly& multiple) const {
    if (is_zero()) return multiple.is_zero();
    return multiple.divmod(*this).second.is_zero();
}

Poly Poly::monic() const {
    if (is_zero() || lead().is_one()) return *this;
    return *this * lead().inverse();
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<FieldElem> r;
    r.reserve(c_.size() - 1);
    const std::uint32_t p = field_.p();
    for (std::size_t i = 1; i < c_.size(); ++i) {
        FieldElem n = FieldElem::from_int(field_, i % p);
        r.push_back(c_[i] * n);
    }
    return Poly(field_, std::move(r));
}

FieldElem Poly::eval(const FieldElem& x) const {
    FieldElem acc = FieldElem::zero(field_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::pow(std::uint64_t e) const {
    Poly result = Poly::one(field_);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = r0 % r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
    Field f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(f), s1 = Poly::zero(f);
    Poly t0 = Poly::zero(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    FieldElem scale = r0.lead().inverse();
    return {r0 * scale, s0 * scale, t0 * scale};
}

Poly pow_mod(const Poly& base, std::uint64_t e, const Poly& modulus) {
    Poly result = Poly::one(base.field());
    Poly b = base % modulus;
    while (e > 0) {
        if (e & 1) result = (result * b) % modulus;
        b = (b * b) % modulus;
        e >>= 1;
    }
    return result;
}

Poly inverse_mod(const Poly& a, const Poly& m) {
    auto [g, u, v] = xgcd(a % m, m);
    (void)v;
    if (g.degree() != 0)
        throw DivisionByZeroError();
    return u % m;
}

bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        std::uint64_t ai = a.coeffs()[i].to_int();
        std::uint64_t bi = b.coeffs()[i].to_int();
        if (ai != bi) return ai < bi;
    }
    return false;
}

namespace {

struct PolyParser {
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

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    std::uint64_t parse_nat() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw SyntaxError(pos, "number");
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return v;
    }

    // factor := (number | 't' | '(' sum ')') ['^' nat]
    Poly parse_factor() {
        skip_ws();
        Poly base = Poly::zero(field);
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::uint64_t v = parse_nat();
            base = Poly::constant(FieldElem::from_int(field, v % field.q()));
        } else if (pos < s.size() && s[pos] == 't') {
            ++pos;
            base = Poly::x(field);
        } else if (eat('(')) {
            base = parse_sum();
            if (!eat(')')) throw SyntaxError(pos, "')'");
        } else {
            throw SyntaxError(pos, "coefficient, 't' or '('");
        }
        if (eat('^')) {
            std::uint64_t e = parse_nat();
            base = base.pow(e);
        }
        return base;
    }

    Poly parse_product() {
        Poly acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) {
                acc = acc * parse_factor();
            } else if (pos < s.size() && (s[pos] == 't' || s[pos] == '(')) {
                acc = acc * parse_factor();  // juxtaposition, e.g. "2t"
            } else {
                return acc;
            }
        }
    }

    Poly parse_sum() {
        bool neg = eat('-');
        Poly acc = parse_product();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) {
                acc = acc + parse_product();
            } else if (eat('-')) {
                acc = acc - parse_product();
            } else {
                return acc;
            }
        }
    }
};

}  // namespace

Poly parse_poly(Field field, const std::string& text) {
    PolyParser parser{field, text};
    Poly p = parser.parse_sum();
    parser.skip_ws();
    if (parser.pos != text.size()) throw SyntaxError(parser.pos, "end of input");
    return p;
}

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::uint64_t enc = c_[i].to_int();
        if (i == 0) {
            out += std::to_string(enc);
        } else {
            if (enc != 1) out += std::to_string(enc) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace fqt
