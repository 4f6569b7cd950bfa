#include "fqt/finite_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace fqt {

namespace {

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    if (a == 0) throw DivisionByZeroError();
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

// --- dense F_p[X] helpers used only for modulus search and extension-field
// --- division; general polynomial arithmetic lives in poly.cpp.

using PVec = std::vector<Residue>;  // coefficients, constant term first, trimmed

void trim(PVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

PVec pmul(const PVec& a, const PVec& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

// remainder of a modulo monic m
PVec pmod(PVec a, const PVec& m, std::uint32_t p) {
    while (a.size() >= m.size()) {
        Residue c = a.back();
        if (c != 0) {
            std::size_t shift = a.size() - m.size();
            for (std::size_t i = 0; i < m.size(); ++i)
                a[shift + i] = sub_mod(a[shift + i], mul_mod(c, m[i], p), p);
        }
        a.pop_back();
        trim(a);
        if (a.size() < m.size()) break;
    }
    trim(a);
    return a;
}

PVec pgcd(PVec a, PVec b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // reduce a mod b after making b monic
        Residue lead = b.back();
        if (lead != 1) {
            Residue il = inv_mod(lead, p);
            for (auto& c : b) c = mul_mod(c, il, p);
        }
        PVec r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Residue il = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, il, p);
    }
    return a;
}

PVec ppow_mod(PVec base, std::uint64_t e, const PVec& m, std::uint32_t p) {
    PVec result{1};
    base = pmod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = pmod(pmul(result, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

// Rabin test: f monic of degree n over F_p is irreducible iff
// X^{p^n} = X (mod f) and gcd(X^{p^{n/r}} - X, f) = 1 for every prime r | n.
bool fp_irreducible(const PVec& f, std::uint32_t p) {
    const std::size_t n = f.size() - 1;
    if (n == 0) return false;
    if (n == 1) return true;

    std::vector<std::size_t> prime_divisors;
    std::size_t m = n;
    for (std::size_t r = 2; r * r <= m; ++r) {
        if (m % r == 0) {
            prime_divisors.push_back(r);
            while (m % r == 0) m /= r;
        }
    }
    if (m > 1) prime_divisors.push_back(m);

    // frob[j] = X^{p^j} mod f, computed by iterating the p-power map
    PVec x{0, 1};
    PVec frob = x;
    std::vector<PVec> frob_at(n + 1);
    for (std::size_t j = 1; j <= n; ++j) {
        frob = ppow_mod(std::move(frob), p, f, p);
        frob_at[j] = frob;
    }
    if (frob_at[n] != x) return false;
    for (std::size_t r : prime_divisors) {
        PVec diff = frob_at[n / r];
        // diff -= X
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = sub_mod(diff[1], 1, p);
        trim(diff);
        PVec g = pgcd(f, diff, p);
        if (!(g.size() == 1 && g[0] == 1)) return false;
    }
    return true;
}

// Least monic irreducible of degree k over F_p, ordering candidates
// lexicographically by (c_0, c_1, ..., c_{k-1}).
std::vector<Residue> least_irreducible_modulus(std::uint32_t p, std::uint32_t k) {
    PVec f(k + 1, 0);
    f[k] = 1;
    std::vector<Residue> digits(k, 0);  // non-leading coefficients
    while (true) {
        for (std::uint32_t i = 0; i < k; ++i) f[i] = digits[i];
        if (fp_irreducible(f, p)) return f;
        // increment digits with c_{k-1} as the fastest-moving position, so the
        // first hit is least under constant-term-first comparison
        std::int64_t pos = k - 1;
        while (pos >= 0) {
            if (++digits[pos] < p) break;
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0)
            throw InternalError("no irreducible of degree " + std::to_string(k) +
                                " over F_" + std::to_string(p));
    }
}

std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldData>>& field_registry() {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<FieldData>> reg;
    return reg;
}

std::mutex& field_registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::create(std::uint32_t p, std::uint32_t k) {
    if (!is_prime_u64(p)) throw NonPrimeError(p);
    if (k < 1) throw DegreeOutOfRangeError("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kSizeCap)
            throw SizeCapExceededError("field size " + std::to_string(p) + "^" +
                                       std::to_string(k) + " exceeds cap 2^20");
    }

    std::lock_guard<std::mutex> lock(field_registry_mutex());
    auto& reg = field_registry();
    auto it = reg.find({p, k});
    if (it == reg.end()) {
        auto data = std::make_unique<FieldData>();
        data->p = p;
        data->k = k;
        data->q = q;
        if (k == 1) {
            data->modulus = {0, 1};  // X; prime fields use direct residue arithmetic
        } else {
            data->modulus = least_irreducible_modulus(p, k);
        }
        it = reg.emplace(std::make_pair(p, k), std::move(data)).first;
    }
    return Field(it->second.get());
}

std::string Field::descriptor() const {
    if (d_->k == 1) return std::to_string(d_->p);
    return std::to_string(d_->p) + "^" + std::to_string(d_->k);
}

FieldElem::FieldElem(Field field, CoeffVec coeffs) : field_(field), c_(std::move(coeffs)) {
    if (c_.size() != field_.k())
        throw InternalError("coefficient vector has wrong length for field");
    for (auto r : c_)
        if (r >= field_.p()) throw InternalError("residue out of range");
}

FieldElem FieldElem::zero(Field field) {
    return FieldElem(field, CoeffVec(field.k(), 0));
}

FieldElem FieldElem::one(Field field) {
    CoeffVec c(field.k(), 0);
    c[0] = 1;
    return FieldElem(field, std::move(c));
}

FieldElem FieldElem::from_int(Field field, std::uint64_t value) {
    if (value >= field.q())
        throw DegreeOutOfRangeError("element encoding " + std::to_string(value) +
                                    " out of range for field of size " + std::to_string(field.q()));
    CoeffVec c(field.k(), 0);
    for (std::uint32_t i = 0; i < field.k(); ++i) {
        c[i] = static_cast<Residue>(value % field.p());
        value /= field.p();
    }
    return FieldElem(field, std::move(c));
}

std::uint64_t FieldElem::to_int() const {
    std::uint64_t v = 0;
    for (std::size_t i = c_.size(); i-- > 0;) v = v * field_.p() + c_[i];
    return v;
}

bool FieldElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](Residue r) { return r == 0; });
}

bool FieldElem::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](Residue r) { return r == 0; });
}

void FieldElem::check_same_field(const FieldElem& o) const {
    if (field_ != o.field_) throw FieldMismatchError();
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    check_same_field(o);
    CoeffVec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = add_mod(c_[i], o.c_[i], field_.p());
    return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    check_same_field(o);
    CoeffVec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = sub_mod(c_[i], o.c_[i], field_.p());
    return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::operator-() const {
    CoeffVec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = sub_mod(0, c_[i], field_.p());
    return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    check_same_field(o);
    const std::uint32_t p = field_.p();
    const std::uint32_t k = field_.k();
    if (k == 1) {
        CoeffVec r{mul_mod(c_[0], o.c_[0], p)};
        return FieldElem(field_, std::move(r));
    }
    // schoolbook product then reduction by the monic modulus
    std::vector<Residue> prod(2 * k - 1, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        if (c_[i] == 0) continue;
        for (std::uint32_t j = 0; j < k; ++j)
            prod[i + j] = add_mod(prod[i + j], mul_mod(c_[i], o.c_[j], p), p);
    }
    const auto& m = field_.modulus();
    for (std::size_t d = prod.size(); d-- > k;) {
        Residue c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        std::size_t shift = d - k;
        for (std::uint32_t i = 0; i < k; ++i)
            prod[shift + i] = sub_mod(prod[shift + i], mul_mod(c, m[i], p), p);
    }
    CoeffVec r(prod.begin(), prod.begin() + k);
    return FieldElem(field_, std::move(r));
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivisionByZeroError();
    const std::uint32_t p = field_.p();
    if (field_.k() == 1) {
        CoeffVec r{inv_mod(c_[0], p)};
        return FieldElem(field_, std::move(r));
    }
    // extended Euclid on the coordinate polynomial and the field modulus
    PVec r0(field_.modulus());
    PVec r1(c_.begin(), c_.end());
    trim(r1);
    PVec s0{}, s1{1};
    while (!r1.empty()) {
        // divide r0 by r1
        PVec quot(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 0, 0);
        PVec rem = r0;
        Residue inv_lead = inv_mod(r1.back(), p);
        while (rem.size() >= r1.size() && !rem.empty()) {
            Residue c = mul_mod(rem.back(), inv_lead, p);
            std::size_t shift = rem.size() - r1.size();
            quot[shift] = c;
            for (std::size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = sub_mod(rem[shift + i], mul_mod(c, r1[i], p), p);
            trim(rem);
        }
        trim(quot);
        PVec s2 = s0;
        PVec qs = pmul(quot, s1, p);
        // s2 -= qs
        if (s2.size() < qs.size()) s2.resize(qs.size(), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = sub_mod(s2[i], qs[i], p);
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant gcd; scale s0 by its inverse
    Residue scale = inv_mod(r0[0], p);
    CoeffVec out(field_.k(), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) out[i] = mul_mod(s0[i], scale, p);
    return FieldElem(field_, std::move(out));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
    check_same_field(o);
    return *this * o.inverse();
}

FieldElem FieldElem::pow(std::uint64_t e) const {
    FieldElem result = one(field_);
    FieldElem base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
}

FieldElem pth_root(const FieldElem& a) {
    const std::uint32_t k = a.field().k();
    if (k == 1) return a;  // Frobenius is the identity on F_p
    // x -> x^p has order dividing k, so the inverse map is x -> x^{p^{k-1}}
    FieldElem r = a;
    for (std::uint32_t i = 0; i + 1 < k; ++i) r = r.pow(a.field().p());
    return r;
}

bool is_square(const FieldElem& a) {
    if (a.field().p() == 2) return true;
    if (a.is_zero()) return true;
    return a.pow((a.field().q() - 1) / 2).is_one();
}

std::optional<FieldElem> sqrt_of(const FieldElem& a) {
    const Field field = a.field();
    if (field.p() == 2) {
        // squaring is bijective in characteristic 2; invert via Frobenius
        FieldElem r = a;
        for (std::uint32_t i = 0; i + 1 < field.k(); ++i) r = r * r;
        return r;
    }
    if (a.is_zero()) return FieldElem::zero(field);
    if (!is_square(a)) return std::nullopt;

    // Tonelli-Shanks in the cyclic group F_q^*
    std::uint64_t m = field.q() - 1;
    std::uint32_t e = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++e;
    }
    // deterministic non-residue scan in canonical element order
    FieldElem z = FieldElem::one(field);
    for (std::uint64_t v = 2; v < field.q(); ++v) {
        FieldElem cand = FieldElem::from_int(field, v);
        if (!is_square(cand)) {
            z = cand;
            break;
        }
    }
    FieldElem c = z.pow(m);
    FieldElem x = a.pow((m + 1) / 2);
    FieldElem t = a.pow(m);
    std::uint32_t r = e;
    while (!t.is_one()) {
        FieldElem t2 = t;
        std::uint32_t i = 0;
        while (!t2.is_one()) {
            t2 = t2 * t2;
            ++i;
        }
        FieldElem b = c;
        for (std::uint32_t j = 0; j + i + 1 < r; ++j) b = b * b;
        x = x * b;
        c = b * b;
        t = t * c;
        r = i;
    }
    if (!(x * x == a)) throw InternalError("sqrt_of produced a non-root");
    return x;
}

Residue trace_to_prime(const FieldElem& a) {
    const Field field = a.field();
    FieldElem acc = a;
    FieldElem frob = a;
    for (std::uint32_t i = 1; i < field.k(); ++i) {
        frob = frob.pow(field.p());
        acc = acc + frob;
    }
    for (std::size_t i = 1; i < acc.coeffs().size(); ++i)
        if (acc.coeffs()[i] != 0) throw InternalError("trace left the prime field");
    return acc.coeffs()[0];
}

std::vector<FieldElem> all_elements(Field field) {
    std::vector<FieldElem> out;
    out.reserve(field.q());
    for (std::uint64_t v = 0; v < field.q(); ++v) out.push_back(FieldElem::from_int(field, v));
    return out;
}

}  // namespace fqt
