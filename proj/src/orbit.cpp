#include "fqt/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fqt {

std::int64_t m_bound(std::int64_t genus, std::int64_t d, std::int64_t p) {
    if (genus < 0) throw DegreeOutOfRangeError("genus bound must be >= 0");
    if (d < 1) throw DegreeOutOfRangeError("test degree must be >= 1");
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p))) throw NonPrimeError(p);

    const std::int64_t half = d / 2;  // = ceil((d-1)/2)
    constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 100;
    unsigned __int128 sum = 0, pj = 1;
    for (std::int64_t j = 1; j <= half; ++j) {
        pj *= static_cast<unsigned __int128>(p);
        sum += pj;
        if (sum > kLimit) throw SizeCapExceededError("m_bound overflow");
    }
    unsigned __int128 numerator = static_cast<unsigned __int128>(4 * genus + 12) + 8 * sum;
    unsigned __int128 m = (numerator + d - 1) / d;
    if (m > static_cast<unsigned __int128>(INT64_MAX)) throw SizeCapExceededError("m_bound overflow");
    return static_cast<std::int64_t>(m);
}

namespace {

std::int64_t next_prime_at_least(std::int64_t n) {
    if (n < 2) return 2;
    while (!is_prime_u64(static_cast<std::uint64_t>(n))) ++n;
    return n;
}

// candidate test degrees: 1, then the primes in increasing order
std::int64_t next_candidate_degree(std::int64_t d) {
    if (d == 0) return 1;
    if (d == 1) return 2;
    return next_prime_at_least(d + 1);
}

}  // namespace

CriterionConfig make_config(std::int64_t genus, std::uint32_t p, std::uint32_t k, std::int64_t d) {
    Field base = Field::create(p, 1);
    Field::create(p, k);  // validates the extension up front
    std::int64_t m = m_bound(genus, d, p);
    std::uint64_t available = count_irreducibles(static_cast<std::uint32_t>(d), p);
    if (static_cast<std::uint64_t>(m) > available)
        throw NotEnoughIrreduciblesError(static_cast<std::uint64_t>(m), available);
    CriterionConfig cfg;
    cfg.genus = genus;
    cfg.p = p;
    cfg.k = k;
    cfg.d = d;
    cfg.m = m;
    cfg.polys = enumerate_irreducibles(base, static_cast<std::uint32_t>(d),
                                       static_cast<std::uint64_t>(m));
    return cfg;
}

CriterionConfig choose_config(std::int64_t genus, std::uint32_t p, std::uint32_t k) {
    // existence ceiling: the least prime >= 2*log2(16 + sqrt(8g + 248))
    long double raw = 2.0L * std::log2(16.0L + std::sqrt(8.0L * static_cast<long double>(genus) + 248.0L));
    std::int64_t ceiling = next_prime_at_least(static_cast<std::int64_t>(std::ceil(raw)));

    for (std::int64_t d = next_candidate_degree(0);; d = next_candidate_degree(d)) {
        if (d > ceiling)
            throw InternalError("degree search exceeded the guaranteed ceiling " +
                                std::to_string(ceiling));
        std::int64_t m = m_bound(genus, d, p);
        std::uint64_t available = count_irreducibles(static_cast<std::uint32_t>(d), p);
        if (static_cast<std::uint64_t>(m) <= available) return make_config(genus, p, k, d);
    }
}

RatFunc eval_poly_at(const Poly& f_over_fp, const RatFunc& x) {
    Field ext = x.field();
    if (f_over_fp.field().p() != ext.p() || f_over_fp.field().k() != 1)
        throw FieldMismatchError();
    if (f_over_fp.is_zero()) return RatFunc::zero(ext);

    const int m = f_over_fp.degree();
    std::vector<Poly> num_pow(m + 1, Poly::one(ext)), den_pow(m + 1, Poly::one(ext));
    for (int i = 1; i <= m; ++i) {
        num_pow[i] = num_pow[i - 1] * x.num();
        den_pow[i] = den_pow[i - 1] * x.den();
    }
    Poly numer = Poly::zero(ext);
    for (int i = 0; i <= m; ++i) {
        std::uint64_t c = f_over_fp.coeff(i).to_int();
        if (c == 0) continue;
        Poly term = num_pow[i] * den_pow[m - i];
        if (c != 1) term = term * FieldElem::from_int(ext, c);
        numer = numer + term;
    }
    return RatFunc(std::move(numer), den_pow[m]);
}

std::string ArtinSchreierResult::describe() const {
    switch (status) {
        case Status::solvable:
            return "solvable, h = " + witness->to_string();
        case Status::odd_pole:
            return "unsolvable: pole of odd order " + std::to_string(*pole_order) + " at " +
                   pole->to_string();
        case Status::odd_pole_at_infinity:
            return "unsolvable: pole of odd order " + std::to_string(*pole_order) +
                   " at infinity";
        case Status::nonzero_trace:
            return "unsolvable: leftover constant " + residue->to_string() +
                   " has nonzero trace";
    }
    return "";
}

ArtinSchreierResult artin_schreier_solve_factored(const Poly& num, const Factorization& den_fact) {
    Field field = num.field();
    if (field.p() != 2)
        throw WrongCharacteristicError("Artin-Schreier solving requires characteristic 2");

    PartialFractions pf = partial_fractions_factored(num, den_fact);
    RatFunc witness = RatFunc::zero(field);

    // group the principal parts per place
    std::map<std::string, std::pair<Poly, std::vector<Poly>>> places;
    for (const auto& term : pf.terms) {
        auto& entry = places
                          .try_emplace(term.pi.to_string("X"), term.pi,
                                       std::vector<Poly>())
                          .first->second;
        if (entry.second.size() <= term.exp) entry.second.resize(term.exp + 1, Poly::zero(field));
        entry.second[term.exp] = term.digit;
    }

    for (auto& [_, entry] : places) {
        const Poly& pi = entry.first;
        std::vector<Poly>& digit = entry.second;
        const std::uint32_t res_bits = field.k() * static_cast<std::uint32_t>(pi.degree());
        for (std::size_t i = digit.size() - 1; i >= 1; --i) {
            if (digit[i].is_zero()) continue;
            if (i % 2 != 0) {
                ArtinSchreierResult r;
                r.status = ArtinSchreierResult::Status::odd_pole;
                r.pole = pi;
                r.pole_order = static_cast<std::int64_t>(i);
                return r;
            }
            // square root of the leading residue in the perfect residue field
            Poly b = digit[i];
            for (std::uint32_t j = 0; j + 1 < res_bits; ++j) b = (b * b) % pi;
            // subtract s^2 + s with s = b / pi^{i/2}
            Poly bsq = b * b;
            auto [u, w] = bsq.divmod(pi);
            if (w != digit[i]) throw InternalError("pole stripping failed to cancel");
            digit[i] = Poly::zero(field);
            digit[i - 1] = digit[i - 1] - u;
            digit[i / 2] = digit[i / 2] - b;
            witness = witness + RatFunc(b, pi.pow(static_cast<std::uint64_t>(i) / 2));
        }
    }

    // pole at infinity: reduce the polynomial part to a constant
    Poly part = pf.poly_part;
    while (part.degree() > 0) {
        int deg = part.degree();
        if (deg % 2 != 0) {
            ArtinSchreierResult r;
            r.status = ArtinSchreierResult::Status::odd_pole_at_infinity;
            r.pole_order = deg;
            return r;
        }
        FieldElem b = *sqrt_of(part.lead());
        Poly s = Poly::constant(b).shifted(static_cast<std::size_t>(deg) / 2);
        part = part - (s * s + s);
        witness = witness + RatFunc::from_poly(s);
    }

    FieldElem c0 = part.is_zero() ? FieldElem::zero(field) : part.coeff(0);
    if (trace_to_prime(c0) != 0) {
        ArtinSchreierResult r;
        r.status = ArtinSchreierResult::Status::nonzero_trace;
        r.residue = c0;
        return r;
    }
    bool found = false;
    for (const auto& h0 : all_elements(field)) {
        if (h0 * h0 + h0 == c0) {
            witness = witness + RatFunc::constant(h0);
            found = true;
            break;
        }
    }
    if (!found) throw InternalError("trace-zero constant without Artin-Schreier preimage");

    RatFunc c_val(num, den_fact.reconstruct());
    if (!(witness * witness + witness == c_val))
        throw InternalError("Artin-Schreier witness fails to verify");
    ArtinSchreierResult r;
    r.status = ArtinSchreierResult::Status::solvable;
    r.witness = std::move(witness);
    return r;
}

ArtinSchreierResult artin_schreier_solve(const RatFunc& c, std::uint64_t seed) {
    if (c.field().p() != 2)
        throw WrongCharacteristicError("Artin-Schreier solving requires characteristic 2");
    Factorization den_fact = factorize(c.den(), seed);
    return artin_schreier_solve_factored(c.num(), den_fact);
}

bool char2_pair_condition(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() && b.is_zero()) return true;  // 0 = 0
    if (a.is_zero() || b.is_zero()) return false;
    return artin_schreier_solve(a.inverse() + b.inverse()).solvable();
}

bool odd_pair_condition(const RatFunc& a, const RatFunc& b) {
    return ratfunc_is_square(a * b).is_square;
}

bool orbit_criterion(const RatFunc& f, const RatFunc& g, const CriterionConfig& cfg) {
    if (f.is_constant() && g.is_constant()) throw BothConstantError();
    if (f.field() != cfg.ext_field() || g.field() != cfg.ext_field()) throw FieldMismatchError();
    for (const auto& fj : cfg.polys) {
        RatFunc a = eval_poly_at(fj, f);
        RatFunc b = eval_poly_at(fj, g);
        bool holds = cfg.p == 2 ? char2_pair_condition(a, b) : odd_pair_condition(a, b);
        if (!holds) return false;
    }
    return true;
}

std::optional<std::uint32_t> frobenius_power_of(const RatFunc& f, const RatFunc& g) {
    if (f.field() != g.field()) throw FieldMismatchError();
    Field field = f.field();
    const std::uint32_t p = field.p();
    if (f.is_constant() && g.is_constant()) {
        FieldElem fv = *f.constant_value();
        FieldElem cur = *g.constant_value();
        for (std::uint32_t s = 0; s < field.k(); ++s) {
            if (cur == fv) return s;
            cur = cur.pow(p);
        }
        return std::nullopt;
    }
    if (f.is_constant() || g.is_constant()) return std::nullopt;
    RatFunc cur = g;
    std::uint32_t s = 0;
    while (cur.height() <= f.height()) {
        if (cur == f) return s;
        cur = cur.pow(p);
        ++s;
    }
    return std::nullopt;
}

OrbitAnswer direct_orbit(const RatFunc& f, const RatFunc& g) {
    if (auto s = frobenius_power_of(f, g))
        return {true, OrbitAnswer::Direction::f_power_of_g, s};
    if (auto s = frobenius_power_of(g, f))
        return {true, OrbitAnswer::Direction::g_power_of_f, s};
    return {false, std::nullopt, std::nullopt};
}

}  // namespace fqt
