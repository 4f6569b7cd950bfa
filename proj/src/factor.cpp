#include "fqt/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace fqt {

namespace {

Poly pth_root_poly(const Poly& f) {
    // valid only when f' = 0, i.e. f = sum a_i X^{p i}
    Field field = f.field();
    const std::uint32_t p = field.p();
    std::vector<FieldElem> out;
    out.reserve(f.coeffs().size() / p + 1);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i % p == 0) {
            out.push_back(pth_root(f.coeffs()[i]));
        } else if (!f.coeffs()[i].is_zero()) {
            throw InternalError("pth_root_poly called on polynomial with nonzero derivative");
        }
    }
    return Poly(field, std::move(out));
}

// monic squarefree parts with multiplicities, correct in characteristic p
void squarefree_decompose(const Poly& f, std::uint32_t outer_mult,
                          std::map<std::string, std::pair<Poly, std::uint32_t>>& acc);

void record_part(const Poly& part, std::uint32_t mult,
                 std::map<std::string, std::pair<Poly, std::uint32_t>>& acc) {
    if (part.degree() < 1) return;
    std::string key = part.to_string("X") + "@" + part.field().descriptor();
    auto it = acc.find(key);
    if (it == acc.end())
        acc.emplace(std::move(key), std::make_pair(part, mult));
    else
        it->second.second += mult;
}

void squarefree_decompose(const Poly& f, std::uint32_t outer_mult,
                          std::map<std::string, std::pair<Poly, std::uint32_t>>& acc) {
    const std::uint32_t p = f.field().p();
    Poly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_decompose(pth_root_poly(f), outer_mult * p, acc);
        return;
    }
    Poly g = gcd(f, fp);
    Poly w = (f / g).monic();
    std::uint32_t i = 1;
    while (w.degree() >= 1) {
        Poly y = gcd(w, g);
        Poly z = (w / y).monic();
        record_part(z, outer_mult * i, acc);
        w = std::move(y);
        g = (g / w).monic();
        ++i;
    }
    if (g.degree() >= 1) squarefree_decompose(pth_root_poly(g), outer_mult * p, acc);
}

Poly random_poly_below(Field field, int degree_bound, std::mt19937_64& rng) {
    std::vector<FieldElem> c;
    c.reserve(degree_bound);
    for (int i = 0; i < degree_bound; ++i)
        c.push_back(FieldElem::from_int(field, rng() % field.q()));
    return Poly(field, std::move(c));
}

// Cantor-Zassenhaus split of a monic squarefree product of irreducibles of
// equal degree d.
void equal_degree_split(const Poly& f, std::uint32_t d, std::vector<Poly>& out,
                        std::mt19937_64& rng) {
    if (static_cast<std::uint32_t>(f.degree()) == d) {
        out.push_back(f);
        return;
    }
    Field field = f.field();
    const std::uint64_t q = field.q();
    Poly splitter = Poly::zero(field);
    while (true) {
        Poly r = random_poly_below(field, f.degree(), rng);
        if (r.degree() < 1) continue;
        Poly g = gcd(r, f);
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
        if (q % 2 == 1) {
            // (q^d - 1) / 2 exponent map sends about half the residues to 1
            unsigned __int128 e = 1;
            for (std::uint32_t i = 0; i < d; ++i) {
                e *= q;
                if (e > (static_cast<unsigned __int128>(1) << 62))
                    throw SizeCapExceededError("equal-degree split exponent q^d too large");
            }
            Poly h = pow_mod(r, static_cast<std::uint64_t>((e - 1) / 2), f) - Poly::one(field);
            g = gcd(h, f);
        } else {
            // characteristic 2: additive trace map over F_2
            std::uint32_t bits = d * field.k();
            Poly tr = r % f;
            Poly cur = r % f;
            for (std::uint32_t i = 1; i < bits; ++i) {
                cur = (cur * cur) % f;
                tr = tr + cur;
            }
            g = gcd(tr, f);
        }
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            splitter = g;
            break;
        }
    }
    equal_degree_split(splitter, d, out, rng);
    equal_degree_split((f / splitter).monic(), d, out, rng);
}

void factor_squarefree(const Poly& f, std::vector<Poly>& out, std::mt19937_64& rng) {
    // distinct-degree phase
    Poly rest = f;
    Poly h = Poly::x(f.field()) % rest;
    std::uint32_t d = 0;
    std::vector<std::pair<Poly, std::uint32_t>> blocks;
    while (rest.degree() > 0) {
        ++d;
        if (2 * d > static_cast<std::uint32_t>(rest.degree())) {
            blocks.emplace_back(rest, rest.degree());
            break;
        }
        h = pow_mod(h, f.field().q(), rest);
        Poly g = gcd(h - Poly::x(f.field()), rest);
        if (g.degree() > 0) {
            blocks.emplace_back(g, d);
            rest = (rest / g).monic();
            h = h % rest;
        }
    }
    for (const auto& [block, deg] : blocks) equal_degree_split(block, deg, out, rng);
}

}  // namespace

Poly Factorization::reconstruct() const {
    Poly r = Poly::constant(lead);
    for (const auto& [f, m] : factors) r = r * f.pow(m);
    return r;
}

Factorization factorize(const Poly& a, std::uint64_t seed) {
    if (a.is_zero()) throw ZeroPolynomialError();
    Factorization result{a.lead(), {}};
    if (a.degree() < 1) return result;

    std::map<std::string, std::pair<Poly, std::uint32_t>> parts;
    squarefree_decompose(a.monic(), 1, parts);

    std::mt19937_64 rng(seed);
    for (auto& [_, part] : parts) {
        std::vector<Poly> irreducibles;
        factor_squarefree(part.first, irreducibles, rng);
        for (auto& f : irreducibles) result.factors.emplace_back(std::move(f), part.second);
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& x, const auto& y) { return poly_less(x.first, y.first); });

    if (result.reconstruct() != a) throw InternalError("factorization does not reconstruct input");
    return result;
}

bool is_irreducible(const Poly& a) {
    const int n = a.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    Field field = a.field();
    Poly f = a.monic();

    // cheap pre-filters: a linear factor disqualifies any candidate of
    // degree >= 2, and scanning for roots is far cheaper than the full test
    if (f.coeff(0).is_zero()) return false;
    if (field.q() <= 256) {
        for (const auto& x : all_elements(field))
            if (f.eval(x).is_zero()) return false;
        if (n <= 3) return true;  // no roots and degree <= 3
    }

    std::vector<std::uint32_t> prime_divisors;
    std::uint32_t m = n;
    for (std::uint32_t r = 2; r * r <= m; ++r) {
        if (m % r == 0) {
            prime_divisors.push_back(r);
            while (m % r == 0) m /= r;
        }
    }
    if (m > 1) prime_divisors.push_back(m);

    // one pass of the q-power map, reused for every divisor check
    Poly x = Poly::x(field) % f;
    std::vector<Poly> frob(n + 1, x);
    for (int j = 1; j <= n; ++j) frob[j] = pow_mod(frob[j - 1], field.q(), f);
    if (frob[n] != x) return false;
    for (std::uint32_t r : prime_divisors) {
        Poly g = gcd(frob[n / r] - Poly::x(field), f);
        if (g.degree() != 0) return false;
    }
    return true;
}

std::uint64_t count_irreducibles(std::uint32_t d, std::uint64_t q) {
    if (d < 1) throw DegreeOutOfRangeError("degree must be >= 1");
    // guard q^d within 63 bits
    unsigned __int128 qk = 1;
    for (std::uint32_t i = 0; i < d; ++i) {
        qk *= q;
        if (qk > (static_cast<unsigned __int128>(1) << 62))
            throw SizeCapExceededError("q^d too large for irreducible count");
    }

    auto mobius = [](std::uint32_t n) -> int {
        int mu = 1;
        for (std::uint32_t p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                mu = -mu;
            }
        }
        if (n > 1) mu = -mu;
        return mu;
    };

    __int128 total = 0;
    for (std::uint32_t e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = mobius(e);
        if (mu == 0) continue;
        unsigned __int128 term = 1;
        for (std::uint32_t i = 0; i < d / e; ++i) term *= q;
        total += mu * static_cast<__int128>(term);
    }
    return static_cast<std::uint64_t>(total / d);
}

std::vector<Poly> enumerate_irreducibles(Field field, std::uint32_t d, std::uint64_t m) {
    std::uint64_t available = count_irreducibles(d, field.q());
    if (m > available) throw NotEnoughIrreduciblesError(m, available);

    std::vector<Poly> out;
    out.reserve(m);
    // monic degree-d candidates ordered constant-term-first: the *last*
    // non-leading coefficient moves fastest
    std::vector<std::uint64_t> digits(d, 0);
    std::vector<FieldElem> coeffs(d + 1, FieldElem::zero(field));
    coeffs[d] = FieldElem::one(field);
    while (out.size() < m) {
        for (std::uint32_t i = 0; i < d; ++i) coeffs[i] = FieldElem::from_int(field, digits[i]);
        Poly cand(field, coeffs);
        if (is_irreducible(cand)) out.push_back(std::move(cand));
        std::int64_t pos = d - 1;
        while (pos >= 0) {
            if (++digits[pos] < field.q()) break;
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (out.size() < m) throw InternalError("irreducible enumeration exhausted early");
    return out;
}

}  // namespace fqt
