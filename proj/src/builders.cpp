#include "fqt/builders.hpp"

#include <mutex>
#include <tuple>

#include "fqt/orbit.hpp"

namespace fqt {

namespace {

std::vector<std::uint32_t> primes_up_to(std::int64_t n) {
    std::vector<std::uint32_t> out;
    for (std::int64_t p = 2; p <= n; ++p)
        if (is_prime_u64(static_cast<std::uint64_t>(p))) out.push_back(static_cast<std::uint32_t>(p));
    return out;
}

// x^e mod m for cpp_int values
Coef coef_mod(const Coef& x, const Coef& m) {
    Coef r = x % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

std::vector<Poly> PhiFamily::reductions(std::uint32_t p) const {
    auto it = m_for.find(p);
    if (it == m_for.end()) throw InternalError("prime not covered by the family");
    Field fp = Field::create(p, 1);
    std::vector<Poly> out;
    out.reserve(it->second);
    for (std::int64_t j = 0; j < it->second; ++j) {
        std::vector<std::uint64_t> coeffs;
        coeffs.reserve(lifts[j].size());
        for (const Coef& c : lifts[j]) coeffs.push_back(coef_mod(c, p).convert_to<std::uint64_t>());
        out.push_back(Poly::from_ints(fp, coeffs));
    }
    return out;
}

PhiFamily build_phi_family(std::int64_t genus) {
    static std::mutex mu;
    static std::map<std::int64_t, PhiFamily> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(genus);
        if (it != cache.end()) return it->second;
    }

    PhiFamily fam;
    fam.genus = genus;
    fam.primes = primes_up_to(4 * genus + 12);

    // least candidate degree feasible for every covered characteristic
    std::int64_t d = 0;
    for (std::int64_t cand = 1;; ++cand) {
        if (cand != 1 && !is_prime_u64(static_cast<std::uint64_t>(cand))) continue;
        bool ok = true;
        for (std::uint32_t p : fam.primes) {
            std::int64_t m = m_bound(genus, cand, p);
            if (count_irreducibles(static_cast<std::uint32_t>(cand), p) <
                static_cast<std::uint64_t>(m)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            d = cand;
            break;
        }
    }
    fam.d = d;

    fam.m_star = 0;
    fam.crt_modulus = 1;
    for (std::uint32_t p : fam.primes) {
        std::int64_t m = m_bound(genus, d, p);
        fam.m_for[p] = m;
        fam.m_star = std::max(fam.m_star, m);
        fam.crt_modulus *= p;
    }

    // canonical irreducibles per characteristic, then coefficient-wise CRT
    std::map<std::uint32_t, std::vector<Poly>> irr;
    for (std::uint32_t p : fam.primes)
        irr[p] = enumerate_irreducibles(Field::create(p, 1), static_cast<std::uint32_t>(d),
                                        static_cast<std::uint64_t>(fam.m_for[p]));

    // precompute CRT basis: e_p = 1 mod p, 0 mod other primes
    std::map<std::uint32_t, Coef> basis;
    for (std::uint32_t p : fam.primes) {
        Coef rest = fam.crt_modulus / p;
        // invert rest mod p
        std::uint64_t r = coef_mod(rest, p).convert_to<std::uint64_t>();
        std::uint64_t inv = 1;
        for (std::uint64_t cand = 1; cand < p; ++cand)
            if ((cand * r) % p == 1) {
                inv = cand;
                break;
            }
        basis[p] = coef_mod(rest * inv, fam.crt_modulus);
    }

    fam.lifts.resize(fam.m_star);
    for (std::int64_t j = 0; j < fam.m_star; ++j) {
        std::vector<Coef> coeffs(d + 1, Coef(0));
        coeffs[d] = 1;
        for (std::int64_t i = 0; i < d; ++i) {
            Coef v = 0;
            for (std::uint32_t p : fam.primes) {
                if (j >= fam.m_for[p]) continue;  // unconstrained: residue 0
                std::uint64_t c = irr[p][j].coeff(static_cast<std::size_t>(i)).to_int();
                v += basis[p] * c;
            }
            coeffs[i] = coef_mod(v, fam.crt_modulus);
        }
        fam.lifts[j] = std::move(coeffs);
    }

    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(genus, std::move(fam)).first->second;
}

namespace {

// F_j evaluated at a term, from the integer lift
RingTerm lift_at(const std::vector<Coef>& lift, const RingTerm& arg) {
    RingTerm out;
    for (std::size_t i = 0; i < lift.size(); ++i) {
        if (lift[i] == 0) continue;
        out += RingTerm::constant(lift[i]) * arg.pow(i);
    }
    return out;
}

// one phi instance at the given argument terms, bound variables prefixed
RingFormula phi_instance(const PhiFamily& fam, const RingTerm& ax, const RingTerm& ay,
                         const std::string& prefix) {
    std::vector<RingFormula> branches;

    for (std::uint32_t p : fam.primes) {
        const std::int64_t m = fam.m_for.at(p);
        std::vector<RingFormula> conjuncts;
        conjuncts.reserve(m + 1);
        for (std::int64_t j = 0; j < m; ++j) {
            std::string h = prefix + "h" + std::to_string(p) + "_" + std::to_string(j + 1);
            RingTerm hv = RingTerm::variable(h);
            RingTerm fa = lift_at(fam.lifts[j], ax);
            RingTerm fb = lift_at(fam.lifts[j], ay);
            RingFormula atom =
                p == 2 ? RingFormula::eq(fa + fb, fa * fb * (hv * hv + hv))
                       : RingFormula::eq(fa * fb, hv * hv);
            conjuncts.push_back(RingFormula::exists(h, std::move(atom)));
        }
        conjuncts.push_back(RingFormula::eq(RingTerm::constant(static_cast<long>(p)),
                                            RingTerm::constant(0)));
        branches.push_back(RingFormula::conj(std::move(conjuncts)));
    }

    // characteristic-0 branch: linear test polynomials and invertibility guards
    {
        std::vector<RingFormula> conjuncts;
        const std::int64_t count = 4 * fam.genus + 12;
        for (std::int64_t j = 1; j <= count; ++j) {
            std::string h = prefix + "h0_" + std::to_string(j);
            RingTerm hv = RingTerm::variable(h);
            RingTerm lhs = (ax - RingTerm::constant(j)) * (ay - RingTerm::constant(j));
            conjuncts.push_back(RingFormula::exists(h, RingFormula::eq(lhs, hv * hv)));
        }
        for (std::uint32_t p : fam.primes) {
            std::string z = prefix + "z" + std::to_string(p);
            RingTerm zv = RingTerm::variable(z);
            conjuncts.push_back(RingFormula::exists(
                z, RingFormula::eq(zv * RingTerm::constant(static_cast<long>(p)),
                                   RingTerm::constant(1))));
        }
        branches.push_back(RingFormula::conj(std::move(conjuncts)));
    }

    return RingFormula::disj(std::move(branches));
}

}  // namespace

PhiBuild build_phi(std::int64_t genus) {
    PhiFamily fam = build_phi_family(genus);
    RingFormula f = phi_instance(fam, RingTerm::variable("x"), RingTerm::variable("y"), "");
    return PhiBuild{std::move(f), std::move(fam)};
}

RingFormula build_pi(std::int64_t genus) {
    static std::mutex mu;
    static std::map<std::int64_t, RingFormula> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(genus);
        if (it != cache.end()) return it->second;
    }
    PhiFamily fam = build_phi_family(genus);
    RingTerm x = RingTerm::variable("x");
    RingTerm y = RingTerm::variable("y");
    RingTerm z = RingTerm::variable("z");
    RingTerm u = RingTerm::variable("u");
    RingTerm one = RingTerm::constant(1);

    std::vector<RingFormula> parts;
    parts.push_back(phi_instance(fam, u, z, "i1_"));
    parts.push_back(phi_instance(fam, x, y, "i2_"));
    parts.push_back(phi_instance(fam, u * x, z * y, "i3_"));
    parts.push_back(phi_instance(fam, u * (x + one), z * (y + one), "i4_"));
    RingFormula pi = RingFormula::exists("u", RingFormula::conj(std::move(parts)));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(genus, std::move(pi)).first->second;
}

RingFormula build_pi_root(std::int64_t genus, std::uint32_t p, std::uint32_t m) {
    if (!is_prime_u64(p)) throw NonPrimeError(p);
    std::uint64_t pm = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        pm *= p;
        if (pm > (std::uint64_t{1} << 20)) throw SizeCapExceededError("p^m root exponent too large");
    }
    static std::mutex mu;
    static std::map<std::tuple<std::int64_t, std::uint32_t, std::uint32_t>, RingFormula> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({genus, p, m});
        if (it != cache.end()) return it->second;
    }
    RingFormula pi = build_pi(genus).substitute({{"z", RingTerm::variable("w")}});
    RingFormula root_atom = RingFormula::eq(RingTerm::t(), RingTerm::variable("w").pow(pm));
    RingFormula out =
        RingFormula::exists("w", RingFormula::conj({std::move(root_atom), std::move(pi)}));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_tuple(genus, p, m), std::move(out)).first->second;
}

}  // namespace fqt
