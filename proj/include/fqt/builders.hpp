#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fqt/factor.hpp"
#include "fqt/ring_formula.hpp"

namespace fqt {

/// Integer lifts of per-characteristic test-polynomial families. The j-th
/// lift reduces modulo each prime p <= 4g+12 to the j-th canonical monic
/// irreducible of degree d over F_p whenever j < M(g, d, p); the family holds
/// M* = M(g, d, P) lifts for P the largest such prime, since M(g, d, .) is
/// increasing and each characteristic-p branch only consumes its first
/// M(g, d, p) entries.
struct PhiFamily {
    std::int64_t genus;
    std::int64_t d;
    std::vector<std::uint32_t> primes;             // all primes <= 4g+12
    std::map<std::uint32_t, std::int64_t> m_for;   // M(g, d, p) per prime
    std::int64_t m_star;
    Coef crt_modulus;
    std::vector<std::vector<Coef>> lifts;          // coeffs constant-first, monic degree d

    /// Reductions of the first M(g, d, p) lifts modulo p.
    std::vector<Poly> reductions(std::uint32_t p) const;
};

PhiFamily build_phi_family(std::int64_t genus);

struct PhiBuild {
    RingFormula formula;  // free variables {x, y}
    PhiFamily family;
};

/// The pair formula phi_g(x, y): one branch per characteristic p <= 4g+12
/// guarded by p = 0 (Artin-Schreier conditions for p = 2, square conditions
/// otherwise), plus a characteristic-0 branch with linear test polynomials
/// guarded by invertibility of every such p.
PhiBuild build_phi(std::int64_t genus);

/// pi_g(x, y, z) = E u . phi(u,z) & phi(x,y) & phi(u*x, z*y)
///                     & phi(u*(x+1), z*(y+1)).
RingFormula build_pi(std::int64_t genus);

/// E w . (t = w^{p^m} & pi_g(x, y, w)); free variables {x, y}.
RingFormula build_pi_root(std::int64_t genus, std::uint32_t p, std::uint32_t m);

}  // namespace fqt
