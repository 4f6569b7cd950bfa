#pragma once

#include <cstdint>
#include <vector>

#include "fqt/poly.hpp"

namespace fqt {

/// Factorization of a nonzero polynomial: leading coefficient times the
/// product of monic irreducible factors with multiplicities. Factors are
/// sorted in canonical polynomial order.
struct Factorization {
    FieldElem lead;
    std::vector<std::pair<Poly, std::uint32_t>> factors;

    Poly reconstruct() const;
};

/// Squarefree / distinct-degree / equal-degree pipeline. The squarefree step
/// extracts p-th powers coefficient-wise when the derivative vanishes, which
/// the plain derivative-gcd method misses in characteristic p. Equal-degree
/// splitting is randomized; the seed makes runs reproducible.
Factorization factorize(const Poly& a, std::uint64_t seed = 0);

bool is_irreducible(const Poly& a);

/// Number of monic irreducible degree-d polynomials over F_q:
/// (1/d) * sum_{e | d} mu(e) q^{d/e}.
std::uint64_t count_irreducibles(std::uint32_t d, std::uint64_t q);

/// First m monic irreducible degree-d polynomials over the field, in
/// canonical (constant-term-first lexicographic) order.
std::vector<Poly> enumerate_irreducibles(Field field, std::uint32_t d, std::uint64_t m);

}  // namespace fqt
