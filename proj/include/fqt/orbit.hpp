#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqt/ratfunc.hpp"

namespace fqt {

/// M(g, d, p) = ceil((1/d) * (4g + 12 + 8 * sum_{j=1}^{ceil((d-1)/2)} p^j)),
/// the number of degree-d test polynomials the orbit criterion needs at genus
/// bound g in characteristic p.
std::int64_t m_bound(std::int64_t genus, std::int64_t d, std::int64_t p);

/// Parameters of one orbit-criterion instance over F_{p^k}(t): the degree d,
/// the count M = m_bound(genus, d, p), and the first M monic irreducible
/// degree-d polynomials over F_p in canonical order.
struct CriterionConfig {
    std::int64_t genus;
    std::uint32_t p;
    std::uint32_t k;
    std::int64_t d;
    std::int64_t m;
    std::vector<Poly> polys;  // over F_p

    Field base_field() const { return Field::create(p, 1); }
    Field ext_field() const { return Field::create(p, k); }
};

/// Chooses the least workable test degree: candidates are 1 and the primes in
/// increasing order, and d is the first with count_irreducibles(d, p) >=
/// m_bound(genus, d, p). The search is guaranteed to succeed no later than
/// the least prime >= 2*log2(16 + sqrt(8*genus + 248)), which is asserted.
CriterionConfig choose_config(std::int64_t genus, std::uint32_t p, std::uint32_t k);

/// Same with d forced (count feasibility still checked).
CriterionConfig make_config(std::int64_t genus, std::uint32_t p, std::uint32_t k, std::int64_t d);

/// Evaluates a polynomial with F_p coefficients at a rational function over
/// F_{p^k}(t), embedding coefficients along F_p -> F_{p^k}.
RatFunc eval_poly_at(const Poly& f_over_fp, const RatFunc& x);

/// Outcome of deciding whether c is an Artin-Schreier element of F_q(t) in
/// characteristic 2, i.e. whether h^2 + h = c is solvable.
struct ArtinSchreierResult {
    enum class Status { solvable, odd_pole, odd_pole_at_infinity, nonzero_trace };

    Status status;
    std::optional<RatFunc> witness;      // h with h^2 + h = c (solvable only)
    std::optional<Poly> pole;            // the offending place (odd_pole only)
    std::optional<std::int64_t> pole_order;
    std::optional<FieldElem> residue;    // the trace-obstructed constant

    bool solvable() const { return status == Status::solvable; }
    std::string describe() const;
};

/// Decides h^2 + h = c over F_{2^k}(t) by stripping even-order poles place by
/// place (square roots of leading residues exist since residue fields are
/// perfect), rejecting any odd-order pole, and settling the leftover constant
/// by its absolute trace. Throws WrongCharacteristicError unless p = 2.
ArtinSchreierResult artin_schreier_solve(const RatFunc& c, std::uint64_t seed = 0);

/// Same, with the denominator of c supplied pre-factored (the numerator of c
/// is num; c = num / den_fact.reconstruct()).
ArtinSchreierResult artin_schreier_solve_factored(const Poly& num, const Factorization& den_fact);

/// Single test-polynomial condition in characteristic 2, with values A, B of
/// F_j at the pair already computed: both zero passes, exactly one zero
/// fails, otherwise A + B = A*B*(h^2 + h) is decided through 1/A + 1/B.
bool char2_pair_condition(const RatFunc& a, const RatFunc& b);

/// Single test-polynomial condition in odd characteristic: A*B is a square.
bool odd_pair_condition(const RatFunc& a, const RatFunc& b);

/// The orbit criterion: f and g (not both constant) lie in the same Frobenius
/// orbit iff every one of the M test conditions holds. Agrees with
/// direct_orbit on genus-0 targets by construction of the config.
bool orbit_criterion(const RatFunc& f, const RatFunc& g, const CriterionConfig& cfg);

struct OrbitAnswer {
    enum class Direction { f_power_of_g, g_power_of_f };

    bool in_orbit;
    std::optional<Direction> direction;
    std::optional<std::uint32_t> s;
};

/// Minimal s with f = g^{p^s}, if any. The search stops once the height of
/// g^{p^s} exceeds the height of f; constant pairs are compared inside F_q,
/// where the Frobenius orbit closes after at most k steps.
std::optional<std::uint32_t> frobenius_power_of(const RatFunc& f, const RatFunc& g);

/// Brute-force orbit oracle: checks both directions.
OrbitAnswer direct_orbit(const RatFunc& f, const RatFunc& g);

}  // namespace fqt
