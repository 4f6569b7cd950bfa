#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqt/errors.hpp"

namespace fqt {

using Coef = boost::multiprecision::cpp_int;

/// Interned variable names. Identifiers are compared by spelling, not by
/// intern order, so term canonical forms do not depend on interning history.
namespace vars {
std::uint32_t intern(const std::string& name);
const std::string& name(std::uint32_t id);
}  // namespace vars

/// A power product of variables; the distinguished constant symbol t is
/// represented as an ordinary factor with the reserved name "t". Factors are
/// sorted by variable spelling and exponents are positive; the empty product
/// is the constant monomial.
struct Monomial {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;

    std::uint64_t total_degree() const;
    bool operator==(const Monomial& o) const { return factors == o.factors; }
    bool operator<(const Monomial& o) const;
};

/// Element of Z[t][variables] in canonical expanded form: a map from
/// monomials to nonzero integer coefficients.
class RingTerm {
  public:
    RingTerm() = default;  // zero

    static RingTerm constant(Coef c);
    static RingTerm constant(long c) { return constant(Coef(c)); }
    static RingTerm variable(const std::string& name);
    static RingTerm t() { return variable("t"); }

    bool is_zero() const { return ms_.empty(); }
    bool is_constant() const;
    const std::map<Monomial, Coef>& monomials() const { return ms_; }

    RingTerm operator+(const RingTerm& o) const;
    RingTerm operator-(const RingTerm& o) const;
    RingTerm operator-() const;
    RingTerm operator*(const RingTerm& o) const;
    RingTerm& operator+=(const RingTerm& o);
    RingTerm& operator-=(const RingTerm& o);
    RingTerm pow(std::uint64_t e) const;

    friend bool operator==(const RingTerm& a, const RingTerm& b) { return a.ms_ == b.ms_; }
    friend bool operator!=(const RingTerm& a, const RingTerm& b) { return !(a == b); }

    /// Free variables, excluding the constant symbol t.
    std::set<std::string> free_vars() const;

    /// Simultaneous substitution of terms for variables ("t" may not be a
    /// key). Variables absent from the map are left alone.
    RingTerm substitute(const std::map<std::string, RingTerm>& sigma) const;

    /// Degree in one variable.
    std::uint32_t degree_in(const std::string& var) const;

    /// Coefficient terms of var^0, var^1, ..., var^deg (the returned terms do
    /// not contain var).
    std::vector<RingTerm> coefficients_in(const std::string& var) const;

    /// Coefficients reduced into [0, p).
    RingTerm reduced_mod(std::uint32_t p) const;

    std::string to_string() const;

  private:
    void add_monomial(Monomial m, Coef c);
    std::map<Monomial, Coef> ms_;
};

/// Positive-existential ring formula: equations and O-atoms over RingTerms,
/// closed under conjunction, disjunction and existential quantification.
/// Immutable; copies share structure.
class RingFormula {
  public:
    enum class Kind { eq, opred, conj, disj, exists };

    static RingFormula eq(RingTerm lhs, RingTerm rhs);
    static RingFormula opred(RingTerm arg);
    static RingFormula conj(std::vector<RingFormula> children);
    static RingFormula disj(std::vector<RingFormula> children);
    static RingFormula exists(const std::string& var, RingFormula body);

    Kind kind() const { return n_->kind; }
    const RingTerm& lhs() const { return n_->lhs; }
    const RingTerm& rhs() const { return n_->rhs; }
    const RingTerm& o_arg() const { return n_->lhs; }
    const std::vector<RingFormula>& children() const { return n_->children; }
    const std::string& var() const { return n_->var; }
    const RingFormula& body() const { return n_->children.front(); }

    const std::set<std::string>& free_vars() const { return n_->free; }
    bool contains_o() const;
    std::size_t atom_count() const;

    /// Capture-avoiding substitution of terms for free variables.
    RingFormula substitute(const std::map<std::string, RingTerm>& sigma) const;

    bool equals(const RingFormula& o) const;
    friend bool operator==(const RingFormula& a, const RingFormula& b) { return a.equals(b); }

    std::string to_text() const;
    std::string to_json_string() const;
    std::string hash_hex() const;  // FNV-1a of the canonical text

    static RingFormula parse(const std::string& text);
    static RingFormula from_json_string(const std::string& json_text);

  private:
    struct Node {
        Kind kind;
        RingTerm lhs, rhs;
        std::vector<RingFormula> children;
        std::string var;
        std::set<std::string> free;  // free variables, filled at construction
    };
    explicit RingFormula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

/// Parses the term sub-grammar on its own (used by the CLI).
RingTerm parse_ring_term(const std::string& text);

}  // namespace fqt
