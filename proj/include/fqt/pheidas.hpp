#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fqt/eval.hpp"
#include "fqt/ring_formula.hpp"

namespace fqt {

/// Term of the additive arithmetic language: a nonnegative-integer
/// combination of variables plus a constant (only 0, 1 and + exist, so every
/// term is such a sum).
struct PheidasTerm {
    std::map<std::string, std::uint64_t> coeffs;
    std::uint64_t constant = 0;

    bool is_var() const { return constant == 0 && coeffs.size() == 1 && coeffs.begin()->second == 1; }
    bool is_literal(std::uint64_t v) const { return coeffs.empty() && constant == v; }
    std::uint64_t eval(const std::map<std::string, std::uint64_t>& env) const;
    std::string to_string() const;

    friend bool operator==(const PheidasTerm& a, const PheidasTerm& b) {
        return a.coeffs == b.coeffs && a.constant == b.constant;
    }
};

/// Positive-existential formula over {0, 1, +, |_p}: equations, p-divisibility
/// atoms (a divp b meaning b = a * p^s for some s >= 0), conjunction,
/// disjunction, and existential quantification over natural numbers. The
/// prime p is part of the formula.
class PheidasFormula {
  public:
    enum class Kind { eq, divp, conj, disj, exists };

    static PheidasFormula eq(std::uint32_t p, PheidasTerm lhs, PheidasTerm rhs);
    static PheidasFormula divp(std::uint32_t p, PheidasTerm lhs, PheidasTerm rhs);
    static PheidasFormula conj(std::uint32_t p, std::vector<PheidasFormula> children);
    static PheidasFormula disj(std::uint32_t p, std::vector<PheidasFormula> children);
    static PheidasFormula exists(std::uint32_t p, const std::string& var, PheidasFormula body);

    std::uint32_t p() const { return p_; }
    Kind kind() const { return n_->kind; }
    const PheidasTerm& lhs() const { return n_->lhs; }
    const PheidasTerm& rhs() const { return n_->rhs; }
    const std::vector<PheidasFormula>& children() const { return n_->children; }
    const std::string& var() const { return n_->var; }
    const PheidasFormula& body() const { return n_->children.front(); }

    std::set<std::string> free_vars() const;
    bool is_sentence() const { return free_vars().empty(); }

    std::string to_text() const;
    static PheidasFormula parse(std::uint32_t p, const std::string& text);

  private:
    struct Node {
        Kind kind;
        PheidasTerm lhs, rhs;
        std::vector<PheidasFormula> children;
        std::string var;
    };
    PheidasFormula(std::uint32_t p, std::shared_ptr<const Node> n) : p_(p), n_(std::move(n)) {}
    std::uint32_t p_;
    std::shared_ptr<const Node> n_;
};

/// n divp m over the naturals, extended to 0 by the defining equation
/// m = n * p^s (so 0 divp 0 holds, and no other atom involving 0 does).
bool nat_divp(std::uint64_t n, std::uint64_t m, std::uint32_t p);

enum class NatVerdict { True, False, Unknown };

struct NatResult {
    NatVerdict verdict = NatVerdict::Unknown;
    std::map<std::string, std::uint64_t> witness;
};

/// Exhaustive search of variable assignments in [0, bound]. True verdicts are
/// definitive and carry a witness; an exhausted search reports Unknown, never
/// False, since truth of these sentences is only semi-decidable.
NatResult eval_nat(const PheidasFormula& sentence, std::uint64_t bound);

/// Conjunction of unnested atoms under an existential prefix; every atom has
/// one of five primitive shapes over indexed variables.
struct UnnestedSentence {
    enum class Shape { eq_var, eq_zero, eq_one, sum, divp };
    struct Atom {
        Shape shape;
        std::size_t i = 0, j = 0, k = 0;  // variable indices (meaning depends on shape)
    };

    std::uint32_t p = 2;
    std::vector<std::string> vars;
    std::vector<Atom> atoms;

    /// Defining term of each variable over the original quantified variables
    /// (the variable itself for originals; the represented subterm for fresh
    /// ones). Used to extend natural witnesses to the fresh variables.
    std::vector<PheidasTerm> var_defs;

    bool holds(const std::vector<std::uint64_t>& values) const;
    std::string to_text() const;
};

/// Rewrites an existential conjunction so that every atom is one of
/// v_i = v_j, v_i = 0, v_i = 1, v_i + v_j = v_k, v_i divp v_j, introducing
/// fresh variables for nested sums and constants. Disjunctions are rejected;
/// distribute them first.
UnnestedSentence unnest(const PheidasFormula& sentence);

/// Distributes conjunction over disjunction and pulls quantifiers to the
/// front, yielding existential-conjunctive sentences whose disjunction is
/// equivalent to the input.
std::vector<PheidasFormula> distribute_disjunctions(const PheidasFormula& sentence);

/// Ring translation of one unnested sentence. Scaffold: variables x_i, y_i
/// per natural variable plus z, constrained by t*z = 1, x_i*y_i = 1 and
/// O(x_i); each atom contributes O-conditions per the translation table; each
/// divisibility atom introduces an auxiliary pair related by the
/// Frobenius-orbit formula. The intended encoding sends n_i to an element of
/// valuation n_i.
struct TranslateResult {
    RingFormula formula = RingFormula::eq(RingTerm(), RingTerm());  // replaced by translate

    // semantic checking plan (the pi subformulas are checked by the orbit
    // oracle rather than re-evaluated as formulas)
    std::vector<std::string> nat_vars;
    std::map<std::string, std::string> x_of, y_of;
    std::string z_var;
    std::vector<RingTerm> eq_one_products;  // terms required to equal 1
    std::vector<RingTerm> o_terms;          // terms required to satisfy O
    struct PiCheck {
        std::string power_var;  // must equal base^{p^s} for some s
        std::string base_var;
    };
    std::vector<PiCheck> pi_checks;
    struct DivpAux {
        std::size_t atom_index;
        std::string xt, yt;
        std::size_t i, j;
    };
    std::vector<DivpAux> divp_aux;

    std::size_t scaffold_var_count() const { return 2 * nat_vars.size() + 1; }
};

TranslateResult translate(const UnnestedSentence& u, std::int64_t genus, std::uint64_t s_val = 1);

/// Field assignment realizing a natural witness: x_i = t^{n_i},
/// y_i = t^{-n_i}, z = t^{-1}, and auxiliary divisibility variables
/// t^{n_i p^s} with the witnessing exponent from the natural side. Requires
/// the t-adic setup (s_val = 1). Throws WitnessInvalid if the witness does
/// not satisfy the unnested sentence.
std::map<std::string, RatFunc> lift_witness(const std::map<std::string, std::uint64_t>& nat_witness,
                                            const UnnestedSentence& u, Field field,
                                            std::uint64_t s_val = 1);

/// Checks every scaffold and table atom of the translation exactly under the
/// assignment, with O read as the valuation ring of the t-adic place and the
/// orbit subformulas checked semantically.
bool check_translation(const TranslateResult& tr, const std::map<std::string, RatFunc>& assignment,
                       Field field);

struct RoundTripReport {
    std::string sentence;
    std::string nat_verdict;
    std::map<std::string, std::uint64_t> nat_witness;
    bool lifted_ok = false;
    std::size_t scaffold_vars = 0;
    std::size_t divp_atoms = 0;
    std::string to_json_string() const;
};

/// eval_nat, unnest per disjunct, translate, lift, check.
RoundTripReport pheidas_roundtrip(const PheidasFormula& sentence, std::int64_t genus,
                                  std::uint64_t bound, Field field);

}  // namespace fqt
