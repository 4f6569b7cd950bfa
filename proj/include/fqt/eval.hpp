#pragma once

#include <map>
#include <string>

#include "fqt/ratfunc.hpp"
#include "fqt/ring_formula.hpp"

namespace fqt {

/// Target structure for formula evaluation: F_q(t) with a chosen image of the
/// constant symbol t (nonconstant, default t itself), the place whose
/// valuation ring interprets O (default the t-adic place), and an assignment
/// of the free variables.
struct Interpretation {
    Field field;
    RatFunc t_image;
    Place o_place;
    std::map<std::string, RatFunc> assignment;

    static Interpretation standard(Field field);
    Interpretation with(const std::string& var, RatFunc value) const;
};

/// Image of a term under the interpretation; integer coefficients reduce mod
/// p. Throws UnboundVariable for unassigned variables.
RatFunc eval_term(const RingTerm& term, const Interpretation& interp);

/// Truth of a quantifier-free formula. O(a) holds iff the valuation of a at
/// the chosen place is >= 0 (in particular O(0) holds).
bool eval_qfree(const RingFormula& f, const Interpretation& interp);

enum class Verdict { True, False, Unknown };
enum class Method { exact_pattern, bounded_search };

struct EvalResult {
    Verdict verdict = Verdict::Unknown;
    Method method = Method::exact_pattern;
    std::map<std::string, RatFunc> witness;  // filled for True verdicts

    std::string verdict_string() const;
};

struct SearchBounds {
    int max_num_deg = 2;
    int max_den_deg = 2;
};

/// Exact decision for a single existential over an equation of degree at most
/// 2 in the bound variable (with everything else evaluated): linear atoms are
/// solved directly, squares are decided by ratfunc_is_square, and
/// characteristic-2 quadratics reduce to the Artin-Schreier solver. This
/// covers the guard shape E z . c*z = 1, the square shape E h . a = h^2, and
/// the shape E h . a + b = a*b*(h^2 + h). Throws ShapeMismatchError
/// otherwise. The verdict is always definitive.
EvalResult decide_special(const RingFormula& f, const Interpretation& interp);

/// Semi-decision for positive-existential sentences under the
/// interpretation. Special shapes are decided exactly; other existentials
/// are searched over reduced rational functions within the degree bounds
/// (hints first: powers t^{p^s}, inverse powers, then values already bound).
/// True verdicts carry a witness map re-checked atom by atom; False is only
/// ever produced by exact decisions; an exhausted search yields Unknown.
EvalResult eval_pe(const RingFormula& f, const Interpretation& interp,
                   const SearchBounds& bounds);

/// Evaluation transcript (JSON) for the CLI.
std::string eval_transcript(const RingFormula& f, const Interpretation& interp,
                            const SearchBounds& bounds, const EvalResult& result);

}  // namespace fqt
