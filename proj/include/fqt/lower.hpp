#pragma once

#include <string>
#include <vector>

#include "fqt/ring_formula.hpp"

namespace fqt {

/// Prenex form of an O-free positive-existential formula: the hoisted
/// existential variables plus a conjunction/disjunction tree of polynomial
/// equations (each stored as lhs - rhs, understood as "= 0").
struct PolySystem {
    struct Node {
        enum class Kind { conj, disj, equation };
        Kind kind;
        std::vector<Node> children;
        RingTerm equation;
    };

    std::vector<std::string> vars;
    Node root;

    std::string to_json_string() const;
};

/// Hoists every quantifier to the front, renaming bound variables that would
/// collide. Satisfying assignments correspond one to one after projecting
/// away the introduced names. O-atoms are rejected.
PolySystem to_system(const RingFormula& f);

/// Collapses the system to one polynomial over Z[t] in the prenex variables:
/// a disjunction of A = 0 and B = 0 becomes A*B = 0, a conjunction becomes
/// A^2 - t*B^2 = 0 (sound over F_q(t) for every q because v_t(A^2) is even
/// while v_t(t*B^2) is odd unless both vanish). Coefficients are reduced mod
/// p, the characteristic of the target field.
RingTerm single_polynomial(const RingFormula& f, std::uint32_t p);

/// Renames bound variables so that no name is bound twice or shadows a free
/// variable; evaluation and witness reporting rely on this.
RingFormula rename_bound_unique(const RingFormula& f);

}  // namespace fqt
