#include "fqt/eval.hpp"

#include <algorithm>

#include "fqt/lower.hpp"
#include "fqt/orbit.hpp"
#include "json.hpp"

namespace fqt {

Interpretation Interpretation::standard(Field field) {
    return Interpretation{field, RatFunc::t(field), Place::finite(Poly::x(field)), {}};
}

Interpretation Interpretation::with(const std::string& var, RatFunc value) const {
    Interpretation out = *this;
    out.assignment.insert_or_assign(var, std::move(value));
    return out;
}

RatFunc eval_term(const RingTerm& term, const Interpretation& interp) {
    const std::uint32_t p = interp.field.p();
    RatFunc acc = RatFunc::zero(interp.field);
    for (const auto& [mono, coef] : term.monomials()) {
        Coef residue = coef % p;
        if (residue < 0) residue += p;
        std::uint64_t c = residue.convert_to<std::uint64_t>();
        if (c == 0) continue;
        RatFunc prod = RatFunc::constant(FieldElem::from_int(interp.field, c));
        for (const auto& [vid, exp] : mono.factors) {
            const std::string& name = vars::name(vid);
            if (name == "t") {
                prod = prod * interp.t_image.pow(exp);
            } else {
                auto it = interp.assignment.find(name);
                if (it == interp.assignment.end()) throw UnboundVariableError(name);
                prod = prod * it->second.pow(exp);
            }
        }
        acc = acc + prod;
    }
    return acc;
}

bool eval_qfree(const RingFormula& f, const Interpretation& interp) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
            return eval_term(f.lhs(), interp) == eval_term(f.rhs(), interp);
        case RingFormula::Kind::opred: {
            auto v = valuation(eval_term(f.o_arg(), interp), interp.o_place);
            return !v.has_value() || *v >= 0;
        }
        case RingFormula::Kind::conj: {
            for (const auto& c : f.children())
                if (!eval_qfree(c, interp)) return false;
            return true;
        }
        case RingFormula::Kind::disj: {
            for (const auto& c : f.children())
                if (eval_qfree(c, interp)) return true;
            return false;
        }
        case RingFormula::Kind::exists:
            throw InternalError("eval_qfree reached a quantifier");
    }
    throw InternalError("unreachable");
}

std::string EvalResult::verdict_string() const {
    switch (verdict) {
        case Verdict::True:
            return "true";
        case Verdict::False:
            return "false";
        case Verdict::Unknown:
            return "unknown";
    }
    return "";
}

EvalResult decide_special(const RingFormula& f, const Interpretation& interp) {
    if (f.kind() != RingFormula::Kind::exists ||
        f.body().kind() != RingFormula::Kind::eq)
        throw ShapeMismatchError("expected a single existential over one equation");
    const std::string& v = f.var();
    RingTerm poly = f.body().lhs() - f.body().rhs();
    if (poly.degree_in(v) > 2)
        throw ShapeMismatchError("equation degree in the bound variable exceeds 2");

    std::vector<RingTerm> coeff_terms = poly.coefficients_in(v);
    Field field = interp.field;
    RatFunc c0 = eval_term(coeff_terms[0], interp);
    RatFunc c1 = coeff_terms.size() > 1 ? eval_term(coeff_terms[1], interp) : RatFunc::zero(field);
    RatFunc c2 = coeff_terms.size() > 2 ? eval_term(coeff_terms[2], interp) : RatFunc::zero(field);

    EvalResult out;
    out.method = Method::exact_pattern;
    auto accept = [&](RatFunc w) {
        RatFunc check = c2 * w * w + c1 * w + c0;
        if (!check.is_zero()) throw InternalError("special-shape witness fails to verify");
        out.verdict = Verdict::True;
        out.witness.emplace(v, std::move(w));
    };

    if (c2.is_zero() && c1.is_zero()) {
        // the bound variable vanished: truth does not depend on it
        if (c0.is_zero())
            accept(RatFunc::zero(field));
        else
            out.verdict = Verdict::False;
        return out;
    }
    if (c2.is_zero()) {
        accept(-(c0 / c1));
        return out;
    }
    if (c1.is_zero()) {
        // v^2 = -c0/c2
        SquareResult sq = ratfunc_is_square(-(c0 / c2));
        if (sq.is_square)
            accept(*sq.root);
        else
            out.verdict = Verdict::False;
        return out;
    }
    if (field.p() == 2) {
        // substitute v = (c1/c2) w to reach w^2 + w = c0*c2/c1^2
        RatFunc rhs = c0 * c2 / (c1 * c1);
        ArtinSchreierResult as = artin_schreier_solve(rhs);
        if (as.solvable())
            accept((c1 / c2) * *as.witness);
        else
            out.verdict = Verdict::False;
        return out;
    }
    // odd characteristic: complete the square
    RatFunc disc = c1 * c1 - RatFunc::constant(FieldElem::from_int(field, 4 % field.p())) * c2 * c0;
    SquareResult sq = ratfunc_is_square(disc);
    if (!sq.is_square) {
        out.verdict = Verdict::False;
        return out;
    }
    RatFunc two = RatFunc::constant(FieldElem::from_int(field, 2));
    accept((*sq.root - c1) / (two * c2));
    return out;
}

namespace {

// deterministic candidate list: hinted powers of the t-image first, then
// values already bound, then the general enumeration
std::vector<RatFunc> witness_candidates(const Interpretation& interp, const SearchBounds& bounds) {
    std::vector<RatFunc> out;
    std::set<std::string> seen;
    auto push = [&](const RatFunc& r) {
        if (seen.insert(r.to_string()).second) out.push_back(r);
    };

    const std::uint64_t p = interp.field.p();
    std::uint64_t power = 1;
    while (static_cast<int>(power) * std::max(1, interp.t_image.height()) <=
           std::max(bounds.max_num_deg, bounds.max_den_deg)) {
        if (static_cast<int>(power) * interp.t_image.num().degree() <= bounds.max_num_deg)
            push(interp.t_image.pow(static_cast<std::int64_t>(power)));
        if (!interp.t_image.is_zero() &&
            static_cast<int>(power) * interp.t_image.num().degree() <= bounds.max_den_deg)
            push(interp.t_image.pow(-static_cast<std::int64_t>(power)));
        if (power > (std::uint64_t{1} << 40) / p) break;
        power *= p;
    }
    for (const auto& [name, value] : interp.assignment) push(value);
    for (const auto& r : enumerate_ratfuncs(interp.field, bounds.max_num_deg, bounds.max_den_deg))
        push(r);
    return out;
}

EvalResult eval_node(const RingFormula& f, const Interpretation& interp,
                     const SearchBounds& bounds);

// conjunction evaluation with cheap children first
EvalResult eval_conj(const std::vector<const RingFormula*>& children, const Interpretation& interp,
                     const SearchBounds& bounds) {
    EvalResult out;
    out.verdict = Verdict::True;
    bool any_unknown = false;
    for (const RingFormula* c : children) {
        EvalResult r = eval_node(*c, interp, bounds);
        if (r.method == Method::bounded_search) out.method = Method::bounded_search;
        if (r.verdict == Verdict::False) {
            out.verdict = Verdict::False;
            out.witness.clear();
            return out;
        }
        if (r.verdict == Verdict::Unknown) {
            any_unknown = true;
        } else {
            out.witness.insert(r.witness.begin(), r.witness.end());
        }
    }
    if (any_unknown) {
        out.verdict = Verdict::Unknown;
        out.witness.clear();
    }
    return out;
}

// evaluation-order weight: plain atoms are cheapest, special-shape
// existentials next, everything else last
int cost_class(const RingFormula& f) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
        case RingFormula::Kind::opred:
            return 0;
        case RingFormula::Kind::exists:
            return f.body().kind() == RingFormula::Kind::eq ? 1 : 2;
        default:
            return 2;
    }
}

std::vector<const RingFormula*> ordered_children(const RingFormula& f) {
    std::vector<const RingFormula*> out;
    out.reserve(f.children().size());
    for (const auto& c : f.children()) out.push_back(&c);
    std::stable_sort(out.begin(), out.end(), [](const RingFormula* a, const RingFormula* b) {
        return cost_class(*a) < cost_class(*b);
    });
    return out;
}

EvalResult eval_node(const RingFormula& f, const Interpretation& interp,
                     const SearchBounds& bounds) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
        case RingFormula::Kind::opred: {
            EvalResult out;
            out.verdict = eval_qfree(f, interp) ? Verdict::True : Verdict::False;
            return out;
        }
        case RingFormula::Kind::conj:
            return eval_conj(ordered_children(f), interp, bounds);
        case RingFormula::Kind::disj: {
            EvalResult out;
            bool any_unknown = false;
            for (const RingFormula* c : ordered_children(f)) {
                EvalResult r = eval_node(*c, interp, bounds);
                if (r.method == Method::bounded_search) out.method = Method::bounded_search;
                if (r.verdict == Verdict::True) {
                    out.verdict = Verdict::True;
                    out.witness = std::move(r.witness);
                    return out;
                }
                if (r.verdict == Verdict::Unknown) any_unknown = true;
            }
            out.verdict = any_unknown ? Verdict::Unknown : Verdict::False;
            return out;
        }
        case RingFormula::Kind::exists: {
            try {
                return decide_special(f, interp);
            } catch (const ShapeMismatchError&) {
            }
            // split the body into parts independent of the bound variable
            // (evaluated once) and dependent parts (evaluated per candidate)
            std::vector<const RingFormula*> dependent, independent;
            if (f.body().kind() == RingFormula::Kind::conj) {
                for (const auto& c : f.body().children())
                    (c.free_vars().count(f.var()) ? dependent : independent).push_back(&c);
            } else {
                dependent.push_back(&f.body());
            }

            EvalResult out;
            out.method = Method::bounded_search;
            EvalResult fixed;
            fixed.verdict = Verdict::True;
            if (!independent.empty()) {
                std::vector<const RingFormula*> sorted = independent;
                std::stable_sort(sorted.begin(), sorted.end(),
                                 [](const RingFormula* a, const RingFormula* b) {
                                     return cost_class(*a) < cost_class(*b);
                                 });
                fixed = eval_conj(sorted, interp, bounds);
                if (fixed.verdict != Verdict::True) {
                    // no candidate can certify the conjunction; stay Unknown
                    // rather than claim falsity from a bounded search
                    out.verdict = Verdict::Unknown;
                    return out;
                }
            }
            std::vector<const RingFormula*> sorted_dep = dependent;
            std::stable_sort(sorted_dep.begin(), sorted_dep.end(),
                             [](const RingFormula* a, const RingFormula* b) {
                                 return cost_class(*a) < cost_class(*b);
                             });
            for (const RatFunc& cand : witness_candidates(interp, bounds)) {
                Interpretation ext = interp.with(f.var(), cand);
                EvalResult r = eval_conj(sorted_dep, ext, bounds);
                if (r.verdict == Verdict::True) {
                    out.verdict = Verdict::True;
                    out.witness = std::move(r.witness);
                    out.witness.insert(fixed.witness.begin(), fixed.witness.end());
                    out.witness.insert_or_assign(f.var(), cand);
                    return out;
                }
            }
            out.verdict = Verdict::Unknown;
            return out;
        }
    }
    throw InternalError("unreachable");
}

// strip quantifiers for the final witness re-check
bool recheck_with_witness(const RingFormula& f, const Interpretation& interp) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
        case RingFormula::Kind::opred:
            return eval_qfree(f, interp);
        case RingFormula::Kind::conj: {
            for (const auto& c : f.children())
                if (!recheck_with_witness(c, interp)) return false;
            return true;
        }
        case RingFormula::Kind::disj: {
            for (const auto& c : f.children())
                if (recheck_with_witness(c, interp)) return true;
            return false;
        }
        case RingFormula::Kind::exists:
            if (!interp.assignment.count(f.var())) return false;
            return recheck_with_witness(f.body(), interp);
    }
    throw InternalError("unreachable");
}

}  // namespace

EvalResult eval_pe(const RingFormula& f, const Interpretation& interp, const SearchBounds& bounds) {
    if (interp.t_image.is_constant())
        throw DegreeOutOfRangeError("t must be interpreted by a nonconstant rational function");
    RingFormula renamed = rename_bound_unique(f);
    EvalResult result = eval_node(renamed, interp, bounds);
    if (result.verdict == Verdict::True) {
        Interpretation full = interp;
        for (const auto& [k, v] : result.witness) full.assignment.insert_or_assign(k, v);
        if (!recheck_with_witness(renamed, full))
            throw InternalError("eval_pe witness failed the atom-by-atom recheck");
    }
    return result;
}

std::string eval_transcript(const RingFormula& f, const Interpretation& interp,
                            const SearchBounds& bounds, const EvalResult& result) {
    nlohmann::json out;
    out["formula_hash"] = f.hash_hex();
    out["interpretation"]["field"] = interp.field.descriptor();
    out["interpretation"]["t_image"] = interp.t_image.to_string();
    out["interpretation"]["o_place"] = interp.o_place.to_string();
    nlohmann::json assign = nlohmann::json::object();
    for (const auto& [k, v] : interp.assignment) assign[k] = v.to_string();
    out["interpretation"]["assignment"] = assign;
    out["bounds"]["max_num_deg"] = bounds.max_num_deg;
    out["bounds"]["max_den_deg"] = bounds.max_den_deg;
    out["verdict"] = result.verdict_string();
    out["method"] =
        result.method == Method::exact_pattern ? "exact-pattern" : "bounded-search";
    nlohmann::json witness = nlohmann::json::object();
    for (const auto& [k, v] : result.witness) witness[k] = v.to_string();
    out["witness"] = witness;
    return out.dump(2);
}

}  // namespace fqt
