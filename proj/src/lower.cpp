#include "fqt/lower.hpp"

#include "fqt/finite_field.hpp"
#include "json.hpp"

namespace fqt {

using nlohmann::json;

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
    if (!used.count(base)) return base;
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

PolySystem::Node hoist(const RingFormula& f, std::vector<std::string>& vars,
                       std::set<std::string>& used) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
            return {PolySystem::Node::Kind::equation, {}, f.lhs() - f.rhs()};
        case RingFormula::Kind::opred:
            throw ContainsOPredicateError();
        case RingFormula::Kind::conj:
        case RingFormula::Kind::disj: {
            PolySystem::Node node{f.kind() == RingFormula::Kind::conj
                                      ? PolySystem::Node::Kind::conj
                                      : PolySystem::Node::Kind::disj,
                                  {},
                                  RingTerm()};
            for (const auto& c : f.children()) node.children.push_back(hoist(c, vars, used));
            return node;
        }
        case RingFormula::Kind::exists: {
            std::string name = fresh_name(f.var(), used);
            used.insert(name);
            vars.push_back(name);
            RingFormula body = name == f.var()
                                   ? f.body()
                                   : f.body().substitute({{f.var(), RingTerm::variable(name)}});
            return hoist(body, vars, used);
        }
    }
    throw InternalError("unreachable");
}

}  // namespace

PolySystem to_system(const RingFormula& f) {
    PolySystem sys;
    std::set<std::string> used = f.free_vars();
    sys.root = hoist(f, sys.vars, used);
    return sys;
}

RingFormula rename_bound_unique(const RingFormula& f) {
    struct Walker {
        std::set<std::string> used;

        RingFormula walk(const RingFormula& g) {
            switch (g.kind()) {
                case RingFormula::Kind::eq:
                case RingFormula::Kind::opred:
                    return g;
                case RingFormula::Kind::conj:
                case RingFormula::Kind::disj: {
                    std::vector<RingFormula> out;
                    out.reserve(g.children().size());
                    for (const auto& c : g.children()) out.push_back(walk(c));
                    return g.kind() == RingFormula::Kind::conj
                               ? RingFormula::conj(std::move(out))
                               : RingFormula::disj(std::move(out));
                }
                case RingFormula::Kind::exists: {
                    std::string name = fresh_name(g.var(), used);
                    used.insert(name);
                    RingFormula body =
                        name == g.var()
                            ? g.body()
                            : g.body().substitute({{g.var(), RingTerm::variable(name)}});
                    return RingFormula::exists(name, walk(body));
                }
            }
            throw InternalError("unreachable");
        }
    };
    Walker w;
    w.used = f.free_vars();
    return w.walk(f);
}

namespace {

RingTerm combine(const PolySystem::Node& node, std::uint32_t p) {
    switch (node.kind) {
        case PolySystem::Node::Kind::equation:
            return node.equation.reduced_mod(p);
        case PolySystem::Node::Kind::disj: {
            RingTerm acc = RingTerm::constant(1);
            for (const auto& c : node.children) acc = (acc * combine(c, p)).reduced_mod(p);
            return acc;
        }
        case PolySystem::Node::Kind::conj: {
            RingTerm acc = combine(node.children.front(), p);
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                RingTerm b = combine(node.children[i], p);
                acc = (acc * acc - RingTerm::t() * b * b).reduced_mod(p);
            }
            return acc;
        }
    }
    throw InternalError("unreachable");
}

json system_node_to_json(const PolySystem::Node& node) {
    switch (node.kind) {
        case PolySystem::Node::Kind::equation:
            return {{"kind", "eq"}, {"poly", node.equation.to_string()}};
        case PolySystem::Node::Kind::conj:
        case PolySystem::Node::Kind::disj: {
            json items = json::array();
            for (const auto& c : node.children) items.push_back(system_node_to_json(c));
            return {{"kind", node.kind == PolySystem::Node::Kind::conj ? "and" : "or"},
                    {"children", items}};
        }
    }
    throw InternalError("unreachable");
}

}  // namespace

std::string PolySystem::to_json_string() const {
    json out;
    out["vars"] = vars;
    out["tree"] = system_node_to_json(root);
    return out.dump();
}

RingTerm single_polynomial(const RingFormula& f, std::uint32_t p) {
    if (!is_prime_u64(p)) throw NonPrimeError(p);
    PolySystem sys = to_system(f);
    return combine(sys.root, p);
}

}  // namespace fqt
