#include "fqt/pheidas.hpp"

#include <algorithm>
#include <cctype>

#include "fqt/builders.hpp"
#include "fqt/orbit.hpp"
#include "json.hpp"

namespace fqt {

std::uint64_t PheidasTerm::eval(const std::map<std::string, std::uint64_t>& env) const {
    std::uint64_t v = constant;
    for (const auto& [name, c] : coeffs) {
        auto it = env.find(name);
        if (it == env.end()) throw UnboundVariableError(name);
        v += c * it->second;
    }
    return v;
}

std::string PheidasTerm::to_string() const {
    std::string out;
    auto append = [&out](const std::string& piece) {
        if (!out.empty()) out += " + ";
        out += piece;
    };
    for (const auto& [name, c] : coeffs)
        for (std::uint64_t i = 0; i < c; ++i) append(name);
    for (std::uint64_t i = 0; i < constant; ++i) append("1");
    return out.empty() ? "0" : out;
}

PheidasFormula PheidasFormula::eq(std::uint32_t p, PheidasTerm lhs, PheidasTerm rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::eq;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return PheidasFormula(p, std::move(n));
}

PheidasFormula PheidasFormula::divp(std::uint32_t p, PheidasTerm lhs, PheidasTerm rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::divp;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return PheidasFormula(p, std::move(n));
}

PheidasFormula PheidasFormula::conj(std::uint32_t p, std::vector<PheidasFormula> children) {
    if (children.empty()) throw InternalError("empty conjunction");
    if (children.size() == 1) return children.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::conj;
    n->children = std::move(children);
    return PheidasFormula(p, std::move(n));
}

PheidasFormula PheidasFormula::disj(std::uint32_t p, std::vector<PheidasFormula> children) {
    if (children.empty()) throw InternalError("empty disjunction");
    if (children.size() == 1) return children.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::disj;
    n->children = std::move(children);
    return PheidasFormula(p, std::move(n));
}

PheidasFormula PheidasFormula::exists(std::uint32_t p, const std::string& var,
                                      PheidasFormula body) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::exists;
    n->var = var;
    n->children.push_back(std::move(body));
    return PheidasFormula(p, std::move(n));
}

std::set<std::string> PheidasFormula::free_vars() const {
    switch (kind()) {
        case Kind::eq:
        case Kind::divp: {
            std::set<std::string> out;
            for (const auto& [v, c] : lhs().coeffs) out.insert(v);
            for (const auto& [v, c] : rhs().coeffs) out.insert(v);
            return out;
        }
        case Kind::conj:
        case Kind::disj: {
            std::set<std::string> out;
            for (const auto& c : children())
                for (const auto& v : c.free_vars()) out.insert(v);
            return out;
        }
        case Kind::exists: {
            std::set<std::string> out = body().free_vars();
            out.erase(var());
            return out;
        }
    }
    return {};
}

std::string PheidasFormula::to_text() const {
    switch (kind()) {
        case Kind::eq:
            return lhs().to_string() + " = " + rhs().to_string();
        case Kind::divp:
            return lhs().to_string() + " divp " + rhs().to_string();
        case Kind::conj: {
            std::string out;
            for (const auto& c : children()) {
                if (!out.empty()) out += " & ";
                bool wrap = c.kind() == Kind::disj || c.kind() == Kind::exists;
                out += wrap ? "(" + c.to_text() + ")" : c.to_text();
            }
            return out;
        }
        case Kind::disj: {
            std::string out;
            for (const auto& c : children()) {
                if (!out.empty()) out += " | ";
                out += c.kind() == Kind::exists ? "(" + c.to_text() + ")" : c.to_text();
            }
            return out;
        }
        case Kind::exists:
            return "E " + var() + " . " + body().to_text();
    }
    return "";
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct PheidasParser {
    std::uint32_t p;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) throw SyntaxError(pos, what);
    }

    bool ident_ahead() {
        skip_ws();
        return pos < s.size() &&
               (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw SyntaxError(pos, "identifier");
        return s.substr(start, pos - start);
    }

    PheidasTerm parse_atom_into(PheidasTerm acc) {
        skip_ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t at = pos;
            std::string digits;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                digits += s[pos++];
            if (digits == "0") return acc;
            if (digits == "1") {
                acc.constant += 1;
                return acc;
            }
            throw SyntaxError(at, "literal 0 or 1");
        }
        if (eat('(')) {
            PheidasTerm inner = parse_term();
            expect(')', "')'");
            for (const auto& [v, c] : inner.coeffs) acc.coeffs[v] += c;
            acc.constant += inner.constant;
            return acc;
        }
        std::size_t at = pos;
        std::string name = ident();
        if (name == "E" || name == "divp") throw SyntaxError(at, "term");
        acc.coeffs[name] += 1;
        return acc;
    }

    PheidasTerm parse_term() {
        PheidasTerm acc = parse_atom_into(PheidasTerm{});
        while (eat('+')) acc = parse_atom_into(std::move(acc));
        return acc;
    }

    bool keyword_ahead(const char* kw) {
        skip_ws();
        std::size_t save = pos;
        if (!ident_ahead()) return false;
        std::string word = ident();
        pos = save;
        return word == kw;
    }

    PheidasFormula parse_primary() {
        skip_ws();
        std::size_t save = pos;
        if (eat('(')) {
            try {
                PheidasFormula inner = parse_formula();
                expect(')', "')'");
                skip_ws();
                char next = pos < s.size() ? s[pos] : '\0';
                if (next != '=' && next != '+' && !keyword_ahead("divp")) return inner;
            } catch (const SyntaxError&) {
            }
            pos = save;
        }
        PheidasTerm l = parse_term();
        skip_ws();
        if (eat('=')) {
            PheidasTerm r = parse_term();
            return PheidasFormula::eq(p, std::move(l), std::move(r));
        }
        if (keyword_ahead("divp")) {
            ident();
            PheidasTerm r = parse_term();
            return PheidasFormula::divp(p, std::move(l), std::move(r));
        }
        throw SyntaxError(pos, "'=' or 'divp'");
    }

    PheidasFormula parse_conj() {
        std::vector<PheidasFormula> items;
        items.push_back(parse_primary());
        while (eat('&')) items.push_back(parse_primary());
        return PheidasFormula::conj(p, std::move(items));
    }

    PheidasFormula parse_disj() {
        std::vector<PheidasFormula> items;
        items.push_back(parse_conj());
        while (eat('|')) items.push_back(parse_conj());
        return PheidasFormula::disj(p, std::move(items));
    }

    PheidasFormula parse_formula() {
        skip_ws();
        std::size_t save = pos;
        if (ident_ahead()) {
            std::string word = ident();
            if (word == "E") {
                std::string v = ident();
                if (v == "E" || v == "divp") throw SyntaxError(pos, "variable name");
                expect('.', "'.'");
                return PheidasFormula::exists(p, v, parse_formula());
            }
            pos = save;
        }
        return parse_disj();
    }
};

}  // namespace

PheidasFormula PheidasFormula::parse(std::uint32_t p, const std::string& text) {
    if (!is_prime_u64(p)) throw NonPrimeError(p);
    PheidasParser parser{p, text};
    PheidasFormula f = parser.parse_formula();
    parser.skip_ws();
    if (parser.pos != text.size()) throw SyntaxError(parser.pos, "end of input");
    return f;
}

// ---------------------------------------------------------------------------
// natural-number semantics

bool nat_divp(std::uint64_t n, std::uint64_t m, std::uint32_t p) {
    if (n == 0) return m == 0;
    if (m == 0) return false;
    if (m % n != 0) return false;
    std::uint64_t q = m / n;
    while (q % p == 0) q /= p;
    return q == 1;
}

namespace {

bool eval_nat_rec(const PheidasFormula& f, std::uint64_t bound,
                  std::map<std::string, std::uint64_t>& env) {
    switch (f.kind()) {
        case PheidasFormula::Kind::eq:
            return f.lhs().eval(env) == f.rhs().eval(env);
        case PheidasFormula::Kind::divp:
            return nat_divp(f.lhs().eval(env), f.rhs().eval(env), f.p());
        case PheidasFormula::Kind::conj: {
            for (const auto& c : f.children())
                if (!eval_nat_rec(c, bound, env)) return false;
            return true;
        }
        case PheidasFormula::Kind::disj: {
            for (const auto& c : f.children())
                if (eval_nat_rec(c, bound, env)) return true;
            return false;
        }
        case PheidasFormula::Kind::exists: {
            auto prev = env.find(f.var()) != env.end()
                            ? std::optional<std::uint64_t>(env[f.var()])
                            : std::nullopt;
            for (std::uint64_t v = 0; v <= bound; ++v) {
                env[f.var()] = v;
                if (eval_nat_rec(f.body(), bound, env)) return true;
            }
            if (prev)
                env[f.var()] = *prev;
            else
                env.erase(f.var());
            return false;
        }
    }
    throw InternalError("unreachable");
}

}  // namespace

NatResult eval_nat(const PheidasFormula& sentence, std::uint64_t bound) {
    auto free = sentence.free_vars();
    if (!free.empty()) throw UnboundVariableError(*free.begin());
    NatResult out;
    std::map<std::string, std::uint64_t> env;
    if (eval_nat_rec(sentence, bound, env)) {
        out.verdict = NatVerdict::True;
        out.witness = std::move(env);
    } else {
        out.verdict = NatVerdict::Unknown;  // bounded search refutes nothing
    }
    return out;
}

// ---------------------------------------------------------------------------
// unnesting

bool UnnestedSentence::holds(const std::vector<std::uint64_t>& values) const {
    for (const auto& a : atoms) {
        switch (a.shape) {
            case Shape::eq_var:
                if (values[a.i] != values[a.j]) return false;
                break;
            case Shape::eq_zero:
                if (values[a.i] != 0) return false;
                break;
            case Shape::eq_one:
                if (values[a.i] != 1) return false;
                break;
            case Shape::sum:
                if (values[a.i] + values[a.j] != values[a.k]) return false;
                break;
            case Shape::divp:
                if (!nat_divp(values[a.i], values[a.j], p)) return false;
                break;
        }
    }
    return true;
}

std::string UnnestedSentence::to_text() const {
    std::string out = "E ";
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += vars[i];
    }
    out += " . ";
    if (atoms.empty()) return out + "(no atoms)";
    std::string body;
    for (const auto& a : atoms) {
        if (!body.empty()) body += " & ";
        switch (a.shape) {
            case Shape::eq_var:
                body += vars[a.i] + " = " + vars[a.j];
                break;
            case Shape::eq_zero:
                body += vars[a.i] + " = 0";
                break;
            case Shape::eq_one:
                body += vars[a.i] + " = 1";
                break;
            case Shape::sum:
                body += vars[a.i] + " + " + vars[a.j] + " = " + vars[a.k];
                break;
            case Shape::divp:
                body += vars[a.i] + " divp " + vars[a.j];
                break;
        }
    }
    return out + body;
}

namespace {

struct Unnester {
    UnnestedSentence out;
    std::map<std::string, std::size_t> index;
    std::set<std::string> used;
    std::optional<std::size_t> unit_var;
    std::optional<std::size_t> zero_var;

    std::size_t add_var(const std::string& name, PheidasTerm def) {
        out.vars.push_back(name);
        out.var_defs.push_back(std::move(def));
        index[name] = out.vars.size() - 1;
        used.insert(name);
        return out.vars.size() - 1;
    }

    std::string fresh_name() {
        for (int len = 1;; ++len) {
            // a, b, ..., z, aa, ab, ...
            std::vector<int> digits(len, 0);
            while (true) {
                std::string name;
                for (int d : digits) name += static_cast<char>('a' + d);
                if (!used.count(name)) return name;
                int pos = len - 1;
                while (pos >= 0 && ++digits[pos] == 26) digits[pos--] = 0;
                if (pos < 0) break;
            }
        }
    }

    std::size_t fresh_var(PheidasTerm def) { return add_var(fresh_name(), std::move(def)); }

    std::size_t unit() {
        if (!unit_var) {
            PheidasTerm one;
            one.constant = 1;
            unit_var = fresh_var(std::move(one));
            out.atoms.push_back({UnnestedSentence::Shape::eq_one, *unit_var});
        }
        return *unit_var;
    }

    std::size_t zero() {
        if (!zero_var) {
            zero_var = fresh_var(PheidasTerm{});
            out.atoms.push_back({UnnestedSentence::Shape::eq_zero, *zero_var});
        }
        return *zero_var;
    }

    // variable operands of a compound term: each variable repeated by its
    // coefficient, then one shared unit per constant contribution
    std::vector<std::size_t> operands(const PheidasTerm& term) {
        std::vector<std::size_t> ops;
        for (const auto& [v, c] : term.coeffs)
            for (std::uint64_t i = 0; i < c; ++i) ops.push_back(index.at(v));
        for (std::uint64_t i = 0; i < term.constant; ++i) ops.push_back(unit());
        return ops;
    }

    void chain_into(const std::vector<std::size_t>& ops, std::size_t target) {
        if (ops.empty()) {
            out.atoms.push_back({UnnestedSentence::Shape::eq_zero, target});
            return;
        }
        if (ops.size() == 1) {
            out.atoms.push_back({UnnestedSentence::Shape::eq_var, ops[0], target});
            return;
        }
        std::size_t cur = ops[0];
        for (std::size_t i = 1; i + 1 < ops.size(); ++i) {
            PheidasTerm def = out.var_defs[cur];
            const PheidasTerm& add = out.var_defs[ops[i]];
            for (const auto& [v, c] : add.coeffs) def.coeffs[v] += c;
            def.constant += add.constant;
            std::size_t w = fresh_var(std::move(def));
            out.atoms.push_back({UnnestedSentence::Shape::sum, cur, ops[i], w});
            cur = w;
        }
        out.atoms.push_back({UnnestedSentence::Shape::sum, cur, ops.back(), target});
    }

    // reduce a term to a variable index, allocating a fresh endpoint if needed
    std::size_t to_var(const PheidasTerm& term) {
        if (term.is_var()) return index.at(term.coeffs.begin()->first);
        if (term.is_literal(0)) return zero();
        if (term.is_literal(1)) return unit();
        std::vector<std::size_t> ops = operands(term);
        std::size_t v = fresh_var(term);
        chain_into(ops, v);
        return v;
    }

    void handle_eq(const PheidasTerm& a, const PheidasTerm& b) {
        const bool a_simple = a.is_var() || a.is_literal(0) || a.is_literal(1);
        const bool b_simple = b.is_var() || b.is_literal(0) || b.is_literal(1);
        if (a_simple && b_simple) {
            if (a.is_var() && b.is_var()) {
                out.atoms.push_back(
                    {UnnestedSentence::Shape::eq_var, index.at(a.coeffs.begin()->first),
                     index.at(b.coeffs.begin()->first)});
            } else if (a.is_var() || b.is_var()) {
                const PheidasTerm& var_side = a.is_var() ? a : b;
                const PheidasTerm& lit_side = a.is_var() ? b : a;
                std::size_t vi = index.at(var_side.coeffs.begin()->first);
                out.atoms.push_back({lit_side.is_literal(0) ? UnnestedSentence::Shape::eq_zero
                                                            : UnnestedSentence::Shape::eq_one,
                                     vi});
            } else if (!(a == b)) {
                // contradictory literal equation: encode an unsatisfiable pair
                std::size_t w = fresh_var(PheidasTerm{});
                out.atoms.push_back({UnnestedSentence::Shape::eq_zero, w});
                out.atoms.push_back({UnnestedSentence::Shape::eq_one, w});
            }
            return;
        }
        if (a_simple) {
            handle_eq(b, a);
            return;
        }
        // a is compound here
        std::vector<std::size_t> ops_a = operands(a);
        if (b.is_var()) {
            chain_into(ops_a, index.at(b.coeffs.begin()->first));
        } else if (b.is_literal(0)) {
            chain_into(ops_a, zero());
        } else if (b.is_literal(1)) {
            chain_into(ops_a, unit());
        } else {
            std::vector<std::size_t> ops_b = operands(b);
            std::size_t v = fresh_var(a);
            chain_into(ops_a, v);
            chain_into(ops_b, v);
        }
    }

    void handle_atom(const PheidasFormula& f) {
        if (f.kind() == PheidasFormula::Kind::eq) {
            handle_eq(f.lhs(), f.rhs());
        } else {
            std::size_t l = to_var(f.lhs());
            std::size_t r = to_var(f.rhs());
            out.atoms.push_back({UnnestedSentence::Shape::divp, l, r});
        }
    }
};

void collect_conjuncts(const PheidasFormula& f, std::vector<std::string>& prefix,
                       std::vector<PheidasFormula>& atoms) {
    switch (f.kind()) {
        case PheidasFormula::Kind::eq:
        case PheidasFormula::Kind::divp:
            atoms.push_back(f);
            return;
        case PheidasFormula::Kind::conj: {
            for (const auto& c : f.children()) collect_conjuncts(c, prefix, atoms);
            return;
        }
        case PheidasFormula::Kind::exists:
            prefix.push_back(f.var());
            collect_conjuncts(f.body(), prefix, atoms);
            return;
        case PheidasFormula::Kind::disj:
            throw ContainsDisjunctionError();
    }
}

}  // namespace

UnnestedSentence unnest(const PheidasFormula& sentence) {
    auto free = sentence.free_vars();
    if (!free.empty()) throw UnboundVariableError(*free.begin());

    std::vector<std::string> prefix;
    std::vector<PheidasFormula> atoms;
    collect_conjuncts(sentence, prefix, atoms);

    Unnester un;
    un.out.p = sentence.p();
    for (const auto& v : prefix) {
        if (un.index.count(v))
            throw WitnessInvalidError("shadowed quantifier variable: " + v);
        PheidasTerm self;
        self.coeffs[v] = 1;
        un.add_var(v, std::move(self));
    }
    for (const auto& a : atoms) un.handle_atom(a);
    return un.out;
}

// ---------------------------------------------------------------------------
// distribution to existential-conjunctive sentences

namespace {

PheidasTerm rename_term(const PheidasTerm& t, const std::string& from, const std::string& to) {
    PheidasTerm out = t;
    auto it = out.coeffs.find(from);
    if (it != out.coeffs.end()) {
        std::uint64_t c = it->second;
        out.coeffs.erase(it);
        out.coeffs[to] += c;
    }
    return out;
}

PheidasFormula rename_var(const PheidasFormula& f, const std::string& from, const std::string& to) {
    switch (f.kind()) {
        case PheidasFormula::Kind::eq:
            return PheidasFormula::eq(f.p(), rename_term(f.lhs(), from, to),
                                      rename_term(f.rhs(), from, to));
        case PheidasFormula::Kind::divp:
            return PheidasFormula::divp(f.p(), rename_term(f.lhs(), from, to),
                                        rename_term(f.rhs(), from, to));
        case PheidasFormula::Kind::conj:
        case PheidasFormula::Kind::disj: {
            std::vector<PheidasFormula> out;
            for (const auto& c : f.children()) out.push_back(rename_var(c, from, to));
            return f.kind() == PheidasFormula::Kind::conj
                       ? PheidasFormula::conj(f.p(), std::move(out))
                       : PheidasFormula::disj(f.p(), std::move(out));
        }
        case PheidasFormula::Kind::exists: {
            if (f.var() == from) return f;  // shadowed, stop
            return PheidasFormula::exists(f.p(), f.var(), rename_var(f.body(), from, to));
        }
    }
    throw InternalError("unreachable");
}

struct Flat {
    std::vector<std::string> prefix;
    std::vector<PheidasFormula> atoms;  // eq/divp only
};

std::string fresh_flat_name(const std::string& base, const std::set<std::string>& used) {
    if (!used.count(base)) return base;
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!used.count(cand)) return cand;
    }
}

std::vector<Flat> flatten(const PheidasFormula& f, std::set<std::string> scope) {
    switch (f.kind()) {
        case PheidasFormula::Kind::eq:
        case PheidasFormula::Kind::divp:
            return {Flat{{}, {f}}};
        case PheidasFormula::Kind::disj: {
            std::vector<Flat> out;
            for (const auto& c : f.children())
                for (auto& item : flatten(c, scope)) out.push_back(std::move(item));
            return out;
        }
        case PheidasFormula::Kind::conj: {
            std::vector<Flat> acc = {Flat{}};
            for (const auto& c : f.children()) {
                std::vector<Flat> next;
                for (const auto& left : acc) {
                    std::set<std::string> inner_scope = scope;
                    for (const auto& v : left.prefix) inner_scope.insert(v);
                    for (auto& right : flatten(c, inner_scope)) {
                        Flat merged = left;
                        // rename the right prefix away from the left one
                        PheidasFormula body = right.atoms.empty()
                                                  ? PheidasFormula::eq(f.p(), PheidasTerm{},
                                                                       PheidasTerm{})
                                                  : PheidasFormula::conj(f.p(), right.atoms);
                        std::set<std::string> used = inner_scope;
                        std::vector<std::string> renamed;
                        for (const auto& v : right.prefix) {
                            std::string nv = fresh_flat_name(v, used);
                            used.insert(nv);
                            renamed.push_back(nv);
                            if (nv != v) body = rename_var(body, v, nv);
                        }
                        for (const auto& v : renamed) merged.prefix.push_back(v);
                        if (body.kind() == PheidasFormula::Kind::conj) {
                            for (const auto& atom : body.children()) merged.atoms.push_back(atom);
                        } else if (!right.atoms.empty()) {
                            merged.atoms.push_back(body);
                        }
                        next.push_back(std::move(merged));
                    }
                }
                acc = std::move(next);
            }
            return acc;
        }
        case PheidasFormula::Kind::exists: {
            std::string name = fresh_flat_name(f.var(), scope);
            PheidasFormula body =
                name == f.var() ? f.body() : rename_var(f.body(), f.var(), name);
            std::set<std::string> inner = scope;
            inner.insert(name);
            std::vector<Flat> out;
            for (auto& item : flatten(body, inner)) {
                Flat merged;
                merged.prefix.push_back(name);
                for (const auto& v : item.prefix) merged.prefix.push_back(v);
                merged.atoms = std::move(item.atoms);
                out.push_back(std::move(merged));
            }
            return out;
        }
    }
    throw InternalError("unreachable");
}

}  // namespace

std::vector<PheidasFormula> distribute_disjunctions(const PheidasFormula& sentence) {
    std::vector<PheidasFormula> out;
    for (const auto& flat : flatten(sentence, sentence.free_vars())) {
        PheidasFormula body = flat.atoms.empty()
                                  ? PheidasFormula::eq(sentence.p(), PheidasTerm{}, PheidasTerm{})
                                  : PheidasFormula::conj(sentence.p(), flat.atoms);
        for (auto it = flat.prefix.rbegin(); it != flat.prefix.rend(); ++it)
            body = PheidasFormula::exists(sentence.p(), *it, std::move(body));
        out.push_back(std::move(body));
    }
    return out;
}

// ---------------------------------------------------------------------------
// translation

TranslateResult translate(const UnnestedSentence& u, std::int64_t genus, std::uint64_t s_val) {
    if (s_val < 1) throw DegreeOutOfRangeError("the valuation of t must be >= 1");
    TranslateResult tr;
    tr.nat_vars = u.vars;
    const std::size_t l = u.vars.size();

    std::vector<std::string> xs(l), ys(l);
    for (std::size_t i = 0; i < l; ++i) {
        xs[i] = "x" + std::to_string(i + 1);
        ys[i] = "y" + std::to_string(i + 1);
        tr.x_of[u.vars[i]] = xs[i];
        tr.y_of[u.vars[i]] = ys[i];
    }
    tr.z_var = "z";
    RingTerm z = RingTerm::variable("z");
    RingTerm t = RingTerm::t();
    RingTerm one = RingTerm::constant(1);
    auto xv = [&xs](std::size_t i) { return RingTerm::variable(xs[i]); };
    auto yv = [&ys](std::size_t i) { return RingTerm::variable(ys[i]); };

    std::vector<RingFormula> conjuncts;
    auto emit_o = [&](RingTerm term) {
        tr.o_terms.push_back(term);
        conjuncts.push_back(RingFormula::opred(std::move(term)));
    };

    for (std::size_t a = 0; a < u.atoms.size(); ++a) {
        const auto& atom = u.atoms[a];
        switch (atom.shape) {
            case UnnestedSentence::Shape::eq_var:
                emit_o(xv(atom.i) * yv(atom.j));
                emit_o(xv(atom.j) * yv(atom.i));
                break;
            case UnnestedSentence::Shape::eq_zero:
                emit_o(yv(atom.i));
                break;
            case UnnestedSentence::Shape::eq_one:
                emit_o(xv(atom.i).pow(s_val) * z);
                emit_o(yv(atom.i).pow(s_val) * t);
                break;
            case UnnestedSentence::Shape::sum:
                emit_o(xv(atom.i) * xv(atom.j) * yv(atom.k));
                emit_o(yv(atom.i) * yv(atom.j) * xv(atom.k));
                break;
            case UnnestedSentence::Shape::divp: {
                // v_i divp v_j, i.e. n_j = n_i * p^s: the auxiliary pair
                // realizes x-tilde = x_i^{p^s} through the orbit formula
                std::string xt = "xt" + std::to_string(a + 1);
                std::string yt = "yt" + std::to_string(a + 1);
                RingTerm xtv = RingTerm::variable(xt);
                RingTerm ytv = RingTerm::variable(yt);
                RingFormula pi = build_pi_root(genus, u.p, 0)
                                     .substitute({{"x", xtv}, {"y", xv(atom.i)}});
                RingTerm unit_prod = xtv * ytv;
                RingTerm o1 = xtv * yv(atom.j);
                RingTerm o2 = ytv * xv(atom.j);
                tr.eq_one_products.push_back(unit_prod);
                tr.o_terms.push_back(o1);
                tr.o_terms.push_back(o2);
                tr.pi_checks.push_back({xt, xs[atom.i]});
                tr.divp_aux.push_back({a, xt, yt, atom.i, atom.j});
                std::vector<RingFormula> inner;
                inner.push_back(std::move(pi));
                inner.push_back(RingFormula::eq(unit_prod, one));
                inner.push_back(RingFormula::opred(std::move(o1)));
                inner.push_back(RingFormula::opred(std::move(o2)));
                conjuncts.push_back(RingFormula::exists(
                    xt, RingFormula::exists(yt, RingFormula::conj(std::move(inner)))));
                break;
            }
        }
    }

    // scaffold: t*z = 1, x_i*y_i = 1, O(x_i)
    tr.eq_one_products.push_back(t * z);
    conjuncts.push_back(RingFormula::eq(t * z, one));
    for (std::size_t i = 0; i < l; ++i) {
        tr.eq_one_products.push_back(xv(i) * yv(i));
        conjuncts.push_back(RingFormula::eq(xv(i) * yv(i), one));
    }
    for (std::size_t i = 0; i < l; ++i) emit_o(xv(i));

    RingFormula matrix = RingFormula::conj(std::move(conjuncts));
    RingFormula wrapped = RingFormula::exists(tr.z_var, std::move(matrix));
    for (std::size_t i = l; i-- > 0;) wrapped = RingFormula::exists(ys[i], std::move(wrapped));
    for (std::size_t i = l; i-- > 0;) wrapped = RingFormula::exists(xs[i], std::move(wrapped));
    tr.formula = std::move(wrapped);
    return tr;
}

// ---------------------------------------------------------------------------
// witness lifting and checking

std::map<std::string, RatFunc> lift_witness(const std::map<std::string, std::uint64_t>& nat_witness,
                                            const UnnestedSentence& u, Field field,
                                            std::uint64_t s_val) {
    if (s_val != 1)
        throw DegreeOutOfRangeError("witness lifting targets the t-adic valuation (s_val = 1)");
    std::vector<std::uint64_t> values(u.vars.size());
    for (std::size_t i = 0; i < u.vars.size(); ++i) {
        auto it = nat_witness.find(u.vars[i]);
        if (it == nat_witness.end())
            throw WitnessInvalidError("missing witness value for " + u.vars[i]);
        values[i] = it->second;
    }
    if (!u.holds(values)) throw WitnessInvalidError("witness does not satisfy the sentence");

    std::map<std::string, RatFunc> out;
    RatFunc t = RatFunc::t(field);
    for (std::size_t i = 0; i < u.vars.size(); ++i) {
        out.emplace("x" + std::to_string(i + 1), t.pow(static_cast<std::int64_t>(values[i])));
        out.emplace("y" + std::to_string(i + 1), t.pow(-static_cast<std::int64_t>(values[i])));
    }
    out.emplace("z", t.pow(-1));

    // auxiliary pairs for divisibility atoms: n_j = n_i * p^s, so the
    // realized power x_i^{p^s} is exactly t^{n_j}
    for (std::size_t a = 0; a < u.atoms.size(); ++a) {
        const auto& atom = u.atoms[a];
        if (atom.shape != UnnestedSentence::Shape::divp) continue;
        std::uint64_t nj = values[atom.j];
        RatFunc xt = t.pow(static_cast<std::int64_t>(nj));
        out.emplace("yt" + std::to_string(a + 1), xt.inverse());
        out.emplace("xt" + std::to_string(a + 1), std::move(xt));
    }
    return out;
}

bool check_translation(const TranslateResult& tr, const std::map<std::string, RatFunc>& assignment,
                       Field field) {
    Interpretation interp = Interpretation::standard(field);
    interp.assignment = assignment;
    RatFunc one = RatFunc::one(field);
    for (const auto& term : tr.eq_one_products)
        if (eval_term(term, interp) != one) return false;
    for (const auto& term : tr.o_terms) {
        auto v = valuation(eval_term(term, interp), interp.o_place);
        if (v.has_value() && *v < 0) return false;
    }
    for (const auto& check : tr.pi_checks) {
        auto xt = assignment.find(check.power_var);
        auto base = assignment.find(check.base_var);
        if (xt == assignment.end() || base == assignment.end()) return false;
        if (!frobenius_power_of(xt->second, base->second).has_value()) return false;
    }
    return true;
}

std::string RoundTripReport::to_json_string() const {
    nlohmann::json out;
    out["sentence"] = sentence;
    out["nat_verdict"] = nat_verdict;
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [k, v] : nat_witness) w[k] = v;
    out["witness"] = w;
    out["lifted_check"] = lifted_ok;
    out["scaffold_vars"] = scaffold_vars;
    out["divp_atoms"] = divp_atoms;
    return out.dump(2);
}

RoundTripReport pheidas_roundtrip(const PheidasFormula& sentence, std::int64_t genus,
                                  std::uint64_t bound, Field field) {
    RoundTripReport report;
    report.sentence = sentence.to_text();
    NatResult nr = eval_nat(sentence, bound);
    report.nat_verdict = nr.verdict == NatVerdict::True ? "true" : "unknown";
    report.nat_witness = nr.witness;
    if (nr.verdict != NatVerdict::True) return report;

    for (const auto& disjunct : distribute_disjunctions(sentence)) {
        NatResult dr = eval_nat(disjunct, bound);
        if (dr.verdict != NatVerdict::True) continue;
        UnnestedSentence u = unnest(disjunct);

        // extend the witness to the fresh unnesting variables through their
        // defining terms over the original variables
        std::map<std::string, std::uint64_t> extended = dr.witness;
        for (std::size_t i = 0; i < u.vars.size(); ++i)
            extended[u.vars[i]] = u.var_defs[i].eval(dr.witness);

        TranslateResult tr = translate(u, genus);
        std::map<std::string, RatFunc> lifted = lift_witness(extended, u, field);
        report.lifted_ok = check_translation(tr, lifted, field);
        report.scaffold_vars = tr.scaffold_var_count();
        report.divp_atoms = tr.divp_aux.size();
        return report;
    }
    report.lifted_ok = false;
    return report;
}

}  // namespace fqt
