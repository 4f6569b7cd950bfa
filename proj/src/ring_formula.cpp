#include "fqt/ring_formula.hpp"

#include <cctype>

#include "json.hpp"

namespace fqt {

using nlohmann::json;

RingFormula RingFormula::eq(RingTerm lhs, RingTerm rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::eq;
    n->free = lhs.free_vars();
    for (const auto& v : rhs.free_vars()) n->free.insert(v);
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return RingFormula(std::move(n));
}

RingFormula RingFormula::opred(RingTerm arg) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::opred;
    n->free = arg.free_vars();
    n->lhs = std::move(arg);
    return RingFormula(std::move(n));
}

RingFormula RingFormula::conj(std::vector<RingFormula> children) {
    if (children.empty()) throw InternalError("empty conjunction");
    if (children.size() == 1) return children.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::conj;
    for (const auto& c : children)
        for (const auto& v : c.free_vars()) n->free.insert(v);
    n->children = std::move(children);
    return RingFormula(std::move(n));
}

RingFormula RingFormula::disj(std::vector<RingFormula> children) {
    if (children.empty()) throw InternalError("empty disjunction");
    if (children.size() == 1) return children.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::disj;
    for (const auto& c : children)
        for (const auto& v : c.free_vars()) n->free.insert(v);
    n->children = std::move(children);
    return RingFormula(std::move(n));
}

RingFormula RingFormula::exists(const std::string& var, RingFormula body) {
    if (var == "t") throw InternalError("cannot quantify over the constant symbol t");
    auto n = std::make_shared<Node>();
    n->kind = Kind::exists;
    n->var = var;
    n->free = body.free_vars();
    n->free.erase(var);
    n->children.push_back(std::move(body));
    return RingFormula(std::move(n));
}

bool RingFormula::contains_o() const {
    switch (kind()) {
        case Kind::eq:
            return false;
        case Kind::opred:
            return true;
        case Kind::conj:
        case Kind::disj: {
            for (const auto& c : children())
                if (c.contains_o()) return true;
            return false;
        }
        case Kind::exists:
            return body().contains_o();
    }
    return false;
}

std::size_t RingFormula::atom_count() const {
    switch (kind()) {
        case Kind::eq:
        case Kind::opred:
            return 1;
        case Kind::conj:
        case Kind::disj: {
            std::size_t n = 0;
            for (const auto& c : children()) n += c.atom_count();
            return n;
        }
        case Kind::exists:
            return body().atom_count();
    }
    return 0;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int i = 2;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!avoid.count(cand)) return cand;
    }
}

}  // namespace

RingFormula RingFormula::substitute(const std::map<std::string, RingTerm>& sigma) const {
    if (sigma.empty()) return *this;
    {
        // untouched subtrees are shared, not copied
        const std::set<std::string>& free = free_vars();
        bool relevant = false;
        for (const auto& [k, term] : sigma)
            if (free.count(k)) {
                relevant = true;
                break;
            }
        if (!relevant) return *this;
    }
    switch (kind()) {
        case Kind::eq:
            return eq(lhs().substitute(sigma), rhs().substitute(sigma));
        case Kind::opred:
            return opred(o_arg().substitute(sigma));
        case Kind::conj:
        case Kind::disj: {
            std::vector<RingFormula> out;
            out.reserve(children().size());
            for (const auto& c : children()) out.push_back(c.substitute(sigma));
            return kind() == Kind::conj ? conj(std::move(out)) : disj(std::move(out));
        }
        case Kind::exists: {
            std::map<std::string, RingTerm> inner = sigma;
            inner.erase(var());
            if (inner.empty()) return *this;
            // rename the bound variable when a substituted term would be captured
            std::set<std::string> incoming;
            for (const auto& [k, term] : inner)
                for (const auto& v : term.free_vars()) incoming.insert(v);
            if (incoming.count(var())) {
                std::set<std::string> avoid = incoming;
                for (const auto& v : body().free_vars()) avoid.insert(v);
                for (const auto& [k, term] : inner) avoid.insert(k);
                std::string renamed = fresh_name(var(), avoid);
                RingFormula new_body = body().substitute({{var(), RingTerm::variable(renamed)}});
                return exists(renamed, new_body.substitute(inner));
            }
            return exists(var(), body().substitute(inner));
        }
    }
    throw InternalError("unreachable");
}

bool RingFormula::equals(const RingFormula& o) const {
    if (n_ == o.n_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
        case Kind::eq:
            return lhs() == o.lhs() && rhs() == o.rhs();
        case Kind::opred:
            return o_arg() == o.o_arg();
        case Kind::conj:
        case Kind::disj: {
            if (children().size() != o.children().size()) return false;
            for (std::size_t i = 0; i < children().size(); ++i)
                if (!children()[i].equals(o.children()[i])) return false;
            return true;
        }
        case Kind::exists:
            return var() == o.var() && body().equals(o.body());
    }
    return false;
}

std::string RingFormula::to_text() const {
    switch (kind()) {
        case Kind::eq:
            return lhs().to_string() + " = " + rhs().to_string();
        case Kind::opred:
            return "O(" + o_arg().to_string() + ")";
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
                bool wrap = c.kind() == Kind::exists;
                out += wrap ? "(" + c.to_text() + ")" : c.to_text();
            }
            return out;
        }
        case Kind::exists:
            return "E " + var() + " . " + body().to_text();
    }
    return "";
}

std::string RingFormula::hash_hex() const {
    std::string text = to_text();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// text parsing

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
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
        if (!ident_ahead()) throw SyntaxError(pos, "identifier");
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    bool nat_ahead() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }

    Coef nat() {
        skip_ws();
        if (!nat_ahead()) throw SyntaxError(pos, "number");
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return Coef(s.substr(start, pos - start));
    }
};

struct FormulaParser {
    Lexer lex;

    RingTerm parse_base() {
        if (lex.nat_ahead()) return RingTerm::constant(lex.nat());
        if (lex.eat('(')) {
            RingTerm t = parse_term();
            lex.expect(')', "')'");
            return t;
        }
        std::size_t at = lex.pos;
        std::string name = lex.ident();
        if (name == "E" || name == "O") throw SyntaxError(at, "term (E and O are reserved)");
        return RingTerm::variable(name);
    }

    RingTerm parse_factor() {
        RingTerm base = parse_base();
        if (lex.eat('^')) {
            Coef e = lex.nat();
            if (e > 4096) throw SyntaxError(lex.pos, "exponent <= 4096");
            return base.pow(e.convert_to<std::uint64_t>());
        }
        return base;
    }

    RingTerm parse_addend() {
        RingTerm acc = parse_factor();
        while (lex.eat('*')) acc = acc * parse_factor();
        return acc;
    }

    RingTerm parse_term() {
        bool neg = lex.eat('-');
        RingTerm acc = parse_addend();
        if (neg) acc = -acc;
        while (true) {
            if (lex.eat('+')) {
                acc += parse_addend();
            } else if (lex.eat('-')) {
                acc -= parse_addend();
            } else {
                return acc;
            }
        }
    }

    bool term_operator_ahead() {
        char c = lex.peek();
        return c == '=' || c == '+' || c == '-' || c == '*' || c == '^';
    }

    RingFormula parse_primary() {
        lex.skip_ws();
        std::size_t save = lex.pos;
        if (lex.ident_ahead()) {
            std::string word = lex.ident();
            if (word == "O") {
                lex.expect('(', "'('");
                RingTerm arg = parse_term();
                lex.expect(')', "')'");
                return RingFormula::opred(std::move(arg));
            }
            lex.pos = save;
        }
        if (lex.peek() == '(') {
            // try a parenthesized formula; fall back to a term equation
            lex.eat('(');
            try {
                RingFormula inner = parse_formula();
                lex.expect(')', "')'");
                if (!term_operator_ahead()) return inner;
            } catch (const SyntaxError&) {
            }
            lex.pos = save;
        }
        RingTerm l = parse_term();
        lex.expect('=', "'='");
        RingTerm r = parse_term();
        return RingFormula::eq(std::move(l), std::move(r));
    }

    RingFormula parse_conj() {
        std::vector<RingFormula> items;
        items.push_back(parse_primary());
        while (lex.eat('&')) items.push_back(parse_primary());
        return RingFormula::conj(std::move(items));
    }

    RingFormula parse_disj() {
        std::vector<RingFormula> items;
        items.push_back(parse_conj());
        while (lex.eat('|')) items.push_back(parse_conj());
        return RingFormula::disj(std::move(items));
    }

    RingFormula parse_formula() {
        lex.skip_ws();
        std::size_t save = lex.pos;
        if (lex.ident_ahead()) {
            std::string word = lex.ident();
            if (word == "E") {
                std::size_t var_at = lex.pos;
                std::string v = lex.ident();
                if (v == "t") throw SyntaxError(var_at, "variable other than t");
                if (v == "E" || v == "O") throw SyntaxError(var_at, "variable (E, O reserved)");
                lex.expect('.', "'.'");
                return RingFormula::exists(v, parse_formula());
            }
            lex.pos = save;
        }
        return parse_disj();
    }
};

}  // namespace

RingFormula RingFormula::parse(const std::string& text) {
    FormulaParser p{Lexer{text}};
    RingFormula f = p.parse_formula();
    if (!p.lex.at_end()) throw SyntaxError(p.lex.pos, "end of input");
    return f;
}

RingTerm parse_ring_term(const std::string& text) {
    FormulaParser p{Lexer{text}};
    RingTerm t = p.parse_term();
    if (!p.lex.at_end()) throw SyntaxError(p.lex.pos, "end of input");
    return t;
}

// ---------------------------------------------------------------------------
// json serialization

namespace {

json term_to_json(const RingTerm& t) {
    json out = json::array();
    for (const auto& [m, c] : t.monomials()) {
        json factors = json::object();
        for (const auto& [v, e] : m.factors) factors[vars::name(v)] = e;
        out.push_back(json::array({c.str(), factors}));
    }
    return out;
}

RingTerm term_from_json(const json& j) {
    RingTerm out;
    for (const auto& entry : j) {
        Coef c(entry.at(0).get<std::string>());
        RingTerm mono = RingTerm::constant(std::move(c));
        for (const auto& [name, exp] : entry.at(1).items())
            mono = mono * RingTerm::variable(name).pow(exp.get<std::uint32_t>());
        out += mono;
    }
    return out;
}

json formula_to_json(const RingFormula& f) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
            return {{"kind", "eq"}, {"lhs", term_to_json(f.lhs())}, {"rhs", term_to_json(f.rhs())}};
        case RingFormula::Kind::opred:
            return {{"kind", "o"}, {"arg", term_to_json(f.o_arg())}};
        case RingFormula::Kind::conj:
        case RingFormula::Kind::disj: {
            json items = json::array();
            for (const auto& c : f.children()) items.push_back(formula_to_json(c));
            return {{"kind", f.kind() == RingFormula::Kind::conj ? "and" : "or"},
                    {"children", items}};
        }
        case RingFormula::Kind::exists:
            return {{"kind", "exists"}, {"var", f.var()}, {"body", formula_to_json(f.body())}};
    }
    throw InternalError("unreachable");
}

RingFormula formula_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "eq")
        return RingFormula::eq(term_from_json(j.at("lhs")), term_from_json(j.at("rhs")));
    if (kind == "o") return RingFormula::opred(term_from_json(j.at("arg")));
    if (kind == "and" || kind == "or") {
        std::vector<RingFormula> children;
        for (const auto& c : j.at("children")) children.push_back(formula_from_json(c));
        return kind == "and" ? RingFormula::conj(std::move(children))
                             : RingFormula::disj(std::move(children));
    }
    if (kind == "exists")
        return RingFormula::exists(j.at("var").get<std::string>(),
                                   formula_from_json(j.at("body")));
    throw SyntaxError(0, "formula kind");
}

}  // namespace

std::string RingFormula::to_json_string() const { return formula_to_json(*this).dump(); }

RingFormula RingFormula::from_json_string(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.byte, "valid JSON");
    }
    return formula_from_json(j);
}

}  // namespace fqt
