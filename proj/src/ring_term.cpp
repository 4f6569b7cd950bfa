#include "fqt/ring_formula.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace fqt {

namespace vars {

namespace {
std::shared_mutex mu;
std::deque<std::string> names;
std::unordered_map<std::string, std::uint32_t> ids;
}  // namespace

std::uint32_t intern(const std::string& name) {
    {
        std::shared_lock lock(mu);
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
    }
    std::unique_lock lock(mu);
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(names.size());
    names.push_back(name);
    ids.emplace(name, id);
    return id;
}

const std::string& name(std::uint32_t id) {
    // names are append-only with stable storage; refresh a thread-local view
    // only when an unseen id arrives
    thread_local std::vector<const std::string*> view;
    if (id >= view.size()) {
        std::shared_lock lock(mu);
        view.resize(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) view[i] = &names[i];
    }
    return *view[id];
}

}  // namespace vars

std::uint64_t Monomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
}

bool Monomial::operator<(const Monomial& o) const {
    // compare by variable spelling so the order is reproducible across runs;
    // equal interned ids short-circuit the string comparison
    std::size_t i = 0, j = 0;
    while (i < factors.size() && j < o.factors.size()) {
        if (factors[i].first != o.factors[j].first) {
            const std::string& a = vars::name(factors[i].first);
            const std::string& b = vars::name(o.factors[j].first);
            if (a != b) return a < b;
        }
        if (factors[i].second != o.factors[j].second)
            return factors[i].second < o.factors[j].second;
        ++i;
        ++j;
    }
    return factors.size() < o.factors.size();
}

void RingTerm::add_monomial(Monomial m, Coef c) {
    if (c == 0) return;
    auto it = ms_.find(m);
    if (it == ms_.end()) {
        ms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) ms_.erase(it);
    }
}

RingTerm RingTerm::constant(Coef c) {
    RingTerm t;
    t.add_monomial(Monomial{}, std::move(c));
    return t;
}

RingTerm RingTerm::variable(const std::string& name) {
    RingTerm t;
    Monomial m;
    m.factors.emplace_back(vars::intern(name), 1);
    t.add_monomial(std::move(m), Coef(1));
    return t;
}

bool RingTerm::is_constant() const {
    return ms_.empty() || (ms_.size() == 1 && ms_.begin()->first.factors.empty());
}

RingTerm RingTerm::operator+(const RingTerm& o) const {
    RingTerm r = *this;
    r += o;
    return r;
}

RingTerm RingTerm::operator-(const RingTerm& o) const {
    RingTerm r = *this;
    r -= o;
    return r;
}

RingTerm& RingTerm::operator+=(const RingTerm& o) {
    for (const auto& [m, c] : o.ms_) add_monomial(m, c);
    return *this;
}

RingTerm& RingTerm::operator-=(const RingTerm& o) {
    for (const auto& [m, c] : o.ms_) add_monomial(m, -c);
    return *this;
}

RingTerm RingTerm::operator-() const {
    RingTerm r;
    for (const auto& [m, c] : ms_) r.ms_.emplace(m, -c);
    return r;
}

namespace {

Monomial merge_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        const std::string& an = vars::name(a.factors[i].first);
        const std::string& bn = vars::name(b.factors[j].first);
        if (an == bn) {
            out.factors.emplace_back(a.factors[i].first,
                                     a.factors[i].second + b.factors[j].second);
            ++i;
            ++j;
        } else if (an < bn) {
            out.factors.push_back(a.factors[i++]);
        } else {
            out.factors.push_back(b.factors[j++]);
        }
    }
    while (i < a.factors.size()) out.factors.push_back(a.factors[i++]);
    while (j < b.factors.size()) out.factors.push_back(b.factors[j++]);
    return out;
}

}  // namespace

RingTerm RingTerm::operator*(const RingTerm& o) const {
    RingTerm r;
    for (const auto& [ma, ca] : ms_)
        for (const auto& [mb, cb] : o.ms_) r.add_monomial(merge_monomials(ma, mb), ca * cb);
    return r;
}

RingTerm RingTerm::pow(std::uint64_t e) const {
    RingTerm result = RingTerm::constant(1);
    RingTerm base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::set<std::string> RingTerm::free_vars() const {
    std::set<std::string> out;
    for (const auto& [m, c] : ms_)
        for (const auto& [v, e] : m.factors) {
            const std::string& n = vars::name(v);
            if (n != "t") out.insert(n);
        }
    return out;
}

RingTerm RingTerm::substitute(const std::map<std::string, RingTerm>& sigma) const {
    if (sigma.count("t")) throw InternalError("cannot substitute for the constant symbol t");
    std::map<std::uint32_t, const RingTerm*> by_id;
    bool renaming_only = true;
    for (const auto& [name, term] : sigma) {
        by_id.emplace(vars::intern(name), &term);
        const auto& ms = term.monomials();
        if (ms.size() != 1 || ms.begin()->second != 1 || ms.begin()->first.factors.size() != 1 ||
            ms.begin()->first.factors.front().second != 1)
            renaming_only = false;
    }

    if (renaming_only) {
        // pure variable renaming: remap ids and restore the sort order
        RingTerm out;
        for (const auto& [m, c] : ms_) {
            Monomial renamed = m;
            for (auto& [v, e] : renamed.factors) {
                auto it = by_id.find(v);
                if (it != by_id.end())
                    v = it->second->monomials().begin()->first.factors.front().first;
            }
            std::sort(renamed.factors.begin(), renamed.factors.end(),
                      [](const auto& a, const auto& b) {
                          return vars::name(a.first) < vars::name(b.first);
                      });
            // merge equal adjacent variables (renaming can collide factors)
            Monomial merged;
            for (const auto& [v, e] : renamed.factors) {
                if (!merged.factors.empty() && merged.factors.back().first == v)
                    merged.factors.back().second += e;
                else
                    merged.factors.emplace_back(v, e);
            }
            out.add_monomial(std::move(merged), c);
        }
        return out;
    }

    RingTerm out;
    for (const auto& [m, c] : ms_) {
        RingTerm prod = RingTerm::constant(c);
        Monomial untouched;
        for (const auto& [v, e] : m.factors) {
            auto it = by_id.find(v);
            if (it == by_id.end())
                untouched.factors.emplace_back(v, e);
            else
                prod = prod * it->second->pow(e);
        }
        if (!untouched.factors.empty()) {
            RingTerm shell;
            shell.add_monomial(std::move(untouched), Coef(1));
            prod = prod * shell;
        }
        out += prod;
    }
    return out;
}

std::uint32_t RingTerm::degree_in(const std::string& var) const {
    std::uint32_t id = vars::intern(var);
    std::uint32_t deg = 0;
    for (const auto& [m, c] : ms_)
        for (const auto& [v, e] : m.factors)
            if (v == id) deg = std::max(deg, e);
    return deg;
}

std::vector<RingTerm> RingTerm::coefficients_in(const std::string& var) const {
    std::uint32_t id = vars::intern(var);
    std::vector<RingTerm> out(degree_in(var) + 1);
    for (const auto& [m, c] : ms_) {
        std::uint32_t e = 0;
        Monomial rest;
        for (const auto& [v, exp] : m.factors) {
            if (v == id)
                e = exp;
            else
                rest.factors.emplace_back(v, exp);
        }
        out[e].add_monomial(std::move(rest), c);
    }
    return out;
}

RingTerm RingTerm::reduced_mod(std::uint32_t p) const {
    RingTerm out;
    for (const auto& [m, c] : ms_) {
        Coef r = c % p;
        if (r < 0) r += p;
        out.add_monomial(m, std::move(r));
    }
    return out;
}

std::string RingTerm::to_string() const {
    if (ms_.empty()) return "0";
    // display order: total degree descending, then monomial order
    std::vector<const std::pair<const Monomial, Coef>*> entries;
    entries.reserve(ms_.size());
    for (const auto& e : ms_) entries.push_back(&e);
    std::stable_sort(entries.begin(), entries.end(), [](const auto* a, const auto* b) {
        std::uint64_t da = a->first.total_degree(), db = b->first.total_degree();
        if (da != db) return da > db;
        return a->first < b->first;
    });

    std::string out;
    bool first = true;
    for (const auto* e : entries) {
        const Monomial& m = e->first;
        Coef c = e->second;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        std::string vars_part;
        for (const auto& [v, exp] : m.factors) {
            if (!vars_part.empty()) vars_part += "*";
            vars_part += vars::name(v);
            if (exp > 1) vars_part += "^" + std::to_string(exp);
        }
        if (vars_part.empty()) {
            out += c.str();
        } else if (c == 1) {
            out += vars_part;
        } else {
            out += c.str() + "*" + vars_part;
        }
    }
    return out;
}

}  // namespace fqt
