#include "doctest.h"

#include <functional>

#include "fqt/builders.hpp"
#include "fqt/lower.hpp"
#include "fqt/orbit.hpp"

using namespace fqt;

namespace {

std::size_t count_exists(const RingFormula& f) {
    switch (f.kind()) {
        case RingFormula::Kind::eq:
        case RingFormula::Kind::opred:
            return 0;
        case RingFormula::Kind::conj:
        case RingFormula::Kind::disj: {
            std::size_t n = 0;
            for (const auto& c : f.children()) n += count_exists(c);
            return n;
        }
        case RingFormula::Kind::exists:
            return 1 + count_exists(f.body());
    }
    return 0;
}

}  // namespace

TEST_CASE("ring term arithmetic and canonical form") {
    RingTerm x = RingTerm::variable("x");
    RingTerm y = RingTerm::variable("y");
    RingTerm t = RingTerm::t();

    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK((x + y).pow(2) == x * x + RingTerm::constant(2) * x * y + y * y);
    CHECK((x - x).is_zero());
    CHECK(x * y == y * x);

    CHECK(x.free_vars() == std::set<std::string>{"x"});
    CHECK(t.free_vars().empty());  // t is a constant symbol, not a variable
    CHECK((t * x + y).free_vars() == std::set<std::string>{"x", "y"});

    RingTerm p = x * x * y + RingTerm::constant(2) * x + RingTerm::constant(1);
    CHECK(p.degree_in("x") == 2);
    CHECK(p.degree_in("y") == 1);
    auto coeffs = p.coefficients_in("x");
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0] == RingTerm::constant(1));
    CHECK(coeffs[1] == RingTerm::constant(2));
    CHECK(coeffs[2] == y);

    CHECK(p.substitute({{"x", t}}) == t * t * y + RingTerm::constant(2) * t + RingTerm::constant(1));
    CHECK((x * x - RingTerm::constant(3) * y).reduced_mod(2) == x * x + y);
}

TEST_CASE("formula text round trips") {
    RingFormula f = RingFormula::parse("E u . (u*x = y) & O(u)");
    REQUIRE(f.kind() == RingFormula::Kind::exists);
    CHECK(f.var() == "u");
    REQUIRE(f.body().kind() == RingFormula::Kind::conj);
    REQUIRE(f.body().children().size() == 2);
    CHECK(f.body().children()[0].kind() == RingFormula::Kind::eq);
    CHECK(f.body().children()[1].kind() == RingFormula::Kind::opred);
    CHECK(f.free_vars() == std::set<std::string>{"x", "y"});

    CHECK_THROWS_AS(RingFormula::parse("~(x=0)"), SyntaxError);
    CHECK_THROWS_AS(RingFormula::parse("E t . t = 0"), SyntaxError);
    CHECK_THROWS_AS(RingFormula::parse("x = "), SyntaxError);

    for (const std::string text : {
             "x = 0",
             "E h . x = h^2",
             "(x = 0 | y = 1) & O(x*y)",
             "E u . E v . (u*v = 1 & O(u)) | t*x = y + 3",
             "x^2 - 2*x*y + t^3 = 0",
             "-x + 1 = y",
         }) {
        RingFormula f1 = RingFormula::parse(text);
        RingFormula f2 = RingFormula::parse(f1.to_text());
        CHECK(f1 == f2);
        CHECK(f1.to_text() == f2.to_text());
        RingFormula f3 = RingFormula::from_json_string(f1.to_json_string());
        CHECK(f1 == f3);
    }
}

TEST_CASE("capture-avoiding substitution") {
    // substituting a term containing the bound name must rename the binder
    RingFormula f = RingFormula::parse("E u . u*x = y");
    RingFormula g = f.substitute({{"x", RingTerm::variable("u")}});
    CHECK(g.free_vars() == std::set<std::string>{"u", "y"});
    REQUIRE(g.kind() == RingFormula::Kind::exists);
    CHECK(g.var() != "u");

    // and an untouched binder stays put
    RingFormula h = f.substitute({{"y", RingTerm::t()}});
    CHECK(h.var() == "u");
    CHECK(h.free_vars() == std::set<std::string>{"x"});
}

TEST_CASE("test-polynomial family: construction and reductions") {
    PhiFamily fam = build_phi_family(0);
    CHECK(fam.d == 7);
    CHECK(fam.primes == std::vector<std::uint32_t>{2, 3, 5, 7, 11});
    CHECK(fam.m_for.at(2) == 18);
    CHECK(fam.m_for.at(3) == 47);
    CHECK(fam.m_for.at(11) == fam.m_star);
    CHECK(fam.crt_modulus == 2310);
    CHECK(fam.lifts.size() == static_cast<std::size_t>(fam.m_star));

    for (std::uint32_t p : fam.primes) {
        Field fp = Field::create(p, 1);
        auto reds = fam.reductions(p);
        auto expected = enumerate_irreducibles(fp, 7, reds.size());
        REQUIRE(reds.size() == static_cast<std::size_t>(fam.m_for.at(p)));
        for (std::size_t j = 0; j < reds.size(); ++j) {
            CHECK(reds[j] == expected[j]);
            CHECK(reds[j].is_monic());
            CHECK(is_irreducible(reds[j]));
        }
    }
    // lifts are monic of degree d over the integers
    for (const auto& lift : fam.lifts) {
        CHECK(lift.size() == 8);
        CHECK(lift.back() == 1);
    }
}

TEST_CASE("family degree choice for larger genus stays arithmetic") {
    // the full family for genus >= 1 is too large to build in memory, but the
    // degree selection and branch sizes are plain arithmetic
    for (std::int64_t g : {1, 2}) {
        std::int64_t chosen = 0;
        for (std::int64_t cand = 1; chosen == 0; ++cand) {
            if (cand != 1 && !is_prime_u64(cand)) continue;
            bool ok = true;
            for (std::int64_t p = 2; p <= 4 * g + 12; ++p) {
                if (!is_prime_u64(p)) continue;
                if (count_irreducibles(cand, p) < static_cast<std::uint64_t>(m_bound(g, cand, p))) {
                    ok = false;
                    break;
                }
            }
            if (ok) chosen = cand;
        }
        CHECK(chosen == 11);  // degree 7 already fails at p = 2 for genus 1
        CHECK(count_irreducibles(7, 2) < static_cast<std::uint64_t>(m_bound(g, 7, 2)));
    }
}

TEST_CASE("phi construction matches the displayed shape") {
    PhiBuild phi = build_phi(0);
    CHECK(phi.formula.free_vars() == std::set<std::string>{"x", "y"});

    REQUIRE(phi.formula.kind() == RingFormula::Kind::disj);
    const auto& branches = phi.formula.children();
    REQUIRE(branches.size() == 6);  // p = 2, 3, 5, 7, 11 and the characteristic-0 branch

    // characteristic-2 branch: 18 existential conjuncts plus the 2 = 0 guard
    const RingFormula& char2 = branches[0];
    REQUIRE(char2.kind() == RingFormula::Kind::conj);
    CHECK(char2.children().size() == 19);
    std::size_t exist_count = 0;
    for (const auto& c : char2.children())
        if (c.kind() == RingFormula::Kind::exists) ++exist_count;
    CHECK(exist_count == 18);
    CHECK(char2.children().back() ==
          RingFormula::eq(RingTerm::constant(2), RingTerm::constant(0)));

    // branch sizes follow the per-characteristic counts
    PhiFamily fam = build_phi_family(0);
    std::vector<std::uint32_t> primes = {2, 3, 5, 7, 11};
    for (std::size_t b = 0; b < 5; ++b)
        CHECK(branches[b].children().size() ==
              static_cast<std::size_t>(fam.m_for.at(primes[b])) + 1);

    // characteristic-0 branch: 12 square conditions plus 5 invertibility guards
    const RingFormula& char0 = branches[5];
    CHECK(char0.children().size() == 12 + 5);

    // a conjunct of the p = 2 branch introduces exactly one bound variable
    const RingFormula& first = char2.children().front();
    REQUIRE(first.kind() == RingFormula::Kind::exists);
    CHECK(first.var() == "h2_1");
    CHECK(first.body().kind() == RingFormula::Kind::eq);
}

TEST_CASE("pi construction") {
    RingFormula pi = build_pi(0);
    CHECK(pi.free_vars() == std::set<std::string>{"x", "y", "z"});
    REQUIRE(pi.kind() == RingFormula::Kind::exists);
    CHECK(pi.var() == "u");
    REQUIRE(pi.body().kind() == RingFormula::Kind::conj);
    REQUIRE(pi.body().children().size() == 4);

    // the third conjunct is the instance at (u*x, z*y): its first
    // characteristic-2 atom mentions exactly the expected product argument
    PhiFamily fam = build_phi_family(0);
    const RingFormula& third = pi.body().children()[2];
    const RingFormula& atom = third.children()[0].children()[0].body();
    RingTerm ux = RingTerm::variable("u") * RingTerm::variable("x");
    RingTerm zy = RingTerm::variable("z") * RingTerm::variable("y");
    RingTerm f1_ux, f1_zy;
    for (std::size_t i = 0; i < fam.lifts[0].size(); ++i) {
        f1_ux = f1_ux + RingTerm::constant(fam.lifts[0][i]) * ux.pow(i);
        f1_zy = f1_zy + RingTerm::constant(fam.lifts[0][i]) * zy.pow(i);
    }
    CHECK(atom.lhs() == f1_ux + f1_zy);

    RingFormula root0 = build_pi_root(0, 2, 0);
    CHECK(root0.free_vars() == std::set<std::string>{"x", "y"});
    REQUIRE(root0.kind() == RingFormula::Kind::exists);
    CHECK(root0.var() == "w");
    const RingFormula& root_atom = root0.body().children()[0];
    CHECK(root_atom == RingFormula::eq(RingTerm::t(), RingTerm::variable("w")));

    RingFormula root1 = build_pi_root(0, 2, 1);
    const RingFormula& sq_atom = root1.body().children()[0];
    CHECK(sq_atom == RingFormula::eq(RingTerm::t(), RingTerm::variable("w").pow(2)));
    CHECK(root1.free_vars() == std::set<std::string>{"x", "y"});
}

TEST_CASE("phi text serialization round trips") {
    PhiBuild phi = build_phi(0);
    std::string text = phi.formula.to_text();
    RingFormula back = RingFormula::parse(text);
    CHECK(back == phi.formula);
}

TEST_CASE("prenexing") {
    PolySystem a = to_system(RingFormula::parse("E h . x = h^2"));
    REQUIRE(a.vars == std::vector<std::string>{"h"});
    REQUIRE(a.root.kind == PolySystem::Node::Kind::equation);
    RingTerm h = RingTerm::variable("h");
    CHECK(a.root.equation == RingTerm::variable("x") - h * h);

    PolySystem b = to_system(RingFormula::parse("x = 0 & y = 1"));
    CHECK(b.vars.empty());
    REQUIRE(b.root.kind == PolySystem::Node::Kind::conj);
    CHECK(b.root.children.size() == 2);

    // colliding sibling binders are renamed apart
    PolySystem c = to_system(RingFormula::parse("(E h . x = h^2) & (E h . y = h^2)"));
    REQUIRE(c.vars.size() == 2);
    CHECK(c.vars[0] != c.vars[1]);

    CHECK_THROWS_AS(to_system(RingFormula::parse("O(x)")), ContainsOPredicateError);

    RingFormula pi = build_pi(0);
    PolySystem sys = to_system(pi);
    CHECK(sys.vars.size() == count_exists(pi));
}

TEST_CASE("single polynomial combiner") {
    RingTerm x = RingTerm::variable("x");
    RingTerm y = RingTerm::variable("y");
    RingTerm t = RingTerm::t();

    RingFormula conj_f = RingFormula::parse("x = 0 & y = 0");
    CHECK(single_polynomial(conj_f, 3) == (x * x - t * y * y).reduced_mod(3));
    CHECK(single_polynomial(conj_f, 2) == x * x + t * y * y);

    RingFormula disj_f = RingFormula::parse("x = 0 | y = 0");
    CHECK(single_polynomial(disj_f, 2) == x * y);

    CHECK_THROWS_AS(single_polynomial(RingFormula::parse("O(x)"), 2), ContainsOPredicateError);
}
