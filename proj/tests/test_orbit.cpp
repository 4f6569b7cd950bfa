#include "doctest.h"

#include <random>

#include "fqt/sweep.hpp"
#include "test_util.hpp"

using namespace fqt;

namespace {

// brute-force Artin-Schreier oracle: search h with num/den degree <= bound
bool as_brute_force(const RatFunc& c, int bound) {
    for (const auto& h : enumerate_ratfuncs(c.field(), bound, bound))
        if (h * h + h == c) return true;
    return false;
}

}  // namespace

TEST_CASE("m_bound values") {
    for (std::int64_t g : {0, 1, 2}) CHECK(m_bound(g, 1, 13) == 4 * g + 12);
    CHECK(m_bound(0, 1, 5) == 12);
    CHECK(m_bound(0, 7, 2) == 18);  // ceil((12 + 8*(2+4+8)) / 7) = ceil(124/7)
    CHECK(m_bound(0, 5, 3) == 22);  // ceil((12 + 8*(3+9)) / 5) = ceil(108/5)
    CHECK(m_bound(1, 7, 2) == 19);
    CHECK(m_bound(0, 2, 2) == 14);  // the sum bound ceil((d-1)/2) = 1 here
    CHECK_THROWS_AS(m_bound(0, 1, 4), NonPrimeError);
    CHECK_THROWS_AS(m_bound(-1, 1, 2), DegreeOutOfRangeError);
}

TEST_CASE("config selection finds the least workable test degree") {
    CriterionConfig a = choose_config(0, 2, 1);
    CHECK(a.d == 7);
    CHECK(a.m == 18);
    CHECK(a.polys.size() == 18);
    // every smaller candidate degree must fail the availability check
    for (std::int64_t d : {1, 2, 3, 5})
        CHECK(count_irreducibles(d, 2) < static_cast<std::uint64_t>(m_bound(0, d, 2)));

    CriterionConfig b = choose_config(0, 3, 1);
    CHECK(b.d == 5);
    CHECK(b.m == 22);
    for (std::int64_t d : {1, 2, 3})
        CHECK(count_irreducibles(d, 3) < static_cast<std::uint64_t>(m_bound(0, d, 3)));

    CriterionConfig c = choose_config(0, 13, 1);
    CHECK(c.d == 1);
    CHECK(c.m == 12);
    CHECK(c.polys.size() == 12);

    CHECK_THROWS_AS(make_config(0, 2, 1, 2), NotEnoughIrreduciblesError);
}

TEST_CASE("evaluating test polynomials at rational functions") {
    Field f2 = Field::create(2, 1);
    Field f4 = Field::create(2, 2);
    Poly fj = Poly::from_ints(f2, {1, 1, 1});  // X^2 + X + 1 over F_2

    RatFunc t = RatFunc::t(f4);
    RatFunc v = eval_poly_at(fj, t);
    CHECK(v == RatFunc::from_poly(Poly::from_ints(f4, {1, 1, 1})));

    // F_j(w) = 0 exactly when w generates the degree-d subfield
    RatFunc w = RatFunc::constant(FieldElem::from_int(f4, 2));
    CHECK(eval_poly_at(fj, w).is_zero());

    RatFunc one_over_t = RatFunc::t(f4).inverse();
    RatFunc u = eval_poly_at(fj, one_over_t);
    CHECK(u == RatFunc(Poly::from_ints(f4, {1, 1, 1}), Poly::from_ints(f4, {0, 0, 1})));
}

TEST_CASE("Artin-Schreier solver on pinned cases") {
    Field f2 = Field::create(2, 1);
    RatFunc t = RatFunc::t(f2);

    auto zero = artin_schreier_solve(RatFunc::zero(f2));
    REQUIRE(zero.solvable());
    CHECK(zero.witness->is_zero());

    // 1/t^2 + 1/t = h^2 + h with h = 1/t
    auto a = artin_schreier_solve(t.pow(-2) + t.inverse());
    REQUIRE(a.solvable());
    CHECK(*a.witness == t.inverse());

    auto b = artin_schreier_solve(t.inverse());
    CHECK(b.status == ArtinSchreierResult::Status::odd_pole);
    CHECK(*b.pole == Poly::x(f2));
    CHECK(*b.pole_order == 1);

    // constant 1 over F_2(t): trace 1, and brute force agrees there is no h
    auto c = artin_schreier_solve(RatFunc::one(f2));
    CHECK(c.status == ArtinSchreierResult::Status::nonzero_trace);
    CHECK(!as_brute_force(RatFunc::one(f2), 3));

    // over F_4(t) the constant 1 becomes solvable with h = w
    Field f4 = Field::create(2, 2);
    auto d = artin_schreier_solve(RatFunc::one(f4));
    REQUIRE(d.solvable());
    CHECK(*d.witness == RatFunc::constant(FieldElem::from_int(f4, 2)));

    // odd pole at infinity
    auto e = artin_schreier_solve(RatFunc::from_poly(Poly::from_ints(f2, {0, 0, 0, 1})));
    CHECK(e.status == ArtinSchreierResult::Status::odd_pole_at_infinity);

    Field f3 = Field::create(3, 1);
    CHECK_THROWS_AS(artin_schreier_solve(RatFunc::one(f3)), WrongCharacteristicError);
}

TEST_CASE("Artin-Schreier set laws") {
    std::mt19937_64 rng(67);
    for (auto [p, k] : {std::pair<int, int>{2, 1}, {2, 2}}) {
        Field f = Field::create(p, k);
        std::vector<RatFunc> solvables;
        for (int trial = 0; trial < 120; ++trial) {
            RatFunc h = testutil::random_ratfunc(f, 3, rng);
            RatFunc c = h * h + h;
            auto r = artin_schreier_solve(c);
            REQUIRE(r.solvable());
            CHECK(*r.witness * *r.witness + *r.witness == c);
            solvables.push_back(c);
        }
        // closure under addition
        for (std::size_t i = 0; i + 1 < solvables.size(); i += 2)
            CHECK(artin_schreier_solve(solvables[i] + solvables[i + 1]).solvable());
        // x solvable iff x^2 solvable
        for (int trial = 0; trial < 80; ++trial) {
            RatFunc x = testutil::random_ratfunc(f, 2, rng);
            CHECK(artin_schreier_solve(x).solvable() == artin_schreier_solve(x * x).solvable());
        }
        // valuations of solvable elements: nonnegative or even
        for (const auto& c : solvables) {
            if (c.is_zero()) continue;
            for (const auto& [pi, m] : factorize(c.den()).factors) {
                auto v = *valuation(c, Place::finite(pi));
                CHECK((v >= 0 || v % 2 == 0));
            }
            auto vinf = *valuation(c, Place::infinity(f));
            CHECK((vinf >= 0 || vinf % 2 == 0));
        }
    }
}

TEST_CASE("solver agrees with exhaustive witness search on small inputs") {
    Field f2 = Field::create(2, 1);
    for (const auto& c : enumerate_ratfuncs(f2, 1, 1)) {
        bool brute = as_brute_force(c, 4);
        CHECK(artin_schreier_solve(c).solvable() == brute);
    }
}

TEST_CASE("direct orbit oracle") {
    Field f2 = Field::create(2, 1);
    RatFunc t = RatFunc::t(f2);

    OrbitAnswer a = direct_orbit(t.pow(4), t);
    REQUIRE(a.in_orbit);
    CHECK(a.direction == OrbitAnswer::Direction::f_power_of_g);
    CHECK(a.s == 2);

    OrbitAnswer b = direct_orbit(t, t);
    REQUIRE(b.in_orbit);
    CHECK(b.s == 0);

    CHECK(!direct_orbit(t + RatFunc::one(f2), t).in_orbit);
    CHECK(!direct_orbit(t, RatFunc::one(f2)).in_orbit);  // mixed constant pair

    // constants move inside F_q under Frobenius
    Field f4 = Field::create(2, 2);
    RatFunc w = RatFunc::constant(FieldElem::from_int(f4, 2));
    OrbitAnswer c = direct_orbit(w * w, w);
    REQUIRE(c.in_orbit);
    CHECK(c.s == 1);
    CHECK(direct_orbit(w, w * w).in_orbit);

    // directional check: t = (t^2)^{2^s} has no solution
    CHECK(!frobenius_power_of(t, t * t).has_value());
    CHECK(frobenius_power_of(t * t, t) == 1);
}

TEST_CASE("orbit criterion on pinned pairs") {
    CriterionConfig cfg2 = choose_config(0, 2, 1);
    Field f2 = cfg2.ext_field();
    RatFunc t2 = RatFunc::t(f2);
    CHECK(orbit_criterion(t2 * t2, t2, cfg2));
    CHECK(!orbit_criterion(t2, t2 + RatFunc::one(f2), cfg2));

    CriterionConfig cfg3 = choose_config(0, 3, 1);
    Field f3 = cfg3.ext_field();
    RatFunc t3 = RatFunc::t(f3);
    CHECK(orbit_criterion(t3.pow(3), t3, cfg3));
    CHECK(!orbit_criterion(t3, t3 + RatFunc::one(f3), cfg3));

    CHECK_THROWS_AS(orbit_criterion(RatFunc::one(f2), RatFunc::zero(f2), cfg2), BothConstantError);
}

TEST_CASE("criterion is symmetric and implied per test polynomial by the orbit") {
    std::mt19937_64 rng(71);
    CriterionConfig cfg = choose_config(0, 2, 1);
    Field f2 = cfg.ext_field();
    auto funcs = enumerate_ratfuncs(f2, 1, 1);
    for (int trial = 0; trial < 60; ++trial) {
        const RatFunc& f = funcs[rng() % funcs.size()];
        const RatFunc& g = funcs[rng() % funcs.size()];
        if (f.is_constant() && g.is_constant()) continue;
        CHECK(orbit_criterion(f, g, cfg) == orbit_criterion(g, f, cfg));
    }
    // whenever f = g^{p^s}, every single conjunct passes, not just the whole
    for (const auto& g : funcs) {
        if (g.is_constant()) continue;
        RatFunc f = g * g;
        for (const auto& fj : cfg.polys)
            CHECK(char2_pair_condition(eval_poly_at(fj, f), eval_poly_at(fj, g)));
    }
}

TEST_CASE("zero-value case split of the characteristic-2 condition") {
    // with d | k the test polynomial can vanish at constants: F_4 and d = 2
    Field f4 = Field::create(2, 2);
    RatFunc zero = RatFunc::zero(f4);
    RatFunc t = RatFunc::t(f4);
    CHECK(char2_pair_condition(zero, zero));          // 0 = 0 holds
    CHECK(!char2_pair_condition(zero, t));            // one side vanishing fails
    CHECK(!char2_pair_condition(t, zero));
    CHECK(char2_pair_condition(t, t));
}

TEST_CASE("equivalence mini-sweeps at degree 1") {
    SweepOptions opts;
    opts.max_num_deg = 1;
    opts.max_den_deg = 1;

    CriterionConfig cfg2 = choose_config(0, 2, 1);
    SweepSummary s2 = equivalence_sweep(cfg2, opts);
    CHECK(s2.disagreements == 0);
    CHECK(s2.checked > 0);

    CriterionConfig cfg3 = choose_config(0, 3, 1);
    SweepSummary s3 = equivalence_sweep(cfg3, opts);
    CHECK(s3.disagreements == 0);

    // constant field F_4 with the same characteristic-2 configuration
    CriterionConfig cfg4 = choose_config(0, 2, 2);
    SweepSummary s4 = equivalence_sweep(cfg4, opts);
    CHECK(s4.disagreements == 0);
}

TEST_CASE("sweep workers and resume do not change the rows") {
    CriterionConfig cfg = choose_config(0, 2, 1);
    SweepOptions base;
    base.max_num_deg = 1;
    base.max_den_deg = 1;
    std::vector<SweepRow> rows_single;
    base.on_row = [&](const SweepRow& r) { rows_single.push_back(r); };
    equivalence_sweep(cfg, base);

    SweepOptions multi = base;
    std::vector<SweepRow> rows_multi;
    multi.workers = 2;
    multi.on_row = [&](const SweepRow& r) { rows_multi.push_back(r); };
    equivalence_sweep(cfg, multi);

    REQUIRE(rows_single.size() == rows_multi.size());
    for (std::size_t i = 0; i < rows_single.size(); ++i) {
        CHECK(rows_single[i].index == rows_multi[i].index);
        CHECK(rows_single[i].f == rows_multi[i].f);
        CHECK(rows_single[i].agree == rows_multi[i].agree);
    }

    // resuming from the midpoint reproduces the tail
    SweepOptions resumed = base;
    std::vector<SweepRow> rows_tail;
    resumed.start_index = rows_single[rows_single.size() / 2].index;
    resumed.on_row = [&](const SweepRow& r) { rows_tail.push_back(r); };
    equivalence_sweep(cfg, resumed);
    CHECK(rows_tail.size() == rows_single.size() - rows_single.size() / 2);
    CHECK(rows_tail.front().index == rows_single[rows_single.size() / 2].index);
}

TEST_CASE("sweep fast path agrees with the plain criterion") {
    CriterionConfig cfg2 = choose_config(0, 2, 1);
    CriterionConfig cfg3 = choose_config(0, 3, 1);
    for (const auto& cfg : {cfg2, cfg3}) {
        Field field = cfg.ext_field();
        std::vector<SweepRow> rows;
        SweepOptions opts;
        opts.max_num_deg = 1;
        opts.max_den_deg = 1;
        opts.on_row = [&](const SweepRow& r) { rows.push_back(r); };
        equivalence_sweep(cfg, opts);
        for (std::size_t i = 0; i < rows.size(); i += 7) {
            RatFunc f = parse_ratfunc(field, rows[i].f);
            RatFunc g = parse_ratfunc(field, rows[i].g);
            CHECK(orbit_criterion(f, g, cfg) == rows[i].criterion);
        }
    }
}
