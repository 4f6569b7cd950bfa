// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code; all comparisons are
// exact.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fqt/builders.hpp"
#include "fqt/eval.hpp"
#include "fqt/lower.hpp"
#include "fqt/pheidas.hpp"
#include "fqt/sweep.hpp"

using namespace fqt;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool pass, double seconds,
            const std::string& detail = "") {
    std::printf("%s criterion %d: %s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

struct Timer {
    Clock::time_point start = Clock::now();
    double elapsed() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

// ---------------------------------------------------------------------------
// 1. irreducible counts, via the CLI and against exhaustive testing

std::string cli_json(const std::string& args) {
    std::string out_path = "/tmp/fqt_acceptance_cli.json";
    std::string cmd = std::string(FQT_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return "";
    std::ifstream f(out_path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::uint64_t exhaustive_irreducible_count(std::uint32_t d, std::uint32_t p) {
    Field field = Field::create(p, 1);
    std::uint64_t total = 1, count = 0;
    for (std::uint32_t i = 0; i < d; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint64_t> digits;
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < d; ++i) {
            digits.push_back(c % p);
            c /= p;
        }
        digits.push_back(1);
        if (is_irreducible(Poly::from_ints(field, digits))) ++count;
    }
    return count;
}

void criterion_1() {
    Timer timer;
    bool pass = true;
    std::string detail;
    struct Case {
        std::uint32_t d, p;
        std::uint64_t expected;
    };
    for (const Case c : {Case{7, 2, 18}, Case{11, 2, 186}, Case{5, 3, 48}}) {
        std::string out = cli_json("irr-polys --d " + std::to_string(c.d) + " --p " +
                                   std::to_string(c.p) + " --format json");
        std::uint64_t reported =
            out.empty() ? 0 : nlohmann::json::parse(out)["count"].get<std::uint64_t>();
        std::uint64_t necklace = count_irreducibles(c.d, c.p);
        std::uint64_t exhaustive = exhaustive_irreducible_count(c.d, c.p);
        if (reported != c.expected || necklace != c.expected || exhaustive != c.expected) {
            pass = false;
            detail += "d=" + std::to_string(c.d) + ",p=" + std::to_string(c.p) + " got cli=" +
                      std::to_string(reported) + " necklace=" + std::to_string(necklace) +
                      " exhaustive=" + std::to_string(exhaustive) + "; ";
        }
    }
    double secs = timer.elapsed();
    if (secs >= 5.0) {
        pass = false;
        detail += "runtime budget 5s exceeded";
    }
    report(1, "irreducible counts 18 / 186 / 48 via CLI, formula and exhaustion", pass, secs,
           detail);
}

// ---------------------------------------------------------------------------
// 2. bound spot checks

void criterion_2() {
    Timer timer;
    bool pass = true;
    for (std::int64_t g : {0, 1, 2})
        for (std::int64_t p : {13, 17, 19})
            pass = pass && m_bound(g, 1, p) == 4 * g + 12;
    pass = pass && m_bound(0, 7, 2) == 18;
    pass = pass && m_bound(0, 5, 3) == 22;
    report(2, "bound values M(g,1,p) = 4g+12, M(0,7,2) = 18, M(0,5,3) = 22", pass,
           timer.elapsed());
}

// ---------------------------------------------------------------------------
// 3 and 4. equivalence sweeps

void criterion_3() {
    Timer timer;
    CriterionConfig cfg = choose_config(0, 2, 1);
    SweepOptions opts;
    opts.max_num_deg = 2;
    opts.max_den_deg = 2;
    SweepSummary s = equivalence_sweep(cfg, opts);
    bool pass = s.disagreements == 0 && s.checked > 0 && cfg.d == 7 && cfg.m == 18;
    double secs = timer.elapsed();
    if (secs > 900.0) pass = false;
    report(3, "characteristic-2 sweep over F_2(t), degree <= 2, " + std::to_string(s.checked) +
                  " pairs, zero disagreements",
           pass, secs,
           s.disagreements ? std::to_string(s.disagreements) + " disagreements" : "");
}

void criterion_4() {
    Timer timer;
    CriterionConfig cfg = choose_config(0, 3, 1);
    bool pass = cfg.d == 5 && cfg.m == 22;
    std::string detail;

    // full mode: every pair with num/den degree <= 2
    SweepOptions full;
    full.max_num_deg = 2;
    full.max_den_deg = 2;
    SweepSummary s_full = equivalence_sweep(cfg, full);
    pass = pass && s_full.disagreements == 0 && s_full.checked > 0;

    // reduced mode: degree <= 1 exhaustively plus a 10^4 random degree-2 sample
    SweepOptions small;
    small.max_num_deg = 1;
    small.max_den_deg = 1;
    SweepSummary s_small = equivalence_sweep(cfg, small);
    SweepOptions sample;
    sample.max_num_deg = 2;
    sample.max_den_deg = 2;
    sample.sample_pairs = 10000;
    sample.sample_seed = 7;
    SweepSummary s_sample = equivalence_sweep(cfg, sample);
    pass = pass && s_small.disagreements == 0 && s_sample.disagreements == 0 &&
           s_sample.checked >= 10000;

    double secs = timer.elapsed();
    if (secs > 1800.0) pass = false;
    report(4,
           "characteristic-3 sweep over F_3(t): full degree <= 2 (" +
               std::to_string(s_full.checked) + " pairs) and reduced modes, zero disagreements",
           pass, secs, detail);
}

// ---------------------------------------------------------------------------
// 5. Artin-Schreier set laws, 10^4 cases per law

void criterion_5() {
    Timer timer;
    std::mt19937_64 rng(505);
    bool pass = true;
    std::string detail;
    const int trials = 10000;

    for (auto [p, k] : {std::pair<int, int>{2, 1}, {2, 2}}) {
        Field field = Field::create(p, k);
        auto random_ratfunc = [&](int deg) {
            while (true) {
                std::vector<std::uint64_t> nc, dc;
                int nd = static_cast<int>(rng() % (deg + 1));
                int dd = static_cast<int>(rng() % (deg + 1));
                for (int i = 0; i <= nd; ++i) nc.push_back(rng() % field.q());
                for (int i = 0; i <= dd; ++i) dc.push_back(rng() % field.q());
                Poly den = Poly::from_ints(field, dc);
                if (den.is_zero()) continue;
                return RatFunc(Poly::from_ints(field, nc), den);
            }
        };

        // (a) image membership with exact witness verification
        for (int i = 0; i < trials / 2 && pass; ++i) {
            RatFunc h = random_ratfunc(3);
            RatFunc c = h * h + h;
            auto r = artin_schreier_solve(c);
            if (!r.solvable() || !(*r.witness * *r.witness + *r.witness == c)) {
                pass = false;
                detail = "law (a) failed at h = " + h.to_string();
            }
        }
        // (b) closure under addition
        for (int i = 0; i < trials / 2 && pass; ++i) {
            RatFunc x = random_ratfunc(2), y = random_ratfunc(2);
            RatFunc cx = x * x + x, cy = y * y + y;
            if (!artin_schreier_solve(cx + cy).solvable()) {
                pass = false;
                detail = "law (b) failed";
            }
        }
        // (c) membership of x equals membership of x^2
        for (int i = 0; i < trials / 2 && pass; ++i) {
            RatFunc x = random_ratfunc(2);
            if (artin_schreier_solve(x).solvable() != artin_schreier_solve(x * x).solvable()) {
                pass = false;
                detail = "law (c) failed at x = " + x.to_string();
            }
        }
        // (d) valuations of members are nonnegative or even
        for (int i = 0; i < trials / 2 && pass; ++i) {
            RatFunc h = random_ratfunc(3);
            RatFunc c = h * h + h;
            if (c.is_zero()) continue;
            for (const auto& [pi, mult] : factorize(c.den()).factors) {
                auto v = *valuation(c, Place::finite(pi));
                if (v < 0 && v % 2 != 0) pass = false;
            }
            auto vinf = *valuation(c, Place::infinity(field));
            if (vinf < 0 && vinf % 2 != 0) pass = false;
            if (!pass) detail = "law (d) failed at h = " + h.to_string();
        }
    }

    double secs = timer.elapsed();
    if (secs > 60.0) pass = false;
    report(5, "Artin-Schreier set laws (a)-(d), 10^4 randomized cases each", pass, secs, detail);
}

// ---------------------------------------------------------------------------
// 6. solver versus exhaustive witness search

void criterion_6() {
    Timer timer;
    Field f2 = Field::create(2, 1);
    auto inputs = enumerate_ratfuncs(f2, 2, 2);
    auto witnesses = enumerate_ratfuncs(f2, 4, 4);
    bool pass = true;
    std::string detail;
    for (const auto& c : inputs) {
        bool brute = false;
        for (const auto& h : witnesses) {
            if (h * h + h == c) {
                brute = true;
                break;
            }
        }
        if (artin_schreier_solve(c).solvable() != brute) {
            pass = false;
            detail = "disagreement at c = " + c.to_string();
            break;
        }
    }
    double secs = timer.elapsed();
    if (secs > 600.0) pass = false;
    report(6, "solver verdict equals exhaustive degree <= 4 search on all " +
                  std::to_string(inputs.size()) + " inputs of degree <= 2",
           pass, secs, detail);
}

// ---------------------------------------------------------------------------
// 7. positive completeness of the orbit formula under evaluation

void criterion_7() {
    Timer timer;
    Field f2 = Field::create(2, 1);
    RingFormula pi = build_pi(0);
    RatFunc t = RatFunc::t(f2);
    SearchBounds bounds{2, 2};
    auto funcs = enumerate_ratfuncs(f2, 2, 2);

    std::uint64_t positives = 0, negatives = 0, violations = 0;
    std::string detail;
    for (const auto& f : funcs) {
        for (const auto& g : funcs) {
            if (f.is_constant() && g.is_constant()) continue;
            Interpretation interp = Interpretation::standard(f2);
            interp.assignment = {{"x", f}, {"y", g}, {"z", t}};
            bool oracle = frobenius_power_of(f, g).has_value();
            EvalResult r = eval_pe(pi, interp, bounds);
            if (oracle) {
                ++positives;
                if (r.verdict != Verdict::True) {
                    ++violations;
                    if (detail.empty())
                        detail = "expected True at (" + f.to_string() + ", " + g.to_string() + ")";
                }
            } else {
                ++negatives;
                if (r.verdict == Verdict::True) {
                    ++violations;
                    if (detail.empty())
                        detail = "claimed True at (" + f.to_string() + ", " + g.to_string() + ")";
                }
            }
        }
    }
    bool pass = violations == 0 && positives > 0 && negatives > 0;
    report(7, "orbit formula: True with verified witness on all " + std::to_string(positives) +
                  " positive pairs, never True on " + std::to_string(negatives) + " negatives",
           pass, timer.elapsed(), detail);
}

// ---------------------------------------------------------------------------
// 8. additive-arithmetic round trips

void criterion_8() {
    Timer timer;
    Field f2 = Field::create(2, 1);
    Field f3 = Field::create(3, 1);
    const std::vector<std::pair<std::uint32_t, std::string>> corpus = {
        {2, "E n . n + n = n"},
        {2, "E n . n = 0"},
        {2, "E n . n = 1"},
        {2, "E n . E m . n = m"},
        {2, "E n . E m . n + m = m + n"},
        {2, "E n . E m . E k . n + m = k"},
        {2, "E n . n + 1 = n + 1"},
        {2, "E n . E m . n = 1 & n + n = m"},
        {2, "E n . E m . n + n + n = m & m = 0"},
        {2, "E n . n divp n"},
        {2, "E n . E m . n = 1 & n divp m & m = 1 + 1 + 1 + 1"},
        {2, "E n . E m . n = 1 + 1 & n divp m & m = 1 + 1 + 1 + 1 + 1 + 1 + 1 + 1"},
        {2, "E n . E m . n divp m & n = 0 & m = 0"},
        {2, "E n . (n = 0 | n = 1) & n divp n"},
        {2, "E n . E m . (n = 1 & n divp m) | m + m = m"},
        {3, "E n . n + n = n"},
        {3, "E n . n = 1"},
        {3, "E n . E m . n = 1 & n divp m & m = 1 + 1 + 1"},
        {3, "E n . E m . n + m = m + n + 0"},
        {3, "E n . E m . n = 1 & m + n = n + m"},
        {3, "E n . E m . n divp m & m = 1 + 1 + 1 + 1 + 1 + 1 + 1 + 1 + 1 & n = 1"},
        {2, "E n . E m . E k . n = 1 & n divp m & m divp k & k = 1 + 1 + 1 + 1"},
    };

    std::uint64_t checked = 0, scaffold_mismatches = 0;
    bool pass = true;
    std::string detail;
    for (const auto& [p, text] : corpus) {
        PheidasFormula s = PheidasFormula::parse(p, text);
        Field field = p == 2 ? f2 : f3;
        RoundTripReport rep = pheidas_roundtrip(s, 0, 32, field);
        if (rep.nat_verdict != "true" || !rep.lifted_ok) {
            pass = false;
            if (detail.empty())
                detail = "round trip failed for: " + text + " (nat=" + rep.nat_verdict + ")";
            continue;
        }
        // structural counts: 2l + 1 scaffold variables, plus 2 per divp atom
        for (const auto& d : distribute_disjunctions(s)) {
            if (eval_nat(d, 32).verdict != NatVerdict::True) continue;
            UnnestedSentence u = unnest(d);
            TranslateResult tr = translate(u, 0);
            std::size_t expected_vars = 2 * u.vars.size() + 1;
            std::size_t divp_count = 0;
            for (const auto& atom : u.atoms)
                if (atom.shape == UnnestedSentence::Shape::divp) ++divp_count;
            std::set<std::string> bound;
            // count scaffold binders: the leading exists chain
            const RingFormula* cur = &tr.formula;
            std::size_t prefix = 0;
            while (cur->kind() == RingFormula::Kind::exists) {
                ++prefix;
                cur = &cur->body();
            }
            if (prefix != expected_vars || tr.divp_aux.size() != divp_count)
                ++scaffold_mismatches;
            break;
        }
        ++checked;
    }
    pass = pass && scaffold_mismatches == 0 && checked >= 20;
    report(8, "additive-arithmetic round trips on " + std::to_string(checked) +
                  " true sentences with exact lifted checks and matching scaffold counts",
           pass, timer.elapsed(), detail);
}

// ---------------------------------------------------------------------------
// 9. lowering equivalence under full bounded search

RingFormula random_small_formula(std::mt19937_64& rng) {
    const std::vector<std::string> names = {"v1", "v2", "v3"};
    auto term = [&rng, &names]() {
        RingTerm t = RingTerm::constant(static_cast<long>(rng() % 2));
        int pieces = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < pieces; ++i) {
            RingTerm factor = RingTerm::variable(names[rng() % names.size()]);
            if (rng() % 3 == 0) factor = factor * RingTerm::t();
            if (rng() % 4 == 0) factor = factor * RingTerm::variable(names[rng() % names.size()]);
            t += factor;
        }
        return t;
    };
    std::vector<RingFormula> atoms;
    int atom_count = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < atom_count; ++i) atoms.push_back(RingFormula::eq(term(), term()));
    RingFormula body =
        rng() % 2 ? RingFormula::conj({atoms[0], RingFormula::disj({atoms[1 % atoms.size()],
                                                                    atoms.back()})})
                  : RingFormula::disj({RingFormula::conj({atoms[0], atoms.back()}),
                                       atoms[1 % atoms.size()]});
    RingFormula out = body;
    for (const auto& name : names) out = RingFormula::exists(name, out);
    return out;
}

void criterion_9() {
    Timer timer;
    Field f2 = Field::create(2, 1);
    Interpretation base = Interpretation::standard(f2);
    auto values = enumerate_ratfuncs(f2, 1, 1);
    std::mt19937_64 rng(909);
    bool pass = true;
    std::string detail;

    for (int trial = 0; trial < 50 && pass; ++trial) {
        RingFormula f = random_small_formula(rng);
        PolySystem sys = to_system(f);
        RingTerm single = single_polynomial(f, 2);

        // route A: the formula itself under full bounded search
        std::function<bool(const RingFormula&, Interpretation&)> eval_formula =
            [&](const RingFormula& g, Interpretation& interp) -> bool {
            switch (g.kind()) {
                case RingFormula::Kind::eq:
                case RingFormula::Kind::opred:
                    return eval_qfree(g, interp);
                case RingFormula::Kind::conj: {
                    for (const auto& c : g.children())
                        if (!eval_formula(c, interp)) return false;
                    return true;
                }
                case RingFormula::Kind::disj: {
                    for (const auto& c : g.children())
                        if (eval_formula(c, interp)) return true;
                    return false;
                }
                case RingFormula::Kind::exists: {
                    for (const auto& v : values) {
                        interp.assignment.insert_or_assign(g.var(), v);
                        if (eval_formula(g.body(), interp)) return true;
                    }
                    interp.assignment.erase(g.var());
                    return false;
                }
            }
            return false;
        };
        Interpretation ia = base;
        bool truth_formula = eval_formula(f, ia);

        // routes B and C: all assignments to the prenex variables
        std::function<bool(const PolySystem::Node&, const Interpretation&)> eval_node =
            [&](const PolySystem::Node& node, const Interpretation& interp) -> bool {
            switch (node.kind) {
                case PolySystem::Node::Kind::equation:
                    return eval_term(node.equation, interp).is_zero();
                case PolySystem::Node::Kind::conj: {
                    for (const auto& c : node.children)
                        if (!eval_node(c, interp)) return false;
                    return true;
                }
                case PolySystem::Node::Kind::disj: {
                    for (const auto& c : node.children)
                        if (eval_node(c, interp)) return true;
                    return false;
                }
            }
            return false;
        };

        bool truth_system = false, truth_single = false;
        std::vector<std::size_t> idx(sys.vars.size(), 0);
        while (true) {
            Interpretation interp = base;
            for (std::size_t i = 0; i < sys.vars.size(); ++i)
                interp.assignment.insert_or_assign(sys.vars[i], values[idx[i]]);
            if (eval_node(sys.root, interp)) truth_system = true;
            if (eval_term(single, interp).is_zero()) truth_single = true;
            if (truth_system && truth_single && truth_formula) break;
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == values.size()) idx[pos++] = 0;
            if (pos == idx.size() || idx.empty()) break;
        }

        if (truth_formula != truth_system || truth_system != truth_single) {
            pass = false;
            detail = "disagreement (formula=" + std::to_string(truth_formula) +
                     ", system=" + std::to_string(truth_system) +
                     ", single=" + std::to_string(truth_single) + ") on " + f.to_text();
        }
    }
    report(9, "lowering equivalence on 50 random formulas under degree <= 1 search", pass,
           timer.elapsed(), detail);
}

// ---------------------------------------------------------------------------
// extra: the constant-field F_4 equivalence sweep from the module invariants
// (same protocol as criteria 3 and 4, beyond the numbered gate)

void extra_f4_sweep() {
    Timer timer;
    CriterionConfig cfg = choose_config(0, 2, 2);
    SweepOptions opts;
    opts.max_num_deg = 2;
    opts.max_den_deg = 2;
    opts.workers = 2;
    SweepSummary s = equivalence_sweep(cfg, opts);
    bool pass = s.disagreements == 0 && s.checked > 0;
    std::printf("%s extra: constant-field F_4 sweep, degree <= 2, %llu pairs, zero "
                "disagreements (%.1fs)\n",
                pass ? "PASS" : "FAIL", static_cast<unsigned long long>(s.checked),
                timer.elapsed());
    std::fflush(stdout);
    if (!pass) ++failures;
}

}  // namespace

int main() {
    std::printf("acceptance suite: exact-arithmetic orbit, solver, formula and translation "
                "checks\n");
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    extra_f4_sweep();
    std::printf("%s: %d criterion(s) failed (total %.1fs)\n", failures == 0 ? "OK" : "FAILURES",
                failures, total.elapsed());
    return failures == 0 ? 0 : 1;
}
