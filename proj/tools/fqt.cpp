// Command-line front end: exact arithmetic in F_q(t), orbit-criterion
// experiments, formula builders and lowering, and the additive-arithmetic
// translation pipeline.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqt/builders.hpp"
#include "fqt/eval.hpp"
#include "fqt/lower.hpp"
#include "fqt/pheidas.hpp"
#include "fqt/sweep.hpp"

using namespace fqt;
using nlohmann::json;

namespace {

std::string resolve_out_path(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("FQT_OUTPUT_DIR");
    if (dir && *dir) return std::string(dir) + "/" + path;
    return path;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content << "\n";
        return;
    }
    std::string path = resolve_out_path(out_path);
    std::ofstream f(path);
    if (!f) throw Error("cannot open output file: " + path);
    f << content << "\n";
}

json poly_to_json(const Poly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(c.to_int());
    return coeffs;
}

json field_to_json(const Field& f) {
    json out;
    out["descriptor"] = f.descriptor();
    out["p"] = f.p();
    out["k"] = f.k();
    out["modulus"] = f.modulus();
    return out;
}

// range syntax: "5", "1..9", "2,3,5"
std::vector<std::int64_t> parse_range(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        auto dots = piece.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoll(piece));
        } else {
            std::int64_t lo = std::stoll(piece.substr(0, dots));
            std::int64_t hi = std::stoll(piece.substr(dots + 2));
            for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    if (out.empty()) throw Error("empty range: " + text);
    return out;
}

RingFormula load_formula(const std::string& inline_text, const std::string& in_file) {
    std::string text = inline_text;
    if (!in_file.empty()) {
        std::ifstream f(in_file);
        if (!f) throw Error("cannot open input file: " + in_file);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    if (text.empty()) throw Error("no formula given (use --formula or --in)");
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return RingFormula::from_json_string(text);
    return RingFormula::parse(text);
}

struct SweepArgs {
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    std::int64_t genus = 0;
    std::int64_t d = 0;
    int max_num_deg = 2;
    int max_den_deg = 2;
    unsigned workers = 1;
    std::uint64_t seed = 0;
    std::uint64_t sample = 0;
    std::uint64_t sample_seed = 0;
    std::string out_path;
    bool resume = false;
};

std::string sweep_config_key(const SweepArgs& a) {
    std::ostringstream key;
    key << a.p << "^" << a.k << ":g" << a.genus << ":d" << a.d << ":n" << a.max_num_deg << ":m"
        << a.max_den_deg << ":s" << a.seed << ":x" << a.sample << ":y" << a.sample_seed;
    return key.str();
}

int run_sweep(const SweepArgs& args) {
    CriterionConfig cfg = args.d > 0 ? make_config(args.genus, args.p, args.k, args.d)
                                     : choose_config(args.genus, args.p, args.k);

    SweepOptions opts;
    opts.max_num_deg = args.max_num_deg;
    opts.max_den_deg = args.max_den_deg;
    opts.workers = args.workers;
    opts.seed = args.seed;
    opts.sample_pairs = args.sample;
    opts.sample_seed = args.sample_seed;

    const std::string key = sweep_config_key(args);
    std::string out_path = resolve_out_path(args.out_path);
    std::string ckpt_path = out_path.empty() ? "" : out_path + ".ckpt";
    bool fresh = true;
    std::uint64_t rows_done = 0;
    if (args.resume && !ckpt_path.empty()) {
        std::ifstream ck(ckpt_path);
        if (ck) {
            json j = json::parse(ck, nullptr, false);
            if (!j.is_discarded() && j.value("key", "") == key) {
                opts.start_index = j.value("next_index", std::uint64_t{0});
                rows_done = j.value("rows_written", std::uint64_t{0});
                fresh = false;
            }
        }
    }

    std::ofstream file;
    std::ostream* rows_out = &std::cout;
    if (!out_path.empty()) {
        if (!fresh) {
            // drop rows past the checkpoint so an interrupted run cannot
            // leave duplicates behind
            std::ifstream existing(out_path);
            std::vector<std::string> keep;
            std::string line;
            while (std::getline(existing, line) && keep.size() <= rows_done) keep.push_back(line);
            existing.close();
            std::ofstream rewrite(out_path, std::ios::trunc);
            for (std::size_t i = 0; i < keep.size() && i <= rows_done; ++i)
                rewrite << keep[i] << "\n";
        }
        file.open(out_path, fresh ? std::ios::trunc : std::ios::app);
        if (!file) throw Error("cannot open output file: " + out_path);
        rows_out = &file;
    }
    if (fresh) *rows_out << "f,g,criterion,oracle,agree\n";

    std::uint64_t rows_since_ckpt = 0;
    opts.on_row = [&](const SweepRow& row) {
        *rows_out << row.f << "," << row.g << "," << (row.criterion ? 1 : 0) << ","
                  << (row.oracle ? 1 : 0) << "," << (row.agree ? 1 : 0) << "\n";
        ++rows_done;
        if (!ckpt_path.empty() && ++rows_since_ckpt >= 2000) {
            rows_since_ckpt = 0;
            rows_out->flush();
            std::ofstream ck(ckpt_path, std::ios::trunc);
            ck << json{{"key", key}, {"next_index", row.index + 1}, {"rows_written", rows_done}}
                      .dump()
               << "\n";
        }
    };

    SweepSummary summary = equivalence_sweep(cfg, opts);
    rows_out->flush();
    if (!ckpt_path.empty()) std::remove(ckpt_path.c_str());

    json report;
    report["field"] = cfg.ext_field().descriptor();
    report["genus"] = cfg.genus;
    report["d"] = cfg.d;
    report["m"] = cfg.m;
    report["max_num_deg"] = opts.max_num_deg;
    report["max_den_deg"] = opts.max_den_deg;
    report["pairs_checked"] = summary.checked;
    report["disagreements"] = summary.disagreements;
    std::ostream& report_out = out_path.empty() ? std::cerr : std::cout;
    report_out << report.dump(2) << "\n";
    return summary.disagreements == 0 ? 0 : 1;
}

json orbit_answer_to_json(const OrbitAnswer& ans) {
    json out;
    out["in_orbit"] = ans.in_orbit;
    if (ans.direction) {
        out["direction"] = *ans.direction == OrbitAnswer::Direction::f_power_of_g
                               ? "f = g^(p^s)"
                               : "g = f^(p^s)";
        out["s"] = *ans.s;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation in rational function fields of positive characteristic"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "output format: text or json")->capture_default_str();

    // ---- irr-polys ------------------------------------------------------
    auto* irr = app.add_subcommand("irr-polys", "count and enumerate monic irreducibles");
    std::uint32_t irr_d = 1, irr_p = 2, irr_k = 1;
    std::uint64_t irr_m = 0;
    bool irr_list = false;
    irr->add_option("--d", irr_d, "degree")->required();
    irr->add_option("--p", irr_p, "characteristic")->required();
    irr->add_option("--k", irr_k, "extension degree of the coefficient field");
    irr->add_option("--m", irr_m, "how many to enumerate (0 = count only)");
    irr->add_flag("--list", irr_list, "print the enumerated polynomials");

    // ---- m-bound --------------------------------------------------------
    auto* mb = app.add_subcommand("m-bound", "table of the test-polynomial count bound");
    std::string mb_genus = "0", mb_d = "1", mb_p = "2";
    mb->add_option("--genus", mb_genus, "genus bound (value, a..b, or comma list)");
    mb->add_option("--d", mb_d, "test degree (range syntax)");
    mb->add_option("--p", mb_p, "characteristic (range syntax)");

    // ---- config ---------------------------------------------------------
    auto* cfg_cmd = app.add_subcommand("config", "select the test degree and polynomials");
    std::int64_t cfg_genus = 0, cfg_d = 0;
    std::uint32_t cfg_p = 2, cfg_k = 1;
    cfg_cmd->add_option("--genus", cfg_genus, "genus bound");
    cfg_cmd->add_option("--p", cfg_p, "characteristic")->required();
    cfg_cmd->add_option("--k", cfg_k, "constant-field extension degree");
    cfg_cmd->add_option("--d", cfg_d, "force this test degree");

    // ---- as-solve -------------------------------------------------------
    auto* as = app.add_subcommand("as-solve", "decide h^2 + h = c over F_{2^k}(t)");
    std::uint32_t as_p = 2, as_k = 1;
    std::uint64_t as_seed = 0;
    std::string as_input;
    as->add_option("--p", as_p, "characteristic (must be 2)");
    as->add_option("--k", as_k, "constant-field extension degree");
    as->add_option("--seed", as_seed, "factorization seed");
    as->add_option("c", as_input, "rational function in t")->required();

    // ---- square ---------------------------------------------------------
    auto* sq = app.add_subcommand("square", "decide squareness in F_q(t)");
    std::uint32_t sq_p = 2, sq_k = 1;
    std::uint64_t sq_seed = 0;
    std::string sq_input;
    sq->add_option("--p", sq_p, "characteristic")->required();
    sq->add_option("--k", sq_k, "constant-field extension degree");
    sq->add_option("--seed", sq_seed, "factorization seed");
    sq->add_option("f", sq_input, "rational function in t")->required();

    // ---- orbit-check ----------------------------------------------------
    auto* oc = app.add_subcommand("orbit-check", "orbit criterion against the direct oracle");
    std::uint32_t oc_p = 2, oc_k = 1;
    std::int64_t oc_genus = 0, oc_d = 0;
    std::string oc_f, oc_g;
    oc->add_option("--p", oc_p, "characteristic")->required();
    oc->add_option("--k", oc_k, "constant-field extension degree");
    oc->add_option("--genus", oc_genus, "genus bound");
    oc->add_option("--d", oc_d, "force this test degree");
    oc->add_option("--f", oc_f, "first rational function")->required();
    oc->add_option("--g", oc_g, "second rational function")->required();

    // ---- sweep ----------------------------------------------------------
    auto* sw = app.add_subcommand("sweep", "full criterion/oracle equivalence sweep (CSV)");
    SweepArgs sweep_args;
    int sw_maxdeg = -1;
    sw->add_option("--p", sweep_args.p, "characteristic")->required();
    sw->add_option("--k", sweep_args.k, "constant-field extension degree");
    sw->add_option("--genus", sweep_args.genus, "genus bound");
    sw->add_option("--d", sweep_args.d, "force this test degree");
    sw->add_option("--max-deg", sw_maxdeg, "bound for both numerator and denominator degrees");
    sw->add_option("--max-num-deg", sweep_args.max_num_deg, "numerator degree bound");
    sw->add_option("--max-den-deg", sweep_args.max_den_deg, "denominator degree bound");
    sw->add_option("--workers", sweep_args.workers, "worker thread count");
    sw->add_option("--seed", sweep_args.seed, "factorization seed");
    sw->add_option("--sample", sweep_args.sample, "check a random pair sample of this size");
    sw->add_option("--sample-seed", sweep_args.sample_seed, "sample selection seed");
    sw->add_option("--out", sweep_args.out_path, "CSV output path (checkpointed)");
    sw->add_flag("--resume", sweep_args.resume, "resume from the checkpoint if compatible");

    // ---- build-formula --------------------------------------------------
    auto* bf = app.add_subcommand("build-formula", "construct phi, pi or the root wrapper");
    std::string bf_which;
    std::int64_t bf_genus = 0;
    std::uint32_t bf_p = 2, bf_m = 0;
    std::string bf_out;
    bf->add_option("kind", bf_which, "phi | pi | pi-root")->required();
    bf->add_option("--genus", bf_genus, "genus bound");
    bf->add_option("--p", bf_p, "characteristic (pi-root only)");
    bf->add_option("--m", bf_m, "root exponent (pi-root only)");
    bf->add_option("--out", bf_out, "write to file instead of stdout");

    // ---- lower ----------------------------------------------------------
    auto* lw = app.add_subcommand("lower", "prenex system or single-polynomial lowering");
    std::string lw_which, lw_formula, lw_in, lw_out;
    std::uint32_t lw_p = 2;
    lw->add_option("kind", lw_which, "system | single")->required();
    lw->add_option("--p", lw_p, "target characteristic");
    lw->add_option("--formula", lw_formula, "formula text or JSON");
    lw->add_option("--in", lw_in, "read the formula from a file");
    lw->add_option("--out", lw_out, "write to file instead of stdout");

    // ---- pheidas --------------------------------------------------------
    auto* ph = app.add_subcommand("pheidas", "additive-arithmetic pipeline");
    std::string ph_which, ph_sentence;
    std::uint32_t ph_p = 2, ph_k = 1;
    std::uint64_t ph_bound = 32;
    std::int64_t ph_genus = 0;
    ph->add_option("kind", ph_which, "parse | eval | translate | roundtrip")->required();
    ph->add_option("--p", ph_p, "the divisibility prime")->required();
    ph->add_option("--k", ph_k, "constant-field extension degree for lifting");
    ph->add_option("--bound", ph_bound, "search bound for natural witnesses");
    ph->add_option("--genus", ph_genus, "genus bound used by the orbit subformula");
    ph->add_option("sentence", ph_sentence, "sentence text")->required();

    // ---- eval -----------------------------------------------------------
    auto* ev = app.add_subcommand("eval", "evaluate a ring formula over F_q(t)");
    std::uint32_t ev_p = 2, ev_k = 1;
    std::string ev_formula, ev_in, ev_t_image, ev_o_place;
    std::vector<std::string> ev_assign;
    SearchBounds ev_bounds;
    ev->add_option("--p", ev_p, "characteristic")->required();
    ev->add_option("--k", ev_k, "constant-field extension degree");
    ev->add_option("--formula", ev_formula, "formula text or JSON");
    ev->add_option("--in", ev_in, "read the formula from a file");
    ev->add_option("--assign", ev_assign, "variable assignment var=ratfunc (repeatable)");
    ev->add_option("--t-image", ev_t_image, "interpretation of t (default t)");
    ev->add_option("--o-place", ev_o_place, "place for O: a monic irreducible in t, or inf");
    ev->add_option("--max-num-deg", ev_bounds.max_num_deg, "witness numerator degree bound");
    ev->add_option("--max-den-deg", ev_bounds.max_den_deg, "witness denominator degree bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << json{{"error", "usage-error"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        const bool as_json = format == "json";

        if (irr->parsed()) {
            Field field = Field::create(irr_p, irr_k);
            std::uint64_t count = count_irreducibles(irr_d, field.q());
            std::uint64_t m = irr_m > 0 ? irr_m : (irr_list ? count : 0);
            std::vector<Poly> polys;
            if (m > 0) polys = enumerate_irreducibles(field, irr_d, m);
            if (as_json) {
                json out;
                out["d"] = irr_d;
                out["q"] = field.q();
                out["field"] = field.descriptor();
                out["count"] = count;
                json list = json::array();
                for (const auto& p : polys) list.push_back(poly_to_json(p));
                out["polys"] = list;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << count << " monic irreducible polynomials of degree " << irr_d
                          << " over F_" << field.descriptor() << "\n";
                for (const auto& p : polys) std::cout << p.to_string() << "\n";
            }
            return 0;
        }

        if (mb->parsed()) {
            json rows = json::array();
            for (std::int64_t g : parse_range(mb_genus))
                for (std::int64_t d : parse_range(mb_d))
                    for (std::int64_t p : parse_range(mb_p))
                        rows.push_back(json{{"genus", g}, {"d", d}, {"p", p},
                                            {"m", m_bound(g, d, p)}});
            if (as_json) {
                std::cout << json{{"rows", rows}}.dump(2) << "\n";
            } else if (rows.size() == 1) {
                std::cout << rows[0]["m"].get<std::int64_t>() << "\n";
            } else {
                std::cout << "genus\td\tp\tm\n";
                for (const auto& r : rows)
                    std::cout << r["genus"] << "\t" << r["d"] << "\t" << r["p"] << "\t" << r["m"]
                              << "\n";
            }
            return 0;
        }

        if (cfg_cmd->parsed()) {
            CriterionConfig cfg = cfg_d > 0 ? make_config(cfg_genus, cfg_p, cfg_k, cfg_d)
                                            : choose_config(cfg_genus, cfg_p, cfg_k);
            json out;
            out["genus"] = cfg.genus;
            out["p"] = cfg.p;
            out["k"] = cfg.k;
            out["d"] = cfg.d;
            out["m"] = cfg.m;
            out["base_field"] = field_to_json(cfg.base_field());
            out["ext_field"] = field_to_json(cfg.ext_field());
            json polys = json::array();
            for (const auto& p : cfg.polys) polys.push_back(poly_to_json(p));
            out["polys"] = polys;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (as->parsed()) {
            if (as_p != 2) throw WrongCharacteristicError("as-solve requires --p 2");
            Field field = Field::create(2, as_k);
            RatFunc c = parse_ratfunc(field, as_input);
            ArtinSchreierResult r = artin_schreier_solve(c, as_seed);
            if (as_json) {
                json out;
                out["field"] = field.descriptor();
                out["c"] = c.to_string();
                out["solvable"] = r.solvable();
                if (r.solvable()) out["witness"] = r.witness->to_string();
                else out["obstruction"] = r.describe();
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << r.describe() << "\n";
            }
            return 0;
        }

        if (sq->parsed()) {
            Field field = Field::create(sq_p, sq_k);
            RatFunc f = parse_ratfunc(field, sq_input);
            SquareResult r = ratfunc_is_square(f, sq_seed);
            if (as_json) {
                json out;
                out["field"] = field.descriptor();
                out["f"] = f.to_string();
                out["is_square"] = r.is_square;
                if (r.root) out["root"] = r.root->to_string();
                std::cout << out.dump(2) << "\n";
            } else if (r.is_square) {
                std::cout << "square, root " << r.root->to_string() << "\n";
            } else {
                std::cout << "not a square\n";
            }
            return 0;
        }

        if (oc->parsed()) {
            CriterionConfig cfg = oc_d > 0 ? make_config(oc_genus, oc_p, oc_k, oc_d)
                                           : choose_config(oc_genus, oc_p, oc_k);
            Field field = cfg.ext_field();
            RatFunc f = parse_ratfunc(field, oc_f);
            RatFunc g = parse_ratfunc(field, oc_g);
            bool criterion = orbit_criterion(f, g, cfg);
            OrbitAnswer oracle = direct_orbit(f, g);
            json out;
            out["field"] = field.descriptor();
            out["f"] = f.to_string();
            out["g"] = g.to_string();
            out["criterion"] = criterion;
            out["oracle"] = orbit_answer_to_json(oracle);
            out["agree"] = criterion == oracle.in_orbit;
            if (as_json) {
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "criterion: " << (criterion ? "true" : "false")
                          << ", oracle: " << (oracle.in_orbit ? "true" : "false")
                          << (criterion == oracle.in_orbit ? ", agree" : ", DISAGREE") << "\n";
            }
            return 0;
        }

        if (sw->parsed()) {
            if (sw_maxdeg >= 0) {
                sweep_args.max_num_deg = sw_maxdeg;
                sweep_args.max_den_deg = sw_maxdeg;
            }
            return run_sweep(sweep_args);
        }

        if (bf->parsed()) {
            RingFormula f = RingFormula::eq(RingTerm(), RingTerm());
            if (bf_which == "phi") f = build_phi(bf_genus).formula;
            else if (bf_which == "pi") f = build_pi(bf_genus);
            else if (bf_which == "pi-root") f = build_pi_root(bf_genus, bf_p, bf_m);
            else throw Error("unknown formula kind: " + bf_which);
            write_output(bf_out, as_json ? f.to_json_string() : f.to_text());
            return 0;
        }

        if (lw->parsed()) {
            RingFormula f = load_formula(lw_formula, lw_in);
            if (lw_which == "system") {
                write_output(lw_out, to_system(f).to_json_string());
            } else if (lw_which == "single") {
                RingTerm p = single_polynomial(f, lw_p);
                if (as_json) {
                    PolySystem sys = to_system(f);
                    write_output(lw_out, json{{"vars", sys.vars}, {"p", lw_p},
                                              {"poly", p.to_string()}}
                                             .dump(2));
                } else {
                    write_output(lw_out, p.to_string());
                }
            } else {
                throw Error("unknown lowering kind: " + lw_which);
            }
            return 0;
        }

        if (ph->parsed()) {
            PheidasFormula s = PheidasFormula::parse(ph_p, ph_sentence);
            if (ph_which == "parse") {
                if (as_json)
                    std::cout << json{{"p", ph_p}, {"text", s.to_text()}}.dump(2) << "\n";
                else
                    std::cout << s.to_text() << "\n";
                return 0;
            }
            if (ph_which == "eval") {
                NatResult r = eval_nat(s, ph_bound);
                json out;
                out["verdict"] = r.verdict == NatVerdict::True ? "true" : "unknown";
                json w = json::object();
                for (const auto& [k, v] : r.witness) w[k] = v;
                out["witness"] = w;
                out["bound"] = ph_bound;
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            if (ph_which == "translate") {
                std::vector<RingFormula> parts;
                std::size_t scaffold_vars = 0, divp_atoms = 0;
                for (const auto& d : distribute_disjunctions(s)) {
                    TranslateResult tr = translate(unnest(d), ph_genus);
                    scaffold_vars += tr.scaffold_var_count();
                    divp_atoms += tr.divp_aux.size();
                    parts.push_back(tr.formula);
                }
                RingFormula joined = RingFormula::disj(std::move(parts));
                if (as_json) {
                    std::cout << json{{"formula", json::parse(joined.to_json_string())},
                                      {"scaffold_vars", scaffold_vars},
                                      {"divp_atoms", divp_atoms}}
                                     .dump()
                              << "\n";
                } else {
                    std::cout << joined.to_text() << "\n";
                }
                return 0;
            }
            if (ph_which == "roundtrip") {
                Field field = Field::create(ph_p, ph_k);
                RoundTripReport report = pheidas_roundtrip(s, ph_genus, ph_bound, field);
                std::cout << report.to_json_string() << "\n";
                return report.nat_verdict == "true" && !report.lifted_ok ? 1 : 0;
            }
            throw Error("unknown pheidas action: " + ph_which);
        }

        if (ev->parsed()) {
            Field field = Field::create(ev_p, ev_k);
            RingFormula f = load_formula(ev_formula, ev_in);
            Interpretation interp = Interpretation::standard(field);
            if (!ev_t_image.empty()) interp.t_image = parse_ratfunc(field, ev_t_image);
            if (!ev_o_place.empty()) {
                interp.o_place = ev_o_place == "inf"
                                     ? Place::infinity(field)
                                     : Place::finite(parse_poly(field, ev_o_place));
            }
            for (const auto& item : ev_assign) {
                auto eq = item.find('=');
                if (eq == std::string::npos) throw Error("--assign expects var=value: " + item);
                interp.assignment.insert_or_assign(item.substr(0, eq),
                                                   parse_ratfunc(field, item.substr(eq + 1)));
            }
            EvalResult result = eval_pe(f, interp, ev_bounds);
            std::cout << eval_transcript(f, interp, ev_bounds, result) << "\n";
            return 0;
        }
    } catch (const SyntaxError& e) {
        std::cerr << json{{"error", "syntax-error"},
                          {"message", e.what()},
                          {"position", e.position()},
                          {"expected", e.expected()}}
                         .dump()
                  << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << json{{"error", "domain-error"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
