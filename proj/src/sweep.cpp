#include "fqt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <thread>

namespace fqt {

namespace {

// one test polynomial evaluated at one sweep function, denominator-cleared
// and pre-factored
struct CachedEval {
    bool zero = false;
    Poly num;            // numerator of F_j(f)
    Poly den;            // denominator of F_j(f) (monic)
    Factorization num_fact;
    Factorization den_fact;

    CachedEval() : num(Field()), den(Field()), num_fact{FieldElem(), {}}, den_fact{FieldElem(), {}} {}
};

Factorization merge_factorizations(const Factorization& a, const Factorization& b) {
    Factorization out{a.lead * b.lead, a.factors};
    for (const auto& [pi, m] : b.factors) {
        bool merged = false;
        for (auto& [qi, qm] : out.factors) {
            if (qi == pi) {
                qm += m;
                merged = true;
                break;
            }
        }
        if (!merged) out.factors.emplace_back(pi, m);
    }
    return out;
}

// characteristic-2 pair condition from cached evaluations
bool char2_condition_cached(const CachedEval& a, const CachedEval& b) {
    if (a.zero && b.zero) return true;
    if (a.zero || b.zero) return false;
    // 1/A + 1/B = (dA nB + dB nA) / (nA nB)
    Poly num = a.den * b.num + b.den * a.num;
    Factorization den = merge_factorizations(a.num_fact, b.num_fact);
    return artin_schreier_solve_factored(num, den).solvable();
}

// odd-characteristic pair condition: A*B a square, read off merged valuations
bool odd_condition_cached(const CachedEval& a, const CachedEval& b) {
    if (a.zero || b.zero) return true;  // A*B = 0 = 0^2
    std::map<std::string, std::int64_t> parity;
    auto add = [&parity](const Factorization& f, std::int64_t sign) {
        for (const auto& [pi, m] : f.factors) parity[pi.to_string("X")] += sign * m;
    };
    add(a.num_fact, 1);
    add(b.num_fact, 1);
    add(a.den_fact, -1);
    add(b.den_fact, -1);
    for (const auto& [_, v] : parity)
        if (v % 2 != 0) return false;
    FieldElem unit = (a.num_fact.lead * b.num_fact.lead) / (a.den_fact.lead * b.den_fact.lead);
    return is_square(unit);
}

}  // namespace

SweepSummary equivalence_sweep(const CriterionConfig& cfg, const SweepOptions& options) {
    Field field = cfg.ext_field();
    std::vector<RatFunc> funcs = enumerate_ratfuncs(field, options.max_num_deg, options.max_den_deg);
    const std::uint64_t n = funcs.size();

    // evaluate and factor each F_j at each function once
    const std::size_t jm = cfg.polys.size();
    std::vector<std::vector<CachedEval>> cache(n, std::vector<CachedEval>(jm));
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < jm; ++j) {
            RatFunc v = eval_poly_at(cfg.polys[j], funcs[i]);
            CachedEval& ce = cache[i][j];
            if (v.is_zero()) {
                ce.zero = true;
                continue;
            }
            ce.num = v.num();
            ce.den = v.den();
            ce.num_fact = factorize(ce.num, options.seed);
            if (cfg.p != 2) ce.den_fact = factorize(ce.den, options.seed);
        }
    }

    // flat pair ids: index = i1 * n + i2; both-constant pairs are skipped but
    // keep their ids so resume points stay stable
    std::vector<std::uint64_t> ids;
    if (options.sample_pairs == 0) {
        ids.reserve(n * n);
        for (std::uint64_t id = 0; id < n * n; ++id) ids.push_back(id);
    } else {
        std::mt19937_64 rng(options.sample_seed);
        std::set<std::uint64_t> chosen;
        std::uint64_t constants = 0;
        for (const auto& f : funcs)
            if (f.is_constant()) ++constants;
        const std::uint64_t want =
            std::min<std::uint64_t>(options.sample_pairs, n * n - constants * constants);
        while (chosen.size() < want) {
            std::uint64_t id = rng() % (n * n);
            if (funcs[id / n].is_constant() && funcs[id % n].is_constant()) continue;
            chosen.insert(id);
        }
        ids.assign(chosen.begin(), chosen.end());
    }

    SweepSummary summary;
    for (std::uint64_t id : ids)
        if (!(funcs[id / n].is_constant() && funcs[id % n].is_constant())) ++summary.total_pairs;

    auto run_pair = [&](std::uint64_t id) -> std::optional<SweepRow> {
        const RatFunc& f = funcs[id / n];
        const RatFunc& g = funcs[id % n];
        if (f.is_constant() && g.is_constant()) return std::nullopt;
        const auto& ca = cache[id / n];
        const auto& cb = cache[id % n];
        bool criterion = true;
        for (std::size_t j = 0; j < jm; ++j) {
            bool holds = cfg.p == 2 ? char2_condition_cached(ca[j], cb[j])
                                    : odd_condition_cached(ca[j], cb[j]);
            if (!holds) {
                criterion = false;
                break;
            }
        }
        bool oracle = direct_orbit(f, g).in_orbit;
        return SweepRow{id, f.to_string(), g.to_string(), criterion, oracle, criterion == oracle};
    };

    // chunked execution: workers fill a block in parallel, rows are emitted
    // in index order afterwards
    const unsigned workers = std::max(1u, options.workers);
    const std::size_t chunk = 4096;
    std::size_t begin = 0;
    while (begin < ids.size() && ids[begin] < options.start_index) ++begin;

    while (begin < ids.size()) {
        std::size_t end = std::min(begin + chunk, ids.size());
        std::vector<std::optional<SweepRow>> rows(end - begin);
        if (workers == 1) {
            for (std::size_t i = begin; i < end; ++i) rows[i - begin] = run_pair(ids[i]);
        } else {
            std::vector<std::thread> pool;
            std::atomic<std::size_t> next{begin};
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&]() {
                    while (true) {
                        std::size_t i = next.fetch_add(1);
                        if (i >= end) return;
                        rows[i - begin] = run_pair(ids[i]);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }
        for (auto& row : rows) {
            if (!row) continue;
            ++summary.checked;
            if (!row->agree) ++summary.disagreements;
            if (options.on_row) options.on_row(*row);
        }
        begin = end;
    }
    return summary;
}

}  // namespace fqt
