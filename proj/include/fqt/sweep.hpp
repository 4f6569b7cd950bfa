#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fqt/orbit.hpp"

namespace fqt {

struct SweepRow {
    std::uint64_t index;  // flat pair index, stable across runs and workers
    std::string f;
    std::string g;
    bool criterion;
    bool oracle;
    bool agree;
};

struct SweepOptions {
    int max_num_deg = 2;
    int max_den_deg = 2;
    unsigned workers = 1;
    std::uint64_t seed = 0;          // equal-degree splitting seed
    std::uint64_t start_index = 0;   // resume point (flat pair index)
    std::uint64_t sample_pairs = 0;  // 0 = all pairs, else a random sample
    std::uint64_t sample_seed = 0;
    std::function<void(const SweepRow&)> on_row;  // called in index order
};

struct SweepSummary {
    std::uint64_t total_pairs = 0;   // pairs in scope (before start_index cut)
    std::uint64_t checked = 0;
    std::uint64_t disagreements = 0;
};

/// Runs orbit_criterion against direct_orbit over every ordered pair (f, g)
/// of reduced rational functions within the degree bounds, skipping pairs of
/// two constants. Per-function evaluations of the test polynomials are
/// factored once and shared across pairs. Row order is deterministic and
/// independent of the worker count.
SweepSummary equivalence_sweep(const CriterionConfig& cfg, const SweepOptions& options);

}  // namespace fqt
