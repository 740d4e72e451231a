#pragma once

#include "bell/realization.hpp"

#include <cstdint>

namespace bell {

struct SeesawOptions {
    int restarts = 50;
    std::uint64_t seed = 1;
    int max_iterations = 5000;
    double stagnation = 1e-13;  // relative per-step improvement floor
};

struct SeesawResult {
    double value = 0;
    Realization realization;
    int best_restart = 0;
    std::vector<double> restart_values;
    int iterations = 0;  // of the best restart
};

/// Alternating maximization of a bipartite Bell expression over projective
/// rank-one measurements and the shared pure state. Each step solves its
/// subproblem exactly, so the value is nondecreasing. Reports the best of
/// `restarts` seeded starts (ties broken by lowest restart index); not a
/// certificate of the global maximum.
SeesawResult seesaw_maximize(const BellExpression&, int dim_a, int dim_b,
                             const SeesawOptions& = {});

/// Move a bipartite realization to the Schmidt basis of its state, with
/// column phases fixed, so recovered fixtures are reproducible.
Realization canonicalize(const Realization&);

}  // namespace bell
