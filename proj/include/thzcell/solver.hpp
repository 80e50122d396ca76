#pragma once

#include <cstdint>
#include <vector>

#include "thzcell/association.hpp"

namespace thzcell {

// Outcome of one metaheuristic run.
struct SolverResult {
    AssociationSolution best;
    PositionVector best_position;
    // trace[g] is the best utility seen up to and including generation g;
    // trace[0] is the initial population. Length g_max + 1.
    std::vector<double> trace;
    std::uint64_t evaluations = 0;
};

}  // namespace thzcell
