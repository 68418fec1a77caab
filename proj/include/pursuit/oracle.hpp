#pragma once

#include "pursuit/game.hpp"
#include "pursuit/solver.hpp"

namespace pursuit {

class OracleGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    /// The oracle is meant for n <= 8, k <= 2; set this to run it anyway.
    bool overrideCostGuard = false;
};

/// Independent reference solver: memoized minimax over (configuration, turn)
/// with the explicit round horizon n * C(n+k-1, k) + 1. A branch that cannot
/// capture within the horizon is a robber win (no optimally played cop-win
/// game revisits a configuration, so the horizon is exact). Shares nothing
/// with solve() beyond the graph and move-enumeration layers.
SolveResult oracleSolve(const GameSpec& spec, const OracleOptions& options = {});

}  // namespace pursuit
