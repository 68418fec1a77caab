#pragma once

#include "pursuit/constructions.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/solver.hpp"

#include "json.hpp"

#include <iosfwd>

namespace pursuit {

/// Machine-readable outcome of one verification check, reproducible
/// bit-for-bit for fixed inputs.
struct Report {
    std::string check;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json observed = nlohmann::json::object();
    nlohmann::json expected = nlohmann::json::object();
    enum class Verdict : std::uint8_t { Pass, Fail, Informational } verdict = Verdict::Informational;
    double seconds = 0.0;

    nlohmann::json toJson() const;
    /// Informational reports never gate an exit code.
    bool gatePassed() const { return verdict != Verdict::Fail; }
};

/// Capture time never exceeds n * C(n+k-1, k) and the layer count never
/// exceeds the state count (vacuous for robber wins).
Report checkUpperBound(const SolveResult& result, std::uint32_t n, int k);

/// Brute-forces every cop multiset of H: the placements defending the whole
/// core must be exactly the stable positions, and a stable position must
/// defend wing i exactly when it sits in layer i or on the starters.
Report checkStableLemma(const PursuitGraph& h, const RoleMap& roles, int k);

/// Builds H from g, solves both games, and verifies cnum(H) = k,
/// capt(H) in [captDir(g)+1, captDir(g)+2], and the vertex-count formula.
Report checkSandwich(const PursuitGraph& g, int k, const SolveOptions& options = {});

/// buildMain(k, p, q) has cop number k and capture time >= p*q0*...*q_{k-1}-1.
Report checkMainConstruction(int k, std::uint64_t p, const std::vector<std::uint64_t>& q,
                             const SolveOptions& options = {});

/// The strongly connected construction: strong connectivity, protected loops
/// everywhere, cop number 1, capture time >= p*q - 1.
Report checkStronglyConnectedK1(std::uint64_t p, std::uint64_t q, const SolveOptions& options = {});

/// Every connected n-vertex cop-win graph is captured within n-4 rounds and
/// some graph needs exactly n-4. Corpus: graph6 lines; null means iterating
/// all labeled graphs on n vertices internally and filtering connectivity.
Report checkCopWinBound(std::istream* corpus, int n = 7, const SolveOptions& options = {});

/// Replays the optimal trace on H built from g and classifies each round as
/// initial / canonical / other. Informational: optimal strategies are not
/// unique, so the trace need not follow the canonical line.
Report checkCanonicalPlay(const PursuitGraph& g, int k, const SolveOptions& options = {});

/// Classification of a cop-turn configuration of a simulation graph:
/// "initial" (cops on all starters, robber on a robber starter), "canonical"
/// (cops stable in some layer i, robber in layer i+1), or "other".
std::string classifySimulationConfiguration(const RoleMap& roles, int k,
                                            const std::vector<std::uint32_t>& copPositions,
                                            std::uint32_t robberPosition);

/// The n-cycle with an unprotected loop at every vertex, doubly directed:
/// the standard reflexive game board used by the desk checks.
PursuitGraph reflexiveCycleDirected(std::uint32_t n);

bool stronglyConnected(const PursuitGraph& g);

nlohmann::json solveResultJson(const SolveResult& result);
nlohmann::json traceJson(const TraceTranscript& transcript);

}  // namespace pursuit
