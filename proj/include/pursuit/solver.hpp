#pragma once

#include "pursuit/game.hpp"

#include <atomic>
#include <memory>
#include <optional>

namespace pursuit {

struct SolveOptions {
    /// 0 = PURSUIT_WORKERS environment variable, else machine parallelism.
    int workers = 0;
    /// Abort with StateSpaceError (reporting the required count) beyond this.
    std::uint64_t maxConfigurations = 1ull << 31;
};

struct SolveResult {
    enum class Outcome : std::uint8_t { CopWin, RobberWin };

    Outcome outcome = Outcome::RobberWin;
    /// Rounds until capture under optimal play, counting the capturing cop
    /// turn; meaningful only for CopWin. Placement is round 0.
    std::uint32_t captureTime = 0;
    std::vector<std::uint32_t> optimalCopPlacement;
    std::uint32_t witnessRobberPlacement = 0;
    /// Total configurations, both turns: 2 * n * C(n+k-1, k).
    std::uint64_t stateCount = 0;
    /// Attractor layers computed (0 for the oracle, which has none).
    std::uint32_t layerCount = 0;

    bool copWin() const { return outcome == Outcome::CopWin; }

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// Deterministic optimal strategies, indexed by multisetRank * n + robber.
struct Strategy {
    struct CopChoice {
        bool defined = false;   // false on robber-win states
        bool capture = false;
        std::uint64_t successorMultiset = 0;  // multiset rank, when !capture

        friend bool operator==(const CopChoice&, const CopChoice&) = default;
    };

    std::uint32_t vertexCount = 0;
    std::vector<CopChoice> copChoice;          // cop-turn states
    std::vector<std::uint32_t> robberChoice;   // robber-turn states -> reply vertex

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

struct TraceStep {
    std::uint32_t round = 0;
    std::vector<std::uint32_t> copPositions;
    std::uint32_t robberPosition = 0;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Optimal-vs-optimal playout. Each step is the configuration at the start
/// of a round (a cop turn); a Capture ending means the capture happens on
/// the final step's cop turn, so steps.size() equals the capture time.
struct TraceTranscript {
    enum class End : std::uint8_t { Capture, Cycle };

    std::vector<TraceStep> steps;
    End end = End::Capture;
    std::uint32_t cycleStartRound = 0;  // round the final configuration repeats, Cycle only

    friend bool operator==(const TraceTranscript&, const TraceTranscript&) = default;
};

/// Exact layered backward induction over the full configuration space.
///
/// Cop-turn states are labeled with the number of rounds a forced capture
/// needs: layer 1 states have a capture available; a state gets layer t+1
/// when some cop move leads to a robber-turn intermediate all of whose
/// replies land in layers <= t (tracked with per-intermediate reply
/// counters). States never labeled are robber wins.
///
/// Results are deterministic and independent of the worker count: labels are
/// claimed with compare-and-swap (every claimant writes the same value),
/// counter updates commute, and tie-breaks use configuration ranks.
class SolvedGame {
public:
    explicit SolvedGame(GameSpec spec, const SolveOptions& options = {});

    const GameSpec& spec() const { return spec_; }
    const ConfigurationIndex& index() const { return index_; }
    const SolveResult& result() const { return result_; }

    /// Layer of the cop-turn state (multiset, robber); 0 = robber win.
    std::uint32_t layerOf(std::uint64_t multisetRank, std::uint32_t robber) const;
    /// Value of the robber-turn intermediate (max reply layer); 0 = robber
    /// escapes from here.
    std::uint32_t robberValueOf(std::uint64_t multisetRank, std::uint32_t robber) const;

    /// Cop choices realize the layer (ties: smallest successor rank); robber
    /// choices prefer never-caught replies, then the highest layer (ties:
    /// smallest vertex).
    Strategy extractStrategy() const;

    /// From the optimal placements. Cop-win games end in a capture after
    /// exactly captureTime steps; robber-win games end in a flagged cycle
    /// (the cop plays the smallest-ranked successor).
    TraceTranscript trace() const;

    std::span<const std::uint32_t> multisetMembers(std::uint64_t multisetRank) const;
    std::span<const std::uint32_t> predecessorMultisets(std::uint64_t multisetRank) const;

private:
    void buildMembers();
    void buildPredecessors(int workers);
    void runAttractor(int workers);
    void deriveResult();

    GameSpec spec_;
    ConfigurationIndex index_;
    std::uint64_t multisets_ = 0;
    std::uint64_t copStates_ = 0;
    SolveResult result_;

    std::vector<std::uint32_t> members_;                  // multisets_ * k
    std::vector<std::uint32_t> predFlat_;
    std::vector<std::uint64_t> predOff_;                  // multisets_ + 1
    std::unique_ptr<std::atomic<std::uint32_t>[]> layer_;       // cop-turn states
    std::unique_ptr<std::atomic<std::uint32_t>[]> replyCount_;  // robber-turn states
    std::vector<std::uint32_t> robberValue_;              // robber-turn states
};

SolveResult solve(const GameSpec& spec, const SolveOptions& options = {});

/// Smallest k <= kMax whose game is a cop win (sequential search), or
/// nullopt when even kMax cops lose.
std::optional<int> copNumber(const PursuitGraph& graph, int kMax, const SolveOptions& options = {});

Strategy extractStrategy(const GameSpec& spec, const SolveOptions& options = {});
TraceTranscript trace(const GameSpec& spec, const SolveOptions& options = {});

}  // namespace pursuit
