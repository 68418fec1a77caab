#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "pursuit/constructions.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/solver.hpp"

#include <random>

using namespace pursuit;
using pursuit::test::reflexiveCycle;
using pursuit::test::reflexivePath;

namespace {

void checkAgainstOracle(const PursuitGraph& g, int k) {
    const GameSpec spec(g, k);
    const SolveResult fast = solve(spec);
    const SolveResult reference = oracleSolve(spec);
    CHECK(fast.outcome == reference.outcome);
    if (fast.copWin()) CHECK(fast.captureTime == reference.captureTime);
    // The upper bound holds for everything we solve.
    CHECK((!fast.copWin() || fast.captureTime <= ConfigurationIndex(spec.vertexCount(), k).copTurnStates()));
}

}  // namespace

TEST_CASE("named small games") {
    CHECK(solve(GameSpec(reflexivePath(2), 1)) ==
          SolveResult{SolveResult::Outcome::CopWin, 1, {0}, 0, 8, 1});

    CHECK_FALSE(solve(GameSpec(reflexiveCycle(4), 1)).copWin());
    const SolveResult c4k2 = solve(GameSpec(reflexiveCycle(4), 2));
    CHECK(c4k2.copWin());
    CHECK(c4k2.captureTime == 1);
    checkAgainstOracle(reflexiveCycle(4), 1);
    checkAgainstOracle(reflexiveCycle(4), 2);
}

TEST_CASE("cop numbers of small graphs") {
    CHECK(copNumber(reflexivePath(4), 2) == 1);
    CHECK(copNumber(reflexiveCycle(4), 3) == 2);
    CHECK(copNumber(reflexiveCycle(3), 2) == 1);
    CHECK_FALSE(copNumber(reflexiveCycle(4), 1).has_value());
}

TEST_CASE("oracle equivalence: exhaustive connected reflexive graphs up to 4 vertices") {
    for (int n = 1; n <= 4; ++n) {
        const std::uint32_t pairs = n * (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            if (!pursuit::test::maskConnected(n, mask)) continue;
            const PursuitGraph g = pursuit::test::reflexiveFromMask(n, mask);
            checkAgainstOracle(g, 1);
            checkAgainstOracle(g, 2);
        }
    }
}

TEST_CASE("oracle equivalence: random directed protected graphs") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const PursuitGraph g = pursuit::test::randomDirectedProtected(rng, 5);
        checkAgainstOracle(g, 1);
        checkAgainstOracle(g, 2);
    }
}

TEST_CASE("oracle cost guard") {
    const PursuitGraph big = reflexivePath(9);
    CHECK_THROWS_AS(oracleSolve(GameSpec(big, 1)), OracleGuardError);
    CHECK_NOTHROW(oracleSolve(GameSpec(big, 1), {true}));
}

TEST_CASE("state space limit reports the required count") {
    try {
        solve(GameSpec(reflexivePath(5), 2), {1, 10});
        FAIL("expected StateSpaceError");
    } catch (const StateSpaceError& e) {
        CHECK(e.requiredConfigurations() == 2 * 5 * 15);
    }
}

TEST_CASE("monotonicity: an extra cop never hurts") {
    std::mt19937_64 rng(41);
    int copWins = 0;
    while (copWins < 15) {
        const PursuitGraph g = pursuit::test::randomDirectedProtected(rng, 5);
        const SolveResult atOne = solve(GameSpec(g, 1));
        if (!atOne.copWin()) continue;
        ++copWins;
        const SolveResult atTwo = solve(GameSpec(g, 2));
        REQUIRE(atTwo.copWin());
        CHECK(atTwo.captureTime <= atOne.captureTime);
    }
}

TEST_CASE("permutation invariance of outcome and capture time") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const PursuitGraph g = pursuit::test::randomDirectedProtected(rng, 5);
        const auto perm = pursuit::test::randomPermutation(rng, g.vertexCount());
        const int k = 1 + static_cast<int>(rng() % 2);
        const SolveResult a = solve(GameSpec(g, k));
        const SolveResult b = solve(GameSpec(pursuit::test::relabel(g, perm), k));
        CHECK(a.outcome == b.outcome);
        if (a.copWin()) CHECK(a.captureTime == b.captureTime);
    }
}

TEST_CASE("determinism across runs and worker counts") {
    const Construction main = buildMain(2, 3, {5, 7});
    const GameSpec spec(main.graph, 2);
    const SolveOptions one{1}, four{4};

    const SolveResult a = solve(spec, one);
    const SolveResult b = solve(spec, four);
    const SolveResult c = solve(spec, four);
    CHECK(a == b);
    CHECK(b == c);
    CHECK(extractStrategy(spec, one) == extractStrategy(spec, four));
    CHECK(trace(spec, one) == trace(spec, four));
}

TEST_CASE("strategy realizes the layers") {
    const GameSpec spec(reflexivePath(2), 1);
    const SolvedGame solved(spec);
    const Strategy strategy = solved.extractStrategy();
    // Cop at 0, robber at 1: capture immediately.
    const std::uint64_t idx = solved.index().rankMultiset(std::vector<std::uint32_t>{0}) * 2 + 1;
    CHECK(strategy.copChoice[idx].defined);
    CHECK(strategy.copChoice[idx].capture);
}

TEST_CASE("layer soundness: optimal moves push the robber strictly down") {
    const Construction main = buildMain(1, 3, {5});
    const SolvedGame solved(GameSpec(main.graph, 1));
    const std::uint32_t n = solved.spec().vertexCount();
    for (std::uint64_t m = 0; m < solved.index().multisetCount(); ++m)
        for (std::uint32_t r = 0; r < n; ++r) {
            const std::uint32_t layer = solved.layerOf(m, r);
            if (layer <= 1) continue;
            const auto members = solved.multisetMembers(m);
            const Configuration c{{members.begin(), members.end()}, r, Turn::Cop};
            bool found = false;
            for (const auto& successor : enumerateCopMoves(solved.spec(), c).successors) {
                const std::uint64_t sm = solved.index().rankMultiset(successor);
                std::uint32_t worst = 0;
                for (std::uint32_t reply : solved.spec().outNeighbors(r)) {
                    const std::uint32_t replyLayer = solved.layerOf(sm, reply);
                    if (replyLayer == 0) {
                        worst = ~0u;
                        break;
                    }
                    worst = std::max(worst, replyLayer);
                }
                if (worst == layer - 1) found = true;
            }
            CHECK(found);
        }
}

TEST_CASE("cop strategy beats random robbers within the capture time") {
    std::mt19937_64 rng(47);
    for (const auto& [graph, k] :
         {std::pair<PursuitGraph, int>{buildMain(1, 3, {5}).graph, 1},
          std::pair<PursuitGraph, int>{reflexiveCycle(4), 2}}) {
        const GameSpec spec(graph, k);
        const SolvedGame solved(spec);
        REQUIRE(solved.result().copWin());
        const Strategy strategy = solved.extractStrategy();
        const std::uint32_t n = spec.vertexCount();

        for (int playout = 0; playout < 50; ++playout) {
            std::uint64_t m = solved.index().rankMultiset(solved.result().optimalCopPlacement);
            std::uint32_t robber = static_cast<std::uint32_t>(rng() % n);
            const std::uint32_t startLayer = solved.layerOf(m, robber);
            REQUIRE(startLayer >= 1);
            std::uint32_t rounds = 0;
            while (true) {
                ++rounds;
                const auto& choice = strategy.copChoice[m * n + robber];
                REQUIRE(choice.defined);
                if (choice.capture) break;
                m = choice.successorMultiset;
                const auto replies = spec.outNeighbors(robber);
                robber = replies[rng() % replies.size()];
            }
            CHECK(rounds <= startLayer);
            CHECK(rounds <= solved.result().captureTime);
        }
    }
}

TEST_CASE("traces") {
    // One-round capture on the 2-path.
    const TraceTranscript path = trace(GameSpec(reflexivePath(2), 1));
    CHECK(path.end == TraceTranscript::End::Capture);
    REQUIRE(path.steps.size() == 1);
    CHECK(path.steps[0].round == 1);

    // Optimal-vs-optimal length equals the capture time; rounds count up and
    // consecutive entries are connected by legal cop and robber moves.
    const Construction main = buildMain(1, 3, {5});
    const SolvedGame solved(GameSpec(main.graph, 1));
    const TraceTranscript transcript = solved.trace();
    CHECK(transcript.end == TraceTranscript::End::Capture);
    CHECK(transcript.steps.size() == solved.result().captureTime);
    for (std::size_t i = 0; i < transcript.steps.size(); ++i) {
        CHECK(transcript.steps[i].round == i + 1);
        if (i == 0) continue;
        const TraceStep& prev = transcript.steps[i - 1];
        const TraceStep& next = transcript.steps[i];
        const Configuration before{prev.copPositions, prev.robberPosition, Turn::Cop};
        const auto copMoves = enumerateCopMoves(solved.spec(), before).successors;
        CHECK(std::find(copMoves.begin(), copMoves.end(), next.copPositions) != copMoves.end());
        const Configuration mid{next.copPositions, prev.robberPosition, Turn::Robber};
        const auto replies = enumerateRobberMoves(solved.spec(), mid);
        CHECK(std::find(replies.begin(), replies.end(), next.robberPosition) != replies.end());
    }

    // Robber-win games produce a flagged witness cycle.
    const TraceTranscript cycle = trace(GameSpec(reflexiveCycle(4), 1));
    CHECK(cycle.end == TraceTranscript::End::Cycle);
    CHECK(cycle.cycleStartRound >= 1);
    CHECK(!cycle.steps.empty());
}
