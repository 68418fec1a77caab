#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "pursuit/constructions.hpp"
#include "pursuit/verify.hpp"

#include <numeric>
#include <random>

using namespace pursuit;

TEST_CASE("primesFrom") {
    CHECK(primesFrom(1, 3) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(primesFrom(2, 3) == std::vector<std::uint64_t>{3, 5, 7});
    CHECK(primesFrom(10, 1) == std::vector<std::uint64_t>{29});
    for (int r = 1; r <= 8; ++r) {
        const auto primes = primesFrom(r, 6);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            CHECK(isPrime(primes[i]));
            for (std::size_t j = i + 1; j < primes.size(); ++j) {
                CHECK(primes[i] < primes[j]);
                CHECK(std::gcd(primes[i], primes[j]) == 1);
            }
        }
    }
}

TEST_CASE("role labels round trip") {
    const std::vector<Role> roles{
        {RoleKind::ResetClique, -1, 2},    {RoleKind::Core, -1, 7},
        {RoleKind::Wing, -1, 1, 3},        {RoleKind::CopVertex, 4, 2, 1},
        {RoleKind::RobberVertex, 9, 0},    {RoleKind::CopStarter, -1, -1, 5},
        {RoleKind::RobberStarter, -1, 2},  {RoleKind::CopTrack, -1, 0, 6},
        {RoleKind::CopTrackTwin, -1, 0, 1}, {RoleKind::RobberTrack, -1, -1, 4},
        {RoleKind::RobberTrackTwin, -1, -1, 0}, {RoleKind::RobberTrackEnd, -1, 1},
        {RoleKind::Escape, -1, 0},         {RoleKind::Omega},
        {RoleKind::Psi}};
    for (const Role& role : roles) CHECK(Role::parse(role.label()) == role);
    CHECK_FALSE(Role::parse("nonsense").has_value());
    CHECK_FALSE(Role::parse("cop.1.2").has_value());
}

TEST_CASE("buildMain: sizes, roles, loops") {
    const Construction m2 = buildMain(2, 3, {5, 7});
    CHECK(m2.graph.vertexCount() == 21);
    CHECK(m2.prediction.vertexCountFormula == 21);
    CHECK(m2.prediction.captureTimeLowerBound == 104);
    CHECK(m2.prediction.predictedCopNumber == 2);

    CHECK(m2.roles.total());
    CHECK(m2.roles.countOf(RoleKind::ResetClique) == 2);
    CHECK(m2.roles.countOf(RoleKind::CopTrack) == 12);
    CHECK(m2.roles.countOf(RoleKind::RobberTrack) == 2);
    CHECK(m2.roles.countOf(RoleKind::RobberTrackEnd) == 2);
    CHECK(m2.roles.countOf(RoleKind::Escape) == 2);
    CHECK(m2.roles.countOf(RoleKind::Omega) == 1);

    CHECK(validateForPlay(m2.graph).playable());

    // Only the clique and omega are reflexive; the clique protected, omega not.
    for (std::uint32_t v = 0; v < m2.graph.vertexCount(); ++v) {
        const Role& role = m2.roles.at(v);
        const auto loop = m2.graph.arcBetween(v, v);
        if (role.kind == RoleKind::ResetClique)
            CHECK(loop == Protection::Protected);
        else if (role.kind == RoleKind::Omega)
            CHECK(loop == Protection::Unprotected);
        else
            CHECK_FALSE(loop.has_value());
    }

    const Construction m1 = buildMain(1, 3, {5});
    CHECK(m1.graph.vertexCount() == 1 + 5 + (2 + 1) + 1 + 1);
    CHECK(m1.graph.vertexCount() == m1.prediction.vertexCountFormula);
    CHECK(m1.prediction.captureTimeLowerBound == 14);
    CHECK(validateForPlay(m1.graph).playable());
}

TEST_CASE("buildMain: the vertex-count formula holds across parameters") {
    for (const auto& [k, p, q] : std::vector<std::tuple<int, std::uint64_t, std::vector<std::uint64_t>>>{
             {1, 3, {5}}, {1, 5, {3}}, {2, 3, {5, 7}}, {2, 5, {3, 7}}, {3, 3, {5, 7, 11}}}) {
        const Construction built = buildMain(k, p, q);
        std::uint64_t sum = 0;
        for (std::uint64_t value : q) sum += value;
        CHECK(built.graph.vertexCount() == k + sum + (p - 1 + k) + k + 1);
        CHECK(built.graph.vertexCount() == built.prediction.vertexCountFormula);
        CHECK(validateForPlay(built.graph).playable());
        CHECK(built.roles.total());
    }
}

TEST_CASE("buildMain rejects bad parameters") {
    CHECK_THROWS_AS(buildMain(1, 4, {5}), std::invalid_argument);   // p not prime
    CHECK_THROWS_AS(buildMain(1, 2, {5}), std::invalid_argument);   // p < 3
    CHECK_THROWS_AS(buildMain(1, 3, {3}), std::invalid_argument);   // not distinct
    CHECK_THROWS_AS(buildMain(2, 3, {5}), std::invalid_argument);   // wrong q count
    CHECK_THROWS_AS(buildMain(2, 3, {5, 9}), std::invalid_argument);
}

TEST_CASE("buildUndirectedSimulation: sizes and role counts") {
    const PursuitGraph inner = reflexiveCycleDirected(4);
    const Construction sim = buildUndirectedSimulation(inner, 2);
    CHECK(sim.graph.vertexCount() == 55);  // (3k+3)n + 8k + 3
    CHECK(sim.graph.orientation() == Orientation::Undirected);
    CHECK(sim.prediction.sandwichRelative);

    CHECK(sim.roles.total());
    CHECK(sim.roles.countOf(RoleKind::Core) == 8);
    CHECK(sim.roles.countOf(RoleKind::Wing) == 6);
    CHECK(sim.roles.countOf(RoleKind::CopVertex) == 24);
    CHECK(sim.roles.countOf(RoleKind::RobberVertex) == 12);
    CHECK(sim.roles.countOf(RoleKind::CopStarter) == 2);
    CHECK(sim.roles.countOf(RoleKind::RobberStarter) == 3);

    CHECK(validateForPlay(sim.graph).playable());

    // Loops: protected on the reset clique, unprotected elsewhere.
    for (std::uint32_t v = 0; v < sim.graph.vertexCount(); ++v) {
        const RoleKind kind = sim.roles.at(v).kind;
        const bool clique = kind == RoleKind::Core || kind == RoleKind::Wing;
        CHECK(sim.graph.arcBetween(v, v) ==
              (clique ? Protection::Protected : Protection::Unprotected));
    }

    // Every robber vertex sees exactly 5k protected clique neighbors
    // (the 4k core vertices plus its own wing).
    for (std::uint32_t v : sim.roles.verticesOf(RoleKind::RobberVertex)) {
        std::size_t protectedCliqueNeighbors = 0;
        for (const Arc& arc : sim.graph.arcs()) {
            if (arc.tail != v || arc.protection != Protection::Protected || arc.head == v) continue;
            const RoleKind kind = sim.roles.at(arc.head).kind;
            if (kind == RoleKind::Core || kind == RoleKind::Wing) ++protectedCliqueNeighbors;
        }
        CHECK(protectedCliqueNeighbors == 10);
    }
}

TEST_CASE("buildUndirectedSimulation: formula and symmetry on random inner graphs") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 12; ++trial) {
        const PursuitGraph inner = pursuit::test::randomDirectedProtected(rng, 4);
        const int k = 2 + static_cast<int>(rng() % 2);
        const Construction sim = buildUndirectedSimulation(inner, k);
        CHECK(sim.graph.vertexCount() ==
              static_cast<std::uint64_t>(3 * k + 3) * inner.vertexCount() + 8 * k + 3);
        CHECK(sim.roles.total());
        CHECK(validateForPlay(sim.graph).playable());
        CHECK(sim.roles.countOf(RoleKind::CopVertex) == 3u * k * inner.vertexCount());
        // Undirected storage is symmetric with matching protection by
        // construction; spot-check through the arc list.
        for (const Arc& arc : sim.graph.arcs())
            CHECK(sim.graph.arcBetween(arc.head, arc.tail) == arc.protection);
    }
}

TEST_CASE("buildUndirectedSimulation rejects bad input") {
    const PursuitGraph inner = reflexiveCycleDirected(4);
    CHECK_THROWS_AS(buildUndirectedSimulation(inner, 1), std::invalid_argument);
    CHECK_THROWS_AS(buildUndirectedSimulation(pursuit::test::reflexiveCycle(4), 2),
                    std::invalid_argument);  // undirected input
    PursuitGraph broken(2, Orientation::Directed);
    broken.addArc(0, 1, Protection::Unprotected);
    broken.addArc(0, 0, Protection::Unprotected);
    CHECK_THROWS_AS(buildUndirectedSimulation(broken, 2), std::invalid_argument);
}

TEST_CASE("buildStronglyConnectedK1: shape and arc audit") {
    const Construction sc = buildStronglyConnectedK1(3, 5);
    CHECK(sc.graph.vertexCount() == 2 * 3 + 2 * 5 + 4);
    CHECK(sc.prediction.captureTimeLowerBound == 14);
    CHECK(stronglyConnected(sc.graph));
    CHECK(validateForPlay(sc.graph).playable());
    CHECK(sc.roles.total());

    // Reflexive; loops protected everywhere except omega.
    const auto omega = sc.roles.find(Role{RoleKind::Omega});
    REQUIRE(omega.has_value());
    for (std::uint32_t v = 0; v < sc.graph.vertexCount(); ++v)
        CHECK(sc.graph.arcBetween(v, v) ==
              (v == *omega ? Protection::Unprotected : Protection::Protected));

    // Arcs from the cop tracks into the last robber level: the four
    // capture arcs {c,c'}_{q-1} -> {r,r'}_{p-1} plus the same-parity cross
    // arcs from the other track positions.
    const std::uint64_t p = 3, q = 5;
    const auto vertexOf = [&](Role role) {
        const auto found = sc.roles.find(role);
        REQUIRE(found.has_value());
        return *found;
    };
    std::vector<Arc> intoLastLevel;
    for (const Arc& arc : sc.graph.arcs()) {
        const Role& head = sc.roles.at(arc.head);
        const Role& tail = sc.roles.at(arc.tail);
        const bool headLast = (head.kind == RoleKind::RobberTrack ||
                               head.kind == RoleKind::RobberTrackTwin) &&
                              head.j == static_cast<int>(p - 1);
        const bool tailTrack =
            tail.kind == RoleKind::CopTrack || tail.kind == RoleKind::CopTrackTwin;
        if (headLast && tailTrack) intoLastLevel.push_back(arc);
    }
    std::vector<Arc> expected;
    for (std::uint64_t i = 0; i < q; ++i) {
        expected.push_back({vertexOf({RoleKind::CopTrack, -1, 0, static_cast<int>(i)}),
                            vertexOf({RoleKind::RobberTrack, -1, -1, static_cast<int>(p - 1)}),
                            Protection::Unprotected});
        expected.push_back({vertexOf({RoleKind::CopTrackTwin, -1, 0, static_cast<int>(i)}),
                            vertexOf({RoleKind::RobberTrackTwin, -1, -1, static_cast<int>(p - 1)}),
                            Protection::Unprotected});
    }
    expected.push_back({vertexOf({RoleKind::CopTrack, -1, 0, static_cast<int>(q - 1)}),
                        vertexOf({RoleKind::RobberTrackTwin, -1, -1, static_cast<int>(p - 1)}),
                        Protection::Unprotected});
    expected.push_back({vertexOf({RoleKind::CopTrackTwin, -1, 0, static_cast<int>(q - 1)}),
                        vertexOf({RoleKind::RobberTrack, -1, -1, static_cast<int>(p - 1)}),
                        Protection::Unprotected});
    const auto byKey = [](const Arc& a, const Arc& b) {
        return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
    };
    std::sort(expected.begin(), expected.end(), byKey);
    CHECK(intoLastLevel == expected);
}

TEST_CASE("stablePositions") {
    const Construction sim = buildUndirectedSimulation(reflexiveCycleDirected(4), 2);
    const auto positions = stablePositions(sim.graph, sim.roles, 2);
    CHECK(positions.size() == 3 * 4 * 4 + 1);

    auto starters = sim.roles.verticesOf(RoleKind::CopStarter);
    std::sort(starters.begin(), starters.end());
    CHECK(std::find(positions.begin(), positions.end(), starters) != positions.end());

    for (const auto& position : positions) {
        if (position == starters) continue;
        // One layer, one cop per j-class.
        const Role& first = sim.roles.at(position[0]);
        REQUIRE(first.kind == RoleKind::CopVertex);
        std::uint64_t jSeen = 0;
        for (std::uint32_t cop : position) {
            const Role& role = sim.roles.at(cop);
            CHECK(role.kind == RoleKind::CopVertex);
            CHECK(role.i == first.i);
            jSeen |= 1ull << role.j;
        }
        CHECK(jSeen == 0b11);
    }

    CHECK_THROWS_AS(stablePositions(sim.graph, RoleMap(sim.graph.vertexCount()), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(stablePositions(sim.graph, sim.roles, 3), std::invalid_argument);
}

TEST_CASE("construction graphs round trip through the pg format") {
    for (const Construction& built :
         {buildMain(2, 3, {5, 7}), buildStronglyConnectedK1(3, 5),
          buildUndirectedSimulation(reflexiveCycleDirected(4), 2)}) {
        const PursuitGraph parsed = parsePursuitGraph(serializePursuitGraph(built.graph));
        CHECK(parsed == built.graph);
        const RoleMap recovered = RoleMap::fromGraph(parsed);
        for (std::uint32_t v = 0; v < parsed.vertexCount(); ++v)
            CHECK(recovered.at(v) == built.roles.at(v));
    }
}
