#include "pursuit/verify.hpp"
#include "pursuit/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <istream>

namespace pursuit {

namespace {

class Timer {
public:
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const char* verdictWord(Report::Verdict v) {
    switch (v) {
        case Report::Verdict::Pass: return "pass";
        case Report::Verdict::Fail: return "fail";
        case Report::Verdict::Informational: return "informational";
    }
    return "informational";
}

Report::Verdict passFail(bool ok) { return ok ? Report::Verdict::Pass : Report::Verdict::Fail; }

}  // namespace

nlohmann::json solveResultJson(const SolveResult& result) {
    nlohmann::json j;
    j["outcome"] = result.copWin() ? "cop-win" : "robber-win";
    if (result.copWin())
        j["captureTime"] = result.captureTime;
    else
        j["captureTime"] = nullptr;
    j["optimalCopPlacement"] = result.optimalCopPlacement;
    j["witnessRobberPlacement"] = result.witnessRobberPlacement;
    j["stateCount"] = result.stateCount;
    j["layerCount"] = result.layerCount;
    return j;
}

nlohmann::json traceJson(const TraceTranscript& transcript) {
    nlohmann::json steps = nlohmann::json::array();
    for (const TraceStep& step : transcript.steps)
        steps.push_back({{"round", step.round},
                         {"cops", step.copPositions},
                         {"robber", step.robberPosition}});
    nlohmann::json j{{"steps", steps}};
    if (transcript.end == TraceTranscript::End::Capture) {
        j["end"] = "capture";
        j["cycleStartRound"] = nullptr;
    } else {
        j["end"] = "cycle";
        j["cycleStartRound"] = transcript.cycleStartRound;
    }
    return j;
}

nlohmann::json Report::toJson() const {
    return nlohmann::json{{"check", check},     {"params", params},   {"observed", observed},
                          {"expected", expected}, {"verdict", verdictWord(verdict)}, {"seconds", seconds}};
}

Report checkUpperBound(const SolveResult& result, std::uint32_t n, int k) {
    Timer timer;
    Report report;
    report.check = "upper-bound";
    report.params = {{"n", n}, {"k", k}};
    const std::uint64_t bound = ConfigurationIndex(n, k).copTurnStates();
    report.expected = {{"captureTimeAtMost", bound}, {"layerCountAtMostStateCount", true}};
    report.observed = solveResultJson(result);
    const bool ok = !result.copWin() ||
                    (result.captureTime <= bound && result.layerCount <= result.stateCount);
    report.verdict = passFail(ok);
    report.seconds = timer.elapsed();
    return report;
}

Report checkStableLemma(const PursuitGraph& h, const RoleMap& roles, int k) {
    Timer timer;
    Report report;
    report.check = "stable-lemma";
    report.params = {{"vertices", h.vertexCount()}, {"k", k}};

    const auto core = roles.verticesOf(RoleKind::Core);
    if (core.empty() || core.size() > 64) throw std::invalid_argument("core missing or too large");
    std::vector<int> coreIndex(h.vertexCount(), -1);
    for (std::size_t i = 0; i < core.size(); ++i) coreIndex[core[i]] = static_cast<int>(i);
    const std::uint64_t fullCore = core.size() == 64 ? ~0ull : (1ull << core.size()) - 1;

    std::vector<std::vector<std::uint32_t>> wings(3);
    for (std::uint32_t v : roles.verticesOf(RoleKind::Wing)) wings[roles.at(v).i].push_back(v);
    std::vector<int> wingIndex(h.vertexCount(), -1);
    std::uint64_t fullWing[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        if (wings[i].size() != static_cast<std::size_t>(k))
            throw std::invalid_argument("wing size does not match k");
        for (std::size_t j = 0; j < wings[i].size(); ++j) {
            wingIndex[wings[i][j]] = i * k + static_cast<int>(j);
            fullWing[i] |= 1ull << (i * k + j);
        }
    }

    // Defends-sets from unprotected edges only.
    std::vector<std::uint64_t> coreMask(h.vertexCount(), 0), wingMask(h.vertexCount(), 0);
    for (const Arc& arc : h.arcs()) {
        if (arc.protection != Protection::Unprotected) continue;
        if (coreIndex[arc.head] >= 0) coreMask[arc.tail] |= 1ull << coreIndex[arc.head];
        if (wingIndex[arc.head] >= 0) wingMask[arc.tail] |= 1ull << wingIndex[arc.head];
    }

    const auto stable = stablePositions(h, roles, k);
    const ConfigurationIndex index(h.vertexCount(), k);
    std::vector<bool> isStable(index.multisetCount(), false);
    for (const auto& position : stable) isStable[index.rankMultiset(position)] = true;

    std::uint64_t defending = 0, mismatches = 0, wingViolations = 0;
    std::vector<std::uint32_t> members(k);
    for (std::uint64_t m = 0; m < index.multisetCount(); ++m) {
        index.unrankMultisetInto(m, members.data());
        std::uint64_t covered = 0;
        for (std::uint32_t member : members) covered |= coreMask[member];
        const bool defendsCore = covered == fullCore;
        if (defendsCore) ++defending;
        if (defendsCore != isStable[m]) ++mismatches;
        if (!isStable[m]) continue;

        std::uint64_t wingCovered = 0;
        for (std::uint32_t member : members) wingCovered |= wingMask[member];
        const bool onStarters = roles.at(members[0]).kind == RoleKind::CopStarter;
        for (int i = 0; i < 3; ++i) {
            const bool defendsWing = (wingCovered & fullWing[i]) == fullWing[i];
            const bool shouldDefend = onStarters || (roles.at(members[0]).kind == RoleKind::CopVertex &&
                                                     roles.at(members[0]).i == i);
            if (defendsWing != shouldDefend) ++wingViolations;
        }
    }

    report.observed = {{"multisets", index.multisetCount()},
                       {"defendingCore", defending},
                       {"stablePositions", stable.size()},
                       {"mismatches", mismatches},
                       {"wingViolations", wingViolations}};
    report.expected = {{"mismatches", 0}, {"wingViolations", 0}, {"defendingCore", stable.size()}};
    report.verdict = passFail(mismatches == 0 && wingViolations == 0);
    report.seconds = timer.elapsed();
    return report;
}

Report checkSandwich(const PursuitGraph& g, int k, const SolveOptions& options) {
    Timer timer;
    Report report;
    report.check = "sandwich";
    report.params = {{"innerVertices", g.vertexCount()}, {"k", k}};

    const auto innerCnum = copNumber(g, k, options);
    const SolveResult inner = solve(GameSpec(g, k), options);
    if (!inner.copWin() || innerCnum != k) {
        report.observed = {{"innerOutcome", inner.copWin() ? "cop-win" : "robber-win"},
                           {"innerCopNumber", innerCnum ? nlohmann::json(*innerCnum) : nlohmann::json()}};
        report.expected = {{"innerCopNumber", k}};
        report.verdict = Report::Verdict::Informational;
        report.seconds = timer.elapsed();
        return report;
    }
    const std::uint32_t captDir = inner.captureTime;

    Construction sim = buildUndirectedSimulation(g, k);
    const std::uint64_t formula =
        static_cast<std::uint64_t>(3 * k + 3) * g.vertexCount() + 8 * static_cast<std::uint64_t>(k) + 3;
    const auto simCnum = copNumber(sim.graph, k, options);
    const SolveResult outer = solve(GameSpec(sim.graph, k), options);

    const bool vertexOk = sim.graph.vertexCount() == formula;
    const bool cnumOk = simCnum == k;
    const bool captOk = outer.copWin() && outer.captureTime >= captDir + 1 && outer.captureTime <= captDir + 2;

    report.observed = {{"captDir", captDir},
                       {"simulationVertices", sim.graph.vertexCount()},
                       {"simulationCopNumber", simCnum ? nlohmann::json(*simCnum) : nlohmann::json()},
                       {"captSimulation", outer.copWin() ? nlohmann::json(outer.captureTime) : nlohmann::json()}};
    report.expected = {{"simulationVertices", formula},
                       {"simulationCopNumber", k},
                       {"captSimulationRange", {captDir + 1, captDir + 2}}};
    report.verdict = passFail(vertexOk && cnumOk && captOk);
    report.seconds = timer.elapsed();
    return report;
}

Report checkMainConstruction(int k, std::uint64_t p, const std::vector<std::uint64_t>& q,
                             const SolveOptions& options) {
    Timer timer;
    Report report;
    report.check = "main-construction";
    report.params = {{"k", k}, {"p", p}, {"q", q}};
    Construction main = buildMain(k, p, q);
    try {
        const auto cnum = copNumber(main.graph, k, options);
        const SolveResult result = solve(GameSpec(main.graph, k), options);
        report.observed = {{"vertices", main.graph.vertexCount()},
                           {"copNumber", cnum ? nlohmann::json(*cnum) : nlohmann::json()},
                           {"captureTime", result.copWin() ? nlohmann::json(result.captureTime) : nlohmann::json()}};
        report.expected = {{"vertices", main.prediction.vertexCountFormula},
                           {"copNumber", k},
                           {"captureTimeAtLeast", main.prediction.captureTimeLowerBound}};
        const bool ok = cnum == k && result.copWin() &&
                        result.captureTime >= main.prediction.captureTimeLowerBound &&
                        main.graph.vertexCount() == main.prediction.vertexCountFormula;
        report.verdict = passFail(ok);
    } catch (const StateSpaceError& e) {
        report.observed = {{"stateSpaceRequired", e.requiredConfigurations()}};
        report.expected = {{"note", "state space too large for this configuration"}};
        report.verdict = Report::Verdict::Informational;
    }
    report.seconds = timer.elapsed();
    return report;
}

Report checkStronglyConnectedK1(std::uint64_t p, std::uint64_t q, const SolveOptions& options) {
    Timer timer;
    Report report;
    report.check = "strongly-connected-k1";
    report.params = {{"p", p}, {"q", q}};
    Construction sc = buildStronglyConnectedK1(p, q);

    const bool connected = stronglyConnected(sc.graph);
    // Reflexive, with every loop protected except omega's (the base
    // construction's unprotected loop survives; a fully protected loop set
    // would let the robber shadow the cop forever around psi and omega).
    const auto omega = sc.roles.find(Role{RoleKind::Omega});
    bool loopsOk = omega.has_value();
    for (std::uint32_t v = 0; v < sc.graph.vertexCount() && loopsOk; ++v) {
        const auto loop = sc.graph.arcBetween(v, v);
        loopsOk = loop == (v == *omega ? Protection::Unprotected : Protection::Protected);
    }

    const auto cnum = copNumber(sc.graph, 1, options);
    const SolveResult result = solve(GameSpec(sc.graph, 1), options);

    report.observed = {{"vertices", sc.graph.vertexCount()},
                       {"stronglyConnected", connected},
                       {"reflexiveProtectedExceptOmega", loopsOk},
                       {"copNumber", cnum ? nlohmann::json(*cnum) : nlohmann::json()},
                       {"captureTime", result.copWin() ? nlohmann::json(result.captureTime) : nlohmann::json()}};
    report.expected = {{"vertices", sc.prediction.vertexCountFormula},
                       {"stronglyConnected", true},
                       {"reflexiveProtectedExceptOmega", true},
                       {"copNumber", 1},
                       {"captureTimeAtLeast", sc.prediction.captureTimeLowerBound}};
    const bool ok = connected && loopsOk && cnum == 1 && result.copWin() &&
                    result.captureTime >= sc.prediction.captureTimeLowerBound &&
                    sc.graph.vertexCount() == sc.prediction.vertexCountFormula;
    report.verdict = passFail(ok);
    report.seconds = timer.elapsed();
    return report;
}

namespace {

struct CopWinStats {
    std::uint64_t connected = 0;
    std::uint64_t copWin = 0;
    std::uint64_t robberWin = 0;
    std::array<std::uint64_t, 64> byCaptureTime{};
    std::array<std::uint64_t, 64> firstIndex{};  // smallest graph index per capture time
    std::uint64_t overflow = 0;                  // capture times >= 64 (never expected)

    CopWinStats() { firstIndex.fill(~0ull); }

    void add(std::uint64_t index, const SolveResult& result) {
        ++connected;
        if (!result.copWin()) {
            ++robberWin;
            return;
        }
        ++copWin;
        if (result.captureTime >= 64) {
            ++overflow;
            return;
        }
        ++byCaptureTime[result.captureTime];
        firstIndex[result.captureTime] = std::min(firstIndex[result.captureTime], index);
    }

    void merge(const CopWinStats& other) {
        connected += other.connected;
        copWin += other.copWin;
        robberWin += other.robberWin;
        overflow += other.overflow;
        for (int i = 0; i < 64; ++i) {
            byCaptureTime[i] += other.byCaptureTime[i];
            firstIndex[i] = std::min(firstIndex[i], other.firstIndex[i]);
        }
    }
};

bool connectedMask(int n, std::uint64_t mask) {
    std::array<std::uint32_t, 16> adjacency{};
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (mask >> bit & 1) {
                adjacency[i] |= 1u << j;
                adjacency[j] |= 1u << i;
            }
    std::uint32_t visited = 1;
    std::uint32_t frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        while (frontier) {
            const int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= adjacency[v] & ~visited;
        }
        visited |= next;
        frontier = next;
    }
    return visited == (1u << n) - 1;
}

PursuitGraph reflexiveGraphFromMask(int n, std::uint64_t mask) {
    PursuitGraph graph(n, Orientation::Undirected);
    for (int v = 0; v < n; ++v) graph.addEdge(v, v, Protection::Unprotected);
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (mask >> bit & 1) graph.addEdge(i, j, Protection::Unprotected);
    return graph;
}

}  // namespace

Report checkCopWinBound(std::istream* corpus, int n, const SolveOptions& options) {
    Timer timer;
    Report report;
    report.check = "cop-win-bound";
    if (n < 7 || n > 11) throw std::invalid_argument("cop-win bound check supports 7 <= n <= 11");
    const std::uint32_t bound = static_cast<std::uint32_t>(n - 4);
    report.params = {{"n", n}, {"corpus", corpus ? "supplied" : "internal"}};

    CopWinStats stats;
    const SolveOptions perGraph{1, options.maxConfigurations};

    if (corpus) {
        std::string line;
        std::uint64_t index = 0;
        while (std::getline(*corpus, line)) {
            if (line.empty()) continue;
            PursuitGraph graph = parseGraph6(line);
            if (graph.vertexCount() != static_cast<std::uint32_t>(n))
                throw std::invalid_argument("corpus vertex count mismatch: got " +
                                            std::to_string(graph.vertexCount()) + ", expected " +
                                            std::to_string(n));
            bool connected = true;
            {
                // Rebuild the edge mask to reuse the connectivity scan.
                std::uint64_t mask = 0;
                std::size_t bit = 0;
                for (int j = 1; j < n; ++j)
                    for (int i = 0; i < j; ++i, ++bit)
                        if (graph.hasArc(i, j)) mask |= 1ull << bit;
                connected = connectedMask(n, mask);
            }
            if (connected) stats.add(index, solve(GameSpec(graph, 1), perGraph));
            ++index;
        }
    } else {
        const std::uint64_t total = 1ull << (n * (n - 1) / 2);
        const int workers = resolveWorkerCount(options.workers);
        const std::size_t chunks = workers <= 1 ? 1 : static_cast<std::size_t>(workers) * 8;
        std::vector<CopWinStats> parts(chunks);
        forEachChunk(total, chunks, workers, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
            CopWinStats& local = parts[chunk];
            for (std::uint64_t mask = begin; mask < end; ++mask) {
                if (!connectedMask(n, mask)) continue;
                PursuitGraph graph = reflexiveGraphFromMask(n, mask);
                local.add(mask, solve(GameSpec(std::move(graph), 1), perGraph));
            }
        });
        for (const CopWinStats& part : parts) stats.merge(part);
    }

    std::uint32_t maxCapture = 0;
    std::uint64_t violations = stats.overflow;
    for (std::uint32_t t = 0; t < 64; ++t) {
        if (stats.byCaptureTime[t] == 0) continue;
        maxCapture = t;
        if (t > bound) violations += stats.byCaptureTime[t];
    }

    report.observed = {{"connectedGraphs", stats.connected},
                       {"copWin", stats.copWin},
                       {"robberWinSkipped", stats.robberWin},
                       {"maxCaptureTime", maxCapture},
                       {"captureTimesOverBound", violations},
                       {"firstAttainingBound",
                        stats.firstIndex[bound] == ~0ull ? nlohmann::json()
                                                         : nlohmann::json(stats.firstIndex[bound])}};
    report.expected = {{"captureTimeAtMost", bound}, {"boundAttained", true}};
    report.verdict = passFail(violations == 0 && maxCapture == bound);
    report.seconds = timer.elapsed();
    return report;
}

Report checkCanonicalPlay(const PursuitGraph& g, int k, const SolveOptions& options) {
    Timer timer;
    Report report;
    report.check = "canonical-play";
    report.params = {{"innerVertices", g.vertexCount()}, {"k", k}};
    report.verdict = Report::Verdict::Informational;

    Construction sim = buildUndirectedSimulation(g, k);
    SolvedGame solved(GameSpec(sim.graph, k), options);
    if (!solved.result().copWin()) {
        report.observed = {{"note", "simulation game is not a cop win; nothing to replay"}};
        report.seconds = timer.elapsed();
        return report;
    }

    const TraceTranscript transcript = solved.trace();
    nlohmann::json rounds = nlohmann::json::array();
    std::uint64_t canonical = 0, initial = 0, other = 0;
    for (const TraceStep& step : transcript.steps) {
        const std::string cls =
            classifySimulationConfiguration(sim.roles, k, step.copPositions, step.robberPosition);
        rounds.push_back({{"round", step.round}, {"class", cls}});
        if (cls == "canonical")
            ++canonical;
        else if (cls == "initial")
            ++initial;
        else
            ++other;
    }

    // A robber standing on a cop vertex while the cops hold a stable position
    // is captured within two rounds: the layer of every such state.
    std::uint32_t copVertexMaxLayer = 0;
    std::uint64_t copVertexEscapes = 0;
    const auto copVertices = sim.roles.verticesOf(RoleKind::CopVertex);
    for (const auto& position : stablePositions(sim.graph, sim.roles, k)) {
        const std::uint64_t m = solved.index().rankMultiset(position);
        for (std::uint32_t v : copVertices) {
            const std::uint32_t layer = solved.layerOf(m, v);
            if (layer == 0)
                ++copVertexEscapes;
            else
                copVertexMaxLayer = std::max(copVertexMaxLayer, layer);
        }
    }

    report.observed = {{"rounds", rounds},
                       {"initial", initial},
                       {"canonical", canonical},
                       {"other", other},
                       {"captureTime", solved.result().captureTime},
                       {"robberOnCopVertexMaxLayer", copVertexMaxLayer},
                       {"robberOnCopVertexEscapes", copVertexEscapes}};
    report.expected = {{"note", "informational: lemmas constrain optimal play, not every optimal trace"},
                       {"robberOnCopVertexMaxLayer", 2},
                       {"robberOnCopVertexEscapes", 0}};
    report.seconds = timer.elapsed();
    return report;
}

std::string classifySimulationConfiguration(const RoleMap& roles, int k,
                                            const std::vector<std::uint32_t>& copPositions,
                                            std::uint32_t robberPosition) {
    const Role& robberRole = roles.at(robberPosition);
    auto starters = roles.verticesOf(RoleKind::CopStarter);
    std::sort(starters.begin(), starters.end());
    if (copPositions == starters && robberRole.kind == RoleKind::RobberStarter) return "initial";
    int layer = -1;
    std::uint64_t jSeen = 0;
    for (std::uint32_t cop : copPositions) {
        const Role& role = roles.at(cop);
        if (role.kind != RoleKind::CopVertex) return "other";
        if (layer == -1) layer = role.i;
        if (role.i != layer) return "other";
        jSeen |= 1ull << role.j;
    }
    if (jSeen != (1ull << k) - 1) return "other";
    if (robberRole.kind == RoleKind::RobberVertex && robberRole.i == (layer + 1) % 3)
        return "canonical";
    return "other";
}

PursuitGraph reflexiveCycleDirected(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
    PursuitGraph graph(n, Orientation::Undirected);
    for (std::uint32_t v = 0; v < n; ++v) {
        graph.addEdge(v, v, Protection::Unprotected);
        graph.addEdge(v, (v + 1) % n, Protection::Unprotected);
    }
    return doublyDirect(graph);
}

bool stronglyConnected(const PursuitGraph& g) {
    const std::uint32_t n = g.vertexCount();
    if (n == 0) return true;
    std::vector<std::vector<std::uint32_t>> out(n), in(n);
    for (const Arc& arc : g.arcs()) {
        out[arc.tail].push_back(arc.head);
        in[arc.head].push_back(arc.tail);
    }
    const auto reaches = [&](const std::vector<std::vector<std::uint32_t>>& adjacency) {
        std::vector<bool> visited(n, false);
        std::vector<std::uint32_t> stack{0};
        visited[0] = true;
        std::uint32_t count = 1;
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : adjacency[v])
                if (!visited[w]) {
                    visited[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == n;
    };
    return reaches(out) && reaches(in);
}

}  // namespace pursuit
