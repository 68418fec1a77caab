// Command-line front end: solve pursuit games, generate the extremal
// constructions, and run the verification suite.

#include "pursuit/constructions.hpp"
#include "pursuit/solver.hpp"
#include "pursuit/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace pursuit;

PursuitGraph readGraphFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parsePursuitGraph(in);
}

void writeGraphFile(const std::string& path, const Construction& built) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serializePursuitGraph(built.graph);
}

void writeGraphFile(const std::string& path, const PursuitGraph& graph) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serializePursuitGraph(graph);
}

nlohmann::json predictionJson(const Prediction& prediction) {
    nlohmann::json j{{"copNumber", prediction.predictedCopNumber},
                     {"vertexCount", prediction.vertexCountFormula},
                     {"notes", prediction.notes}};
    if (prediction.sandwichRelative)
        j["captureTime"] = "captDir(G)+1 .. captDir(G)+2";
    else
        j["captureTimeAtLeast"] = prediction.captureTimeLowerBound;
    return j;
}

PursuitGraph reflexivePathDirected(std::uint32_t n) {
    PursuitGraph graph(n, Orientation::Undirected);
    for (std::uint32_t v = 0; v < n; ++v) {
        graph.addEdge(v, v, Protection::Unprotected);
        if (v + 1 < n) graph.addEdge(v, v + 1, Protection::Unprotected);
    }
    return doublyDirect(graph);
}

std::vector<Report> runChecks(const std::string& which, const std::string& corpusPath) {
    std::vector<Report> reports;
    const auto want = [&](const char* name) { return which == name || which == "all"; };

    if (want("upperbound")) {
        struct Named {
            const char* instance;
            PursuitGraph graph;
            int k;
        };
        std::vector<Named> battery;
        battery.push_back({"reflexive-2-path", reflexivePathDirected(2), 1});
        battery.push_back({"reflexive-4-cycle", reflexiveCycleDirected(4), 1});
        battery.push_back({"reflexive-4-cycle", reflexiveCycleDirected(4), 2});
        battery.push_back({"main-1-3-5", buildMain(1, 3, {5}).graph, 1});
        for (const Named& named : battery) {
            const SolveResult result = solve(GameSpec(named.graph, named.k));
            Report report = checkUpperBound(result, named.graph.vertexCount(), named.k);
            report.params["instance"] = named.instance;
            reports.push_back(std::move(report));
        }
    }
    if (want("stable")) {
        const Construction sim = buildUndirectedSimulation(reflexiveCycleDirected(4), 2);
        reports.push_back(checkStableLemma(sim.graph, sim.roles, 2));
    }
    if (want("sandwich")) {
        reports.push_back(checkSandwich(reflexiveCycleDirected(4), 2));
        reports.push_back(checkCanonicalPlay(reflexiveCycleDirected(4), 2));
    }
    if (want("main")) {
        reports.push_back(checkMainConstruction(1, 3, {5}));
        reports.push_back(checkMainConstruction(2, 3, {5, 7}));
    }
    if (want("sc1")) reports.push_back(checkStronglyConnectedK1(3, 5));
    if (want("copwin7")) {
        if (corpusPath.empty()) {
            reports.push_back(checkCopWinBound(nullptr, 7));
        } else {
            std::ifstream corpus(corpusPath);
            if (!corpus) throw std::runtime_error("cannot open " + corpusPath);
            reports.push_back(checkCopWinBound(&corpus, 7));
        }
    }
    return reports;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver and verification harness for pursuit games with protection"};
    app.require_subcommand(1);

    std::string file, output, corpus;
    int cops = 1, maxK = 1, genK = 2;
    std::uint64_t p = 3, q1 = 5;
    std::vector<std::uint64_t> qList;
    bool withTrace = false, desk = false;

    CLI::App* solveCmd = app.add_subcommand("solve", "Solve a game and print the result as JSON");
    solveCmd->add_option("--cops", cops, "Number of cops")->required();
    solveCmd->add_option("--file", file, "Input .pg file")->required();
    solveCmd->add_flag("--trace", withTrace, "Include the optimal-vs-optimal transcript");

    CLI::App* cnumCmd = app.add_subcommand("cnum", "Smallest winning cop count up to --max-k");
    cnumCmd->add_option("--max-k", maxK, "Largest cop count to try")->required();
    cnumCmd->add_option("--file", file, "Input .pg file")->required();

    CLI::App* gen = app.add_subcommand("gen", "Generate a construction as a .pg file");
    gen->require_subcommand(1);
    CLI::App* genMain = gen->add_subcommand("main", "Directed graph with cop number k and capture time >= p*prod(q)-1");
    genMain->add_option("--k", genK, "Cop number")->required();
    genMain->add_option("--p", p, "Robber track prime")->required();
    genMain->add_option("--q", qList, "Cop track primes (comma separated)")->required()->delimiter(',');
    genMain->add_option("-o,--output", output, "Output file")->required();
    CLI::App* genSim = gen->add_subcommand("simulate", "Undirected simulation of a directed game");
    genSim->add_option("--k", genK, "Cop number (>= 2)")->required();
    genSim->add_option("--file", file, "Inner directed .pg file")->required();
    genSim->add_option("-o,--output", output, "Output file")->required();
    CLI::App* genSc1 = gen->add_subcommand("sc1", "Strongly connected cop-number-1 graph");
    genSc1->add_option("--p", p, "Robber track prime")->required();
    genSc1->add_option("--q", q1, "Cop track prime")->required();
    genSc1->add_option("-o,--output", output, "Output file")->required();
    CLI::App* genDouble = gen->add_subcommand("doubledirect", "Replace undirected edges by symmetric arc pairs");
    genDouble->add_option("--file", file, "Undirected .pg file")->required();
    genDouble->add_option("-o,--output", output, "Output file")->required();

    CLI::App* verifyCmd = app.add_subcommand("verify", "Run verification checks; JSON report per line");
    std::string which;
    verifyCmd->add_option("check", which, "One of upperbound|stable|sandwich|main|sc1|copwin7|all")
        ->required()
        ->check(CLI::IsMember({"upperbound", "stable", "sandwich", "main", "sc1", "copwin7", "all"}));
    verifyCmd->add_flag("--desk", desk, "Run the desk-scale parameter set (the default and only set)");
    verifyCmd->add_option("--corpus", corpus, "graph6 corpus for copwin7 (default: internal enumeration)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solveCmd) {
            const PursuitGraph graph = readGraphFile(file);
            const SolvedGame solved{GameSpec(graph, cops)};
            nlohmann::json out = solveResultJson(solved.result());
            if (withTrace) out["trace"] = traceJson(solved.trace());
            std::cout << out.dump() << "\n";
        } else if (*cnumCmd) {
            const PursuitGraph graph = readGraphFile(file);
            const auto k = copNumber(graph, maxK);
            if (k)
                std::cout << *k << "\n";
            else
                std::cout << ">" << maxK << "\n";
        } else if (*gen) {
            if (*genMain) {
                const Construction built = buildMain(genK, p, qList);
                writeGraphFile(output, built);
                std::cout << nlohmann::json{{"file", output},
                                            {"vertices", built.graph.vertexCount()},
                                            {"prediction", predictionJson(built.prediction)}}
                                 .dump()
                          << "\n";
            } else if (*genSim) {
                PursuitGraph inner = readGraphFile(file);
                if (inner.orientation() == Orientation::Undirected) inner = doublyDirect(inner);
                const Construction built = buildUndirectedSimulation(inner, genK);
                writeGraphFile(output, built);
                std::cout << nlohmann::json{{"file", output},
                                            {"vertices", built.graph.vertexCount()},
                                            {"prediction", predictionJson(built.prediction)}}
                                 .dump()
                          << "\n";
            } else if (*genSc1) {
                const Construction built = buildStronglyConnectedK1(p, q1);
                writeGraphFile(output, built);
                std::cout << nlohmann::json{{"file", output},
                                            {"vertices", built.graph.vertexCount()},
                                            {"prediction", predictionJson(built.prediction)}}
                                 .dump()
                          << "\n";
            } else if (*genDouble) {
                const PursuitGraph directed = doublyDirect(readGraphFile(file));
                writeGraphFile(output, directed);
                std::cout << nlohmann::json{{"file", output}, {"vertices", directed.vertexCount()}}.dump()
                          << "\n";
            }
        } else if (*verifyCmd) {
            (void)desk;  // the desk parameters are the defaults
            bool allPassed = true;
            for (const Report& report : runChecks(which, corpus)) {
                std::cout << report.toJson().dump() << std::endl;
                allPassed = allPassed && report.gatePassed();
            }
            return allPassed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
