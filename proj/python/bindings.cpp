#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pursuit/constructions.hpp"
#include "pursuit/oracle.hpp"
#include "pursuit/solver.hpp"
#include "pursuit/verify.hpp"

#include <sstream>

namespace py = pybind11;
using namespace pursuit;

namespace {

py::object jsonToPy(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

const char* protectionWord(Protection p) {
    return p == Protection::Protected ? "protected" : "unprotected";
}

Protection protectionFromWord(const std::string& word) {
    if (word == "protected") return Protection::Protected;
    if (word == "unprotected") return Protection::Unprotected;
    throw std::invalid_argument("protection must be 'protected' or 'unprotected'");
}

py::dict constructionDict(const Construction& built) {
    py::dict roles;
    for (std::uint32_t v = 0; v < built.roles.vertexCount(); ++v)
        roles[py::int_(v)] = built.roles.at(v).label();
    py::dict prediction;
    prediction["cop_number"] = built.prediction.predictedCopNumber;
    prediction["vertex_count"] = built.prediction.vertexCountFormula;
    if (built.prediction.sandwichRelative)
        prediction["capture_time"] = "captDir(G)+1 .. captDir(G)+2";
    else
        prediction["capture_time_at_least"] = built.prediction.captureTimeLowerBound;
    prediction["notes"] = built.prediction.notes;

    py::dict out;
    out["graph"] = py::cast(built.graph);
    out["roles"] = roles;
    out["prediction"] = prediction;
    return out;
}

SolveOptions makeOptions(int workers) {
    SolveOptions options;
    options.workers = workers;
    return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact solver and constructions for pursuit games with protected edges";

    py::class_<PursuitGraph>(m, "PursuitGraph")
        .def(py::init([](std::uint32_t vertices, const std::string& mode) {
                 if (mode == "directed") return PursuitGraph(vertices, Orientation::Directed);
                 if (mode == "undirected") return PursuitGraph(vertices, Orientation::Undirected);
                 throw std::invalid_argument("mode must be 'directed' or 'undirected'");
             }),
             py::arg("vertices"), py::arg("mode"))
        .def_property_readonly("vertex_count", &PursuitGraph::vertexCount)
        .def_property_readonly("mode",
                               [](const PursuitGraph& g) {
                                   return g.orientation() == Orientation::Directed ? "directed"
                                                                                   : "undirected";
                               })
        .def_property_readonly("arcs",
                               [](const PursuitGraph& g) {
                                   py::list arcs;
                                   for (const Arc& arc : g.arcs())
                                       arcs.append(py::make_tuple(arc.tail, arc.head,
                                                                  protectionWord(arc.protection)));
                                   return arcs;
                               })
        .def_property_readonly("roles",
                               [](const PursuitGraph& g) {
                                   py::dict roles;
                                   for (const auto& [vertex, label] : g.roles())
                                       roles[py::int_(vertex)] = label;
                                   return roles;
                               })
        .def("add_arc",
             [](PursuitGraph& g, std::uint32_t tail, std::uint32_t head, const std::string& p) {
                 g.addArc(tail, head, protectionFromWord(p));
             },
             py::arg("tail"), py::arg("head"), py::arg("protection") = "unprotected")
        .def("add_edge",
             [](PursuitGraph& g, std::uint32_t u, std::uint32_t v, const std::string& p) {
                 g.addEdge(u, v, protectionFromWord(p));
             },
             py::arg("u"), py::arg("v"), py::arg("protection") = "unprotected")
        .def("set_role", &PursuitGraph::setRole, py::arg("vertex"), py::arg("label"))
        .def("__eq__", [](const PursuitGraph& a, const PursuitGraph& b) { return a == b; })
        .def("__repr__", [](const PursuitGraph& g) {
            std::ostringstream out;
            out << "PursuitGraph(" << g.vertexCount() << " vertices, "
                << (g.orientation() == Orientation::Directed ? "directed" : "undirected") << ", "
                << g.arcs().size() << " arcs)";
            return out.str();
        });

    py::class_<SolveResult>(m, "SolveResult")
        .def_property_readonly("outcome",
                               [](const SolveResult& r) {
                                   return std::string(r.copWin() ? "cop-win" : "robber-win");
                               })
        .def_property_readonly("cop_win", &SolveResult::copWin)
        .def_property_readonly("capture_time",
                               [](const SolveResult& r) -> py::object {
                                   if (!r.copWin()) return py::none();
                                   return py::int_(r.captureTime);
                               })
        .def_readonly("optimal_cop_placement", &SolveResult::optimalCopPlacement)
        .def_readonly("witness_robber_placement", &SolveResult::witnessRobberPlacement)
        .def_readonly("state_count", &SolveResult::stateCount)
        .def_readonly("layer_count", &SolveResult::layerCount)
        .def("__repr__", [](const SolveResult& r) {
            return r.copWin() ? "SolveResult(cop-win, capture_time=" +
                                    std::to_string(r.captureTime) + ")"
                              : std::string("SolveResult(robber-win)");
        });

    m.def("parse_pg", [](const std::string& text) { return parsePursuitGraph(text); },
          py::arg("text"), "Parse a .pg v1 document");
    m.def("serialize_pg", &serializePursuitGraph, py::arg("graph"),
          "Canonical .pg v1 serialization");
    m.def("parse_graph6", [](const std::string& bytes) { return parseGraph6(bytes); },
          py::arg("encoding"),
          "Parse a graph6 encoding into the reflexive all-unprotected game board");
    m.def("doubly_direct", &doublyDirect, py::arg("graph"));
    m.def("validate_for_play",
          [](const PursuitGraph& g) { return validateForPlay(g).playable(); }, py::arg("graph"),
          "True iff every vertex has an in-arc and an out-arc");

    m.def("solve",
          [](const PursuitGraph& g, int cops, int workers) {
              return solve(GameSpec(g, cops), makeOptions(workers));
          },
          py::arg("graph"), py::arg("cops"), py::arg("workers") = 0);
    m.def("oracle_solve",
          [](const PursuitGraph& g, int cops, bool overrideCostGuard) {
              return oracleSolve(GameSpec(g, cops), {overrideCostGuard});
          },
          py::arg("graph"), py::arg("cops"), py::arg("override_cost_guard") = false,
          "Independent reference solver (memoized minimax with an explicit horizon)");
    m.def("cop_number",
          [](const PursuitGraph& g, int maxK) -> py::object {
              const auto k = copNumber(g, maxK);
              if (k) return py::int_(*k);
              return py::none();
          },
          py::arg("graph"), py::arg("max_k"));
    m.def("trace",
          [](const PursuitGraph& g, int cops) {
              return jsonToPy(traceJson(trace(GameSpec(g, cops))));
          },
          py::arg("graph"), py::arg("cops"), "Optimal-vs-optimal playout");

    m.def("primes_from", &primesFrom, py::arg("r"), py::arg("count"));
    m.def("build_main",
          [](int k, std::uint64_t p, const std::vector<std::uint64_t>& q) {
              return constructionDict(buildMain(k, p, q));
          },
          py::arg("k"), py::arg("p"), py::arg("q"));
    m.def("build_simulation",
          [](const PursuitGraph& g, int k) {
              return constructionDict(buildUndirectedSimulation(
                  g.orientation() == Orientation::Undirected ? doublyDirect(g) : g, k));
          },
          py::arg("graph"), py::arg("k"));
    m.def("build_sc1",
          [](std::uint64_t p, std::uint64_t q) {
              return constructionDict(buildStronglyConnectedK1(p, q));
          },
          py::arg("p"), py::arg("q"));
    m.def("stable_positions",
          [](const PursuitGraph& h, int k) {
              return stablePositions(h, RoleMap::fromGraph(h), k);
          },
          py::arg("graph"), py::arg("k"),
          "Stable cop placements of a simulation graph (role labels required)");

    m.def("check_stable_lemma",
          [](const PursuitGraph& h, int k) {
              return jsonToPy(checkStableLemma(h, RoleMap::fromGraph(h), k).toJson());
          },
          py::arg("graph"), py::arg("k"));
    m.def("check_sandwich",
          [](const PursuitGraph& g, int k) { return jsonToPy(checkSandwich(g, k).toJson()); },
          py::arg("graph"), py::arg("k"));
    m.def("check_main_construction",
          [](int k, std::uint64_t p, const std::vector<std::uint64_t>& q) {
              return jsonToPy(checkMainConstruction(k, p, q).toJson());
          },
          py::arg("k"), py::arg("p"), py::arg("q"));
    m.def("check_strongly_connected_k1",
          [](std::uint64_t p, std::uint64_t q) {
              return jsonToPy(checkStronglyConnectedK1(p, q).toJson());
          },
          py::arg("p"), py::arg("q"));
    m.def("check_cop_win_bound",
          [](int n, const py::object& corpus) {
              if (corpus.is_none()) return jsonToPy(checkCopWinBound(nullptr, n).toJson());
              std::istringstream stream(corpus.cast<std::string>());
              return jsonToPy(checkCopWinBound(&stream, n).toJson());
          },
          py::arg("n") = 7, py::arg("corpus") = py::none(),
          "Sweep all connected labeled n-vertex graphs (or a graph6 corpus)");
}
