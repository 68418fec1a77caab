#pragma once

#include "pursuit/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pursuit {

/// Quantitative claims attached to a generated graph.
struct Prediction {
    int predictedCopNumber = 0;
    std::uint64_t vertexCountFormula = 0;
    /// Absolute capture-time lower bound; 0 when the bound is relative.
    std::uint64_t captureTimeLowerBound = 0;
    /// Capture time lies in [captDir(G)+1, captDir(G)+2] of the inner graph.
    bool sandwichRelative = false;
    std::string notes;
};

enum class RoleKind : std::uint8_t {
    ResetClique,      // s_i in the directed constructions
    Core,             // s_i in the undirected simulation
    Wing,             // t^i_j
    CopVertex,        // kappa(v; i, j)
    RobberVertex,     // rho(v; i)
    CopStarter,       // c*_j
    RobberStarter,    // r*_i
    CopTrack,         // c_{i,j}
    CopTrackTwin,     // c'_{i,j}
    RobberTrack,      // r_j
    RobberTrackTwin,  // r'_j
    RobberTrackEnd,   // r^i_{p-1}
    Escape,           // x_i
    Omega,
    Psi,
};

struct Role {
    RoleKind kind;
    int v = -1;  // inner-graph vertex (CopVertex / RobberVertex)
    int i = -1;
    int j = -1;

    std::string label() const;
    static std::optional<Role> parse(std::string_view label);

    friend bool operator==(const Role&, const Role&) = default;
};

/// Total vertex -> role assignment for a generated graph.
class RoleMap {
public:
    explicit RoleMap(std::uint32_t vertexCount);

    std::uint32_t vertexCount() const { return static_cast<std::uint32_t>(roles_.size()); }
    void set(std::uint32_t vertex, Role role);
    const Role& at(std::uint32_t vertex) const;
    bool total() const;

    std::vector<std::uint32_t> verticesOf(RoleKind kind) const;
    std::size_t countOf(RoleKind kind) const;
    std::optional<std::uint32_t> find(const Role& role) const;

    /// Writes the labels into the graph's role map (for .pg emission).
    void applyTo(PursuitGraph& graph) const;
    /// Rebuilds the map from a graph's role labels; throws GraphError if a
    /// label does not parse or the map is not total.
    static RoleMap fromGraph(const PursuitGraph& graph);

private:
    std::vector<std::optional<Role>> roles_;
};

struct Construction {
    PursuitGraph graph;
    RoleMap roles;
    Prediction prediction;
};

/// Consecutive primes starting at the r-th smallest (1-based: primesFrom(1, 3)
/// = 2, 3, 5), via a deterministic sieve.
std::vector<std::uint64_t> primesFrom(int r, int count);

bool isPrime(std::uint64_t n);

/// The directed graph with reset clique, k cop tracks of lengths q[i], a
/// robber track of period p, escape vertices, and omega. Cop number k,
/// capture time at least p * q[0] * ... * q[k-1] - 1.
Construction buildMain(int k, std::uint64_t p, const std::vector<std::uint64_t>& q);

/// The reflexive undirected graph H simulating the directed protected game on
/// g with k >= 2 cops: cop number k and capt(H) in [captDir(g)+1, captDir(g)+2].
Construction buildUndirectedSimulation(const PursuitGraph& g, int k);

/// The strongly connected reflexive directed graph with cop number 1 and
/// capture time at least p*q - 1: twin cop/robber tracks, cross arcs that
/// force the robber onto the opposite parity, and a psi detour back to
/// omega. Every loop is protected except omega's.
Construction buildStronglyConnectedK1(std::uint64_t p, std::uint64_t q);

/// Cop placements in a simulation graph H that defend the whole core: the
/// all-starter multiset plus, per layer i, every choice of one j-vertex of
/// C_i for each j. Sorted multisets in lexicographic order.
std::vector<std::vector<std::uint32_t>> stablePositions(const PursuitGraph& h, const RoleMap& roles,
                                                        int k);

}  // namespace pursuit
