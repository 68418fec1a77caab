#pragma once

#include "pursuit/game.hpp"
#include "pursuit/graph.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pursuit::test {

/// Independent graph6 encoder, written against the format description and
/// used as the oracle for parseGraph6. Edges are unordered pairs i < j.
inline std::string encodeGraph6(int n, const std::vector<std::pair<int, int>>& edges) {
    std::string out;
    out.push_back(static_cast<char>(63 + n));
    std::vector<bool> bits;
    bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            bool present = false;
            for (const auto& [a, b] : edges)
                if ((a == i && b == j) || (a == j && b == i)) present = true;
            bits.push_back(present);
        }
    while (bits.size() % 6 != 0) bits.push_back(false);
    for (std::size_t group = 0; group < bits.size(); group += 6) {
        int value = 0;
        for (int offset = 0; offset < 6; ++offset) value = value * 2 + (bits[group + offset] ? 1 : 0);
        out.push_back(static_cast<char>(63 + value));
    }
    return out;
}

/// Undirected graph with an unprotected loop on every vertex plus the given
/// unprotected edges: the standard stay-or-move game board.
inline PursuitGraph reflexiveUndirected(int n, const std::vector<std::pair<int, int>>& edges) {
    PursuitGraph graph(n, Orientation::Undirected);
    for (int v = 0; v < n; ++v) graph.addEdge(v, v, Protection::Unprotected);
    for (const auto& [a, b] : edges) graph.addEdge(a, b, Protection::Unprotected);
    return graph;
}

inline PursuitGraph reflexivePath(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return reflexiveUndirected(n, edges);
}

inline PursuitGraph reflexiveCycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return reflexiveUndirected(n, edges);
}

inline bool maskConnected(int n, std::uint32_t mask) {
    std::vector<std::uint32_t> adjacency(n, 0);
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (mask >> bit & 1) {
                adjacency[i] |= 1u << j;
                adjacency[j] |= 1u << i;
            }
    std::uint32_t visited = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (int v = 0; v < n; ++v)
            if (frontier >> v & 1) next |= adjacency[v];
        frontier = next & ~visited;
        visited |= next;
    }
    return visited == (n >= 32 ? ~0u : (1u << n) - 1);
}

inline PursuitGraph reflexiveFromMask(int n, std::uint32_t mask) {
    std::vector<std::pair<int, int>> edges;
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (mask >> bit & 1) edges.emplace_back(i, j);
    return reflexiveUndirected(n, edges);
}

/// Random directed protected graph on 1..maxN vertices, patched until it
/// passes validateForPlay.
inline PursuitGraph randomDirectedProtected(std::mt19937_64& rng, int maxN) {
    const int n = 1 + static_cast<int>(rng() % maxN);
    PursuitGraph graph(n, Orientation::Directed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (coin(rng) < 0.35)
                graph.addArc(u, v, coin(rng) < 0.3 ? Protection::Protected : Protection::Unprotected);
    while (true) {
        const Diagnostics diagnostics = validateForPlay(graph);
        if (diagnostics.playable()) break;
        const Violation& violation = diagnostics.violations.front();
        const auto other = static_cast<std::uint32_t>(rng() % n);
        const auto protection = coin(rng) < 0.3 ? Protection::Protected : Protection::Unprotected;
        const auto tail = violation.kind == ViolationKind::NoOutArc ? violation.vertex : other;
        const auto head = violation.kind == ViolationKind::NoOutArc ? other : violation.vertex;
        if (!graph.hasArc(tail, head)) graph.addArc(tail, head, protection);
    }
    return graph;
}

/// Relabels vertices: vertex v becomes perm[v].
inline PursuitGraph relabel(const PursuitGraph& graph, const std::vector<std::uint32_t>& perm) {
    PursuitGraph out(graph.vertexCount(), graph.orientation());
    for (const Arc& arc : graph.arcs()) {
        if (graph.orientation() == Orientation::Directed)
            out.addArc(perm[arc.tail], perm[arc.head], arc.protection);
        else if (perm[arc.tail] <= perm[arc.head])
            out.addEdge(perm[arc.tail], perm[arc.head], arc.protection);
    }
    for (const auto& [vertex, label] : graph.roles()) out.setRole(perm[vertex], label);
    return out;
}

inline std::vector<std::uint32_t> randomPermutation(std::mt19937_64& rng, std::uint32_t n) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

}  // namespace pursuit::test
