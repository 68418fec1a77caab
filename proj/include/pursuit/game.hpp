#pragma once

#include "pursuit/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pursuit {

enum class Turn : std::uint8_t { Cop, Robber };

/// A game state: a multiset of k cop positions (kept sorted), the robber's
/// position, and whose turn it is. Cops are interchangeable.
struct Configuration {
    std::vector<std::uint32_t> copPositions;
    std::uint32_t robberPosition = 0;
    Turn turn = Turn::Cop;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Thrown when a requested state space exceeds the configured limit or
/// overflows the counting arithmetic. Carries the required configuration
/// count when it is representable.
class StateSpaceError : public std::runtime_error {
public:
    StateSpaceError(std::uint64_t requiredConfigurations, const std::string& message)
        : std::runtime_error(message), required_(requiredConfigurations) {}
    std::uint64_t requiredConfigurations() const { return required_; }

private:
    std::uint64_t required_;
};

/// A playable instance: the graph in directed internal form (undirected
/// inputs pass through doublyDirect) plus the cop count. Validates on
/// construction and precomputes adjacency. Immutable afterwards.
class GameSpec {
public:
    GameSpec(PursuitGraph graph, int copCount);

    const PursuitGraph& graph() const { return graph_; }
    int copCount() const { return copCount_; }
    std::uint32_t vertexCount() const { return graph_.vertexCount(); }

    std::span<const std::uint32_t> outNeighbors(std::uint32_t v) const;
    std::span<const std::uint32_t> inNeighbors(std::uint32_t v) const;

    /// Heads of unprotected out-arcs of v: the vertices a cop at v defends.
    std::span<const std::uint32_t> defendedFrom(std::uint32_t v) const;

    /// True iff there is an unprotected arc cop -> target.
    bool defends(std::uint32_t cop, std::uint32_t target) const;

    /// Bitmap row (ceil(n/64) words) of the vertices defended from v.
    std::span<const std::uint64_t> defendedMask(std::uint32_t v) const;
    std::uint32_t maskWords() const { return maskWords_; }

    void requireValid(const Configuration& c, Turn expected) const;

private:
    PursuitGraph graph_;
    int copCount_;
    std::uint32_t maskWords_;
    std::vector<std::uint32_t> outFlat_, inFlat_, defFlat_;
    std::vector<std::uint32_t> outOff_, inOff_, defOff_;
    std::vector<std::uint64_t> defMask_;
};

struct CopMoves {
    /// True iff some cop defends the robber's vertex (an unprotected arc from
    /// a cop position to the robber). A capturing move ends the game; it is
    /// not part of the successor list.
    bool captureAvailable = false;
    /// Deduplicated multisets reachable when every cop simultaneously follows
    /// one out-arc. Each multiset sorted; the list sorted lexicographically.
    std::vector<std::vector<std::uint32_t>> successors;
};

CopMoves enumerateCopMoves(const GameSpec& spec, const Configuration& c);

/// Heads of all out-arcs from the robber's position, any protection,
/// including arcs into cop-occupied vertices.
std::vector<std::uint32_t> enumerateRobberMoves(const GameSpec& spec, const Configuration& c);

/// Dense bijection between configurations and [0, 2 * n * C(n+k-1, k)).
/// Cop multisets are ranked lexicographically on their sorted form via the
/// combinatorial number system; cop-turn configurations come first.
class ConfigurationIndex {
public:
    ConfigurationIndex(std::uint32_t vertexCount, int copCount);

    std::uint32_t vertexCount() const { return n_; }
    int copCount() const { return k_; }

    std::uint64_t multisetCount() const;                 // C(n+k-1, k)
    std::uint64_t copTurnStates() const;                 // n * multisetCount
    std::uint64_t totalConfigurations() const;           // 2 * copTurnStates

    std::uint64_t rankMultiset(std::span<const std::uint32_t> sorted) const;
    std::vector<std::uint32_t> unrankMultiset(std::uint64_t rank) const;
    void unrankMultisetInto(std::uint64_t rank, std::uint32_t* out) const;

    std::uint64_t rank(const Configuration& c) const;
    Configuration unrank(std::uint64_t rank) const;

    /// count(size, m) = number of multisets of the given size over m values.
    std::uint64_t count(int size, std::uint32_t m) const { return table_[static_cast<std::size_t>(size) * (n_ + 1) + m]; }

private:
    std::uint32_t n_;
    int k_;
    std::vector<std::uint64_t> table_;
};

std::uint64_t rankConfiguration(const GameSpec& spec, const Configuration& c);
Configuration unrankConfiguration(const GameSpec& spec, std::uint64_t rank);

}  // namespace pursuit
