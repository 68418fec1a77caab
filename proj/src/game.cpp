#include "pursuit/game.hpp"

#include <algorithm>
#include <limits>

namespace pursuit {

namespace {

void buildCsr(std::uint32_t n, const std::vector<Arc>& arcs, bool reverse, bool unprotectedOnly,
              std::vector<std::uint32_t>& flat, std::vector<std::uint32_t>& off) {
    off.assign(n + 1, 0);
    for (const Arc& arc : arcs) {
        if (unprotectedOnly && arc.protection != Protection::Unprotected) continue;
        ++off[(reverse ? arc.head : arc.tail) + 1];
    }
    for (std::uint32_t v = 0; v < n; ++v) off[v + 1] += off[v];
    flat.resize(off[n]);
    std::vector<std::uint32_t> cursor(off.begin(), off.end() - 1);
    for (const Arc& arc : arcs) {
        if (unprotectedOnly && arc.protection != Protection::Unprotected) continue;
        const std::uint32_t from = reverse ? arc.head : arc.tail;
        const std::uint32_t to = reverse ? arc.tail : arc.head;
        flat[cursor[from]++] = to;
    }
    for (std::uint32_t v = 0; v < n; ++v)
        std::sort(flat.begin() + off[v], flat.begin() + off[v + 1]);
}

}  // namespace

GameSpec::GameSpec(PursuitGraph graph, int copCount)
    : graph_(graph.orientation() == Orientation::Undirected ? doublyDirect(graph) : std::move(graph)),
      copCount_(copCount) {
    if (copCount_ < 1) throw std::invalid_argument("cop count must be at least 1");
    if (graph_.vertexCount() < 1) throw std::invalid_argument("game needs at least one vertex");
    Diagnostics diagnostics = validateForPlay(graph_);
    if (!diagnostics.playable())
        throw std::invalid_argument("graph is not playable: " +
                                    std::to_string(diagnostics.violations.size()) +
                                    " validation violation(s)");
    const std::uint32_t n = graph_.vertexCount();
    buildCsr(n, graph_.arcs(), false, false, outFlat_, outOff_);
    buildCsr(n, graph_.arcs(), true, false, inFlat_, inOff_);
    buildCsr(n, graph_.arcs(), false, true, defFlat_, defOff_);
    maskWords_ = (n + 63) / 64;
    defMask_.assign(static_cast<std::size_t>(n) * maskWords_, 0);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t target : defendedFrom(v))
            defMask_[static_cast<std::size_t>(v) * maskWords_ + target / 64] |= 1ull << (target % 64);
}

std::span<const std::uint32_t> GameSpec::outNeighbors(std::uint32_t v) const {
    return {outFlat_.data() + outOff_[v], outOff_[v + 1] - outOff_[v]};
}

std::span<const std::uint32_t> GameSpec::inNeighbors(std::uint32_t v) const {
    return {inFlat_.data() + inOff_[v], inOff_[v + 1] - inOff_[v]};
}

std::span<const std::uint32_t> GameSpec::defendedFrom(std::uint32_t v) const {
    return {defFlat_.data() + defOff_[v], defOff_[v + 1] - defOff_[v]};
}

bool GameSpec::defends(std::uint32_t cop, std::uint32_t target) const {
    return defMask_[static_cast<std::size_t>(cop) * maskWords_ + target / 64] >> (target % 64) & 1;
}

std::span<const std::uint64_t> GameSpec::defendedMask(std::uint32_t v) const {
    return {defMask_.data() + static_cast<std::size_t>(v) * maskWords_, maskWords_};
}

void GameSpec::requireValid(const Configuration& c, Turn expected) const {
    if (c.turn != expected)
        throw std::invalid_argument("configuration has the wrong side to move");
    if (c.copPositions.size() != static_cast<std::size_t>(copCount_))
        throw std::invalid_argument("configuration has the wrong number of cops");
    if (!std::is_sorted(c.copPositions.begin(), c.copPositions.end()))
        throw std::invalid_argument("cop positions must be sorted");
    for (std::uint32_t cop : c.copPositions)
        if (cop >= vertexCount()) throw std::invalid_argument("cop position out of range");
    if (c.robberPosition >= vertexCount())
        throw std::invalid_argument("robber position out of range");
}

CopMoves enumerateCopMoves(const GameSpec& spec, const Configuration& c) {
    spec.requireValid(c, Turn::Cop);
    CopMoves moves;
    for (std::uint32_t cop : c.copPositions)
        if (spec.defends(cop, c.robberPosition)) {
            moves.captureAvailable = true;
            break;
        }

    const int k = spec.copCount();
    std::vector<std::span<const std::uint32_t>> choices(k);
    for (int i = 0; i < k; ++i) choices[i] = spec.outNeighbors(c.copPositions[i]);

    std::vector<std::size_t> odometer(k, 0);
    std::vector<std::uint32_t> candidate(k);
    while (true) {
        for (int i = 0; i < k; ++i) candidate[i] = choices[i][odometer[i]];
        std::sort(candidate.begin(), candidate.end());
        moves.successors.push_back(candidate);
        int axis = k - 1;
        while (axis >= 0 && ++odometer[axis] == choices[axis].size()) odometer[axis--] = 0;
        if (axis < 0) break;
    }
    std::sort(moves.successors.begin(), moves.successors.end());
    moves.successors.erase(std::unique(moves.successors.begin(), moves.successors.end()),
                           moves.successors.end());
    return moves;
}

std::vector<std::uint32_t> enumerateRobberMoves(const GameSpec& spec, const Configuration& c) {
    spec.requireValid(c, Turn::Robber);
    auto neighbors = spec.outNeighbors(c.robberPosition);
    return {neighbors.begin(), neighbors.end()};
}

ConfigurationIndex::ConfigurationIndex(std::uint32_t vertexCount, int copCount)
    : n_(vertexCount), k_(copCount) {
    if (copCount < 1) throw std::invalid_argument("cop count must be at least 1");
    table_.assign(static_cast<std::size_t>(k_ + 1) * (n_ + 1), 0);
    for (std::uint32_t m = 0; m <= n_; ++m) table_[m] = 1;
    for (int size = 1; size <= k_; ++size) {
        for (std::uint32_t m = 1; m <= n_; ++m) {
            const unsigned __int128 value =
                static_cast<unsigned __int128>(count(size - 1, m)) + count(size, m - 1);
            if (value > std::numeric_limits<std::uint64_t>::max() / (2ull * std::max(n_, 1u)))
                throw StateSpaceError(std::numeric_limits<std::uint64_t>::max(),
                                      "configuration count overflows 64-bit arithmetic");
            table_[static_cast<std::size_t>(size) * (n_ + 1) + m] = static_cast<std::uint64_t>(value);
        }
    }
}

std::uint64_t ConfigurationIndex::multisetCount() const { return count(k_, n_); }

std::uint64_t ConfigurationIndex::copTurnStates() const { return multisetCount() * n_; }

std::uint64_t ConfigurationIndex::totalConfigurations() const { return 2 * copTurnStates(); }

std::uint64_t ConfigurationIndex::rankMultiset(std::span<const std::uint32_t> sorted) const {
    std::uint64_t rank = 0;
    std::uint32_t lo = 0;
    int remaining = k_;
    for (std::uint32_t x : sorted) {
        // multisets of the remaining size over [lo, n) whose first element is < x
        rank += count(remaining, n_ - lo) - count(remaining, n_ - x);
        lo = x;
        --remaining;
    }
    return rank;
}

void ConfigurationIndex::unrankMultisetInto(std::uint64_t rank, std::uint32_t* out) const {
    std::uint32_t lo = 0;
    for (int i = 0; i < k_; ++i) {
        const int remaining = k_ - i;
        std::uint32_t x = lo;
        while (true) {
            const std::uint64_t startingAtX = count(remaining - 1, n_ - x);
            if (rank < startingAtX) break;
            rank -= startingAtX;
            ++x;
        }
        out[i] = x;
        lo = x;
    }
}

std::vector<std::uint32_t> ConfigurationIndex::unrankMultiset(std::uint64_t rank) const {
    if (rank >= multisetCount()) throw std::invalid_argument("multiset rank out of range");
    std::vector<std::uint32_t> out(k_);
    unrankMultisetInto(rank, out.data());
    return out;
}

std::uint64_t ConfigurationIndex::rank(const Configuration& c) const {
    const std::uint64_t turnBit = c.turn == Turn::Robber ? 1 : 0;
    return turnBit * copTurnStates() + rankMultiset(c.copPositions) * n_ + c.robberPosition;
}

Configuration ConfigurationIndex::unrank(std::uint64_t rank) const {
    if (rank >= totalConfigurations()) throw std::invalid_argument("configuration rank out of range");
    Configuration c;
    c.turn = rank >= copTurnStates() ? Turn::Robber : Turn::Cop;
    rank %= copTurnStates();
    c.robberPosition = static_cast<std::uint32_t>(rank % n_);
    c.copPositions = unrankMultiset(rank / n_);
    return c;
}

std::uint64_t rankConfiguration(const GameSpec& spec, const Configuration& c) {
    spec.requireValid(c, c.turn);
    return ConfigurationIndex(spec.vertexCount(), spec.copCount()).rank(c);
}

Configuration unrankConfiguration(const GameSpec& spec, std::uint64_t rank) {
    return ConfigurationIndex(spec.vertexCount(), spec.copCount()).unrank(rank);
}

}  // namespace pursuit
