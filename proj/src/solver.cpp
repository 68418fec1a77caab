#include "pursuit/solver.hpp"
#include "pursuit/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <unordered_map>

namespace pursuit {

namespace {

constexpr std::uint32_t kUnlabeled = 0;
constexpr std::uint32_t kNeverCaught = std::numeric_limits<std::uint32_t>::max();

std::size_t chunkCountFor(std::uint64_t size, int workers) {
    if (workers <= 1) return 1;
    const std::uint64_t byGrain = (size + 1023) / 1024;
    return static_cast<std::size_t>(std::clamp<std::uint64_t>(byGrain, 1, static_cast<std::uint64_t>(workers) * 4));
}

/// Concatenates per-chunk outputs in chunk order (schedule-independent).
std::vector<std::uint64_t> mergeChunks(std::vector<std::vector<std::uint64_t>>& parts) {
    std::size_t total = 0;
    for (const auto& part : parts) total += part.size();
    std::vector<std::uint64_t> merged;
    merged.reserve(total);
    for (auto& part : parts) merged.insert(merged.end(), part.begin(), part.end());
    return merged;
}

}  // namespace

SolvedGame::SolvedGame(GameSpec spec, const SolveOptions& options)
    : spec_(std::move(spec)), index_(spec_.vertexCount(), spec_.copCount()) {
    multisets_ = index_.multisetCount();
    copStates_ = index_.copTurnStates();
    const std::uint64_t total = index_.totalConfigurations();
    if (total > options.maxConfigurations)
        throw StateSpaceError(total, "state space requires " + std::to_string(total) +
                                         " configurations, limit is " +
                                         std::to_string(options.maxConfigurations));
    result_.stateCount = total;
    const int workers = resolveWorkerCount(options.workers);
    buildMembers();
    buildPredecessors(workers);
    runAttractor(workers);
    deriveResult();
}

std::span<const std::uint32_t> SolvedGame::multisetMembers(std::uint64_t multisetRank) const {
    const int k = spec_.copCount();
    return {members_.data() + multisetRank * k, static_cast<std::size_t>(k)};
}

std::span<const std::uint32_t> SolvedGame::predecessorMultisets(std::uint64_t multisetRank) const {
    return {predFlat_.data() + predOff_[multisetRank],
            predFlat_.data() + predOff_[multisetRank + 1]};
}

std::uint32_t SolvedGame::layerOf(std::uint64_t multisetRank, std::uint32_t robber) const {
    return layer_[multisetRank * spec_.vertexCount() + robber].load(std::memory_order_relaxed);
}

std::uint32_t SolvedGame::robberValueOf(std::uint64_t multisetRank, std::uint32_t robber) const {
    return robberValue_[multisetRank * spec_.vertexCount() + robber];
}

void SolvedGame::buildMembers() {
    const int k = spec_.copCount();
    members_.resize(multisets_ * k);
    for (std::uint64_t m = 0; m < multisets_; ++m)
        index_.unrankMultisetInto(m, members_.data() + m * k);
}

void SolvedGame::buildPredecessors(int workers) {
    const int k = spec_.copCount();
    struct ChunkOut {
        std::vector<std::uint32_t> flat;
        std::vector<std::uint32_t> sizes;
    };
    const std::size_t chunks = chunkCountFor(multisets_, workers);
    std::vector<ChunkOut> outs(chunks);

    forEachChunk(multisets_, chunks, workers, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
        ChunkOut& out = outs[chunk];
        out.sizes.reserve(end - begin);
        std::vector<std::span<const std::uint32_t>> choices(k);
        std::vector<std::size_t> odometer(k);
        std::vector<std::uint32_t> candidate(k);
        std::vector<std::uint64_t> ranks;
        for (std::uint64_t m = begin; m < end; ++m) {
            const std::uint32_t* mem = members_.data() + m * k;
            for (int i = 0; i < k; ++i) choices[i] = spec_.inNeighbors(mem[i]);
            std::fill(odometer.begin(), odometer.end(), 0);
            ranks.clear();
            while (true) {
                for (int i = 0; i < k; ++i) candidate[i] = choices[i][odometer[i]];
                std::sort(candidate.begin(), candidate.end());
                ranks.push_back(index_.rankMultiset(candidate));
                int axis = k - 1;
                while (axis >= 0 && ++odometer[axis] == choices[axis].size()) odometer[axis--] = 0;
                if (axis < 0) break;
            }
            std::sort(ranks.begin(), ranks.end());
            ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
            out.sizes.push_back(static_cast<std::uint32_t>(ranks.size()));
            for (std::uint64_t r : ranks) out.flat.push_back(static_cast<std::uint32_t>(r));
        }
    });

    predOff_.assign(multisets_ + 1, 0);
    std::size_t totalFlat = 0;
    for (const ChunkOut& out : outs) totalFlat += out.flat.size();
    predFlat_.reserve(totalFlat);
    std::uint64_t m = 0;
    for (const ChunkOut& out : outs) {
        for (std::uint32_t size : out.sizes) {
            predOff_[m + 1] = predOff_[m] + size;
            ++m;
        }
        predFlat_.insert(predFlat_.end(), out.flat.begin(), out.flat.end());
    }
    assert(m == multisets_);
}

void SolvedGame::runAttractor(int workers) {
    const std::uint32_t n = spec_.vertexCount();
    const int k = spec_.copCount();
    layer_ = std::make_unique<std::atomic<std::uint32_t>[]>(copStates_);
    replyCount_ = std::make_unique<std::atomic<std::uint32_t>[]>(copStates_);
    robberValue_.assign(copStates_, 0);

    forEachChunk(copStates_, chunkCountFor(copStates_, workers), workers,
                 [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
                     for (std::uint64_t idx = begin; idx < end; ++idx) {
                         layer_[idx].store(kUnlabeled, std::memory_order_relaxed);
                         replyCount_[idx].store(
                             static_cast<std::uint32_t>(spec_.outNeighbors(idx % n).size()),
                             std::memory_order_relaxed);
                     }
                 });

    // Layer 1: a cop defends the robber's vertex.
    const std::uint32_t words = spec_.maskWords();
    std::vector<std::uint64_t> frontier;
    {
        const std::size_t chunks = chunkCountFor(multisets_, workers);
        std::vector<std::vector<std::uint64_t>> parts(chunks);
        forEachChunk(multisets_, chunks, workers,
                     [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
                         std::vector<std::uint64_t> scratch(words);
                         for (std::uint64_t m = begin; m < end; ++m) {
                             const std::uint32_t* mem = members_.data() + m * k;
                             std::fill(scratch.begin(), scratch.end(), 0);
                             for (int i = 0; i < k; ++i) {
                                 auto row = spec_.defendedMask(mem[i]);
                                 for (std::uint32_t w = 0; w < words; ++w) scratch[w] |= row[w];
                             }
                             for (std::uint32_t w = 0; w < words; ++w) {
                                 std::uint64_t bits = scratch[w];
                                 while (bits) {
                                     const std::uint32_t r = w * 64 + std::countr_zero(bits);
                                     bits &= bits - 1;
                                     const std::uint64_t idx = m * n + r;
                                     layer_[idx].store(1, std::memory_order_relaxed);
                                     parts[chunk].push_back(idx);
                                 }
                             }
                         }
                     });
        frontier = mergeChunks(parts);
    }

    std::uint32_t t = 1;
    while (!frontier.empty()) {
        result_.layerCount = t;

        // Newly labeled cop states eliminate robber replies; an intermediate
        // whose counter reaches zero is decided at value t.
        std::vector<std::uint64_t> finished;
        {
            const std::size_t chunks = chunkCountFor(frontier.size(), workers);
            std::vector<std::vector<std::uint64_t>> parts(chunks);
            forEachChunk(frontier.size(), chunks, workers,
                         [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
                             for (std::uint64_t i = begin; i < end; ++i) {
                                 const std::uint64_t idx = frontier[i];
                                 const std::uint64_t base = idx - idx % n;
                                 for (std::uint32_t rp : spec_.inNeighbors(static_cast<std::uint32_t>(idx % n))) {
                                     const std::uint64_t ridx = base + rp;
                                     if (replyCount_[ridx].fetch_sub(1, std::memory_order_relaxed) == 1) {
                                         robberValue_[ridx] = t;
                                         parts[chunk].push_back(ridx);
                                     }
                                 }
                             }
                         });
            finished = mergeChunks(parts);
            std::sort(finished.begin(), finished.end());
        }

        // Decided intermediates label their unlabeled cop predecessors.
        std::vector<std::uint64_t> next;
        {
            const std::size_t chunks = chunkCountFor(finished.size(), workers);
            std::vector<std::vector<std::uint64_t>> parts(chunks);
            forEachChunk(finished.size(), chunks, workers,
                         [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
                             for (std::uint64_t i = begin; i < end; ++i) {
                                 const std::uint64_t ridx = finished[i];
                                 const std::uint32_t r = static_cast<std::uint32_t>(ridx % n);
                                 for (std::uint32_t pm : predecessorMultisets(ridx / n)) {
                                     const std::uint64_t cidx = static_cast<std::uint64_t>(pm) * n + r;
                                     std::uint32_t expected = kUnlabeled;
                                     if (layer_[cidx].load(std::memory_order_relaxed) == kUnlabeled &&
                                         layer_[cidx].compare_exchange_strong(expected, t + 1,
                                                                              std::memory_order_relaxed))
                                         parts[chunk].push_back(cidx);
                                 }
                             }
                         });
            next = mergeChunks(parts);
            std::sort(next.begin(), next.end());
        }

        frontier.swap(next);
        ++t;
    }
}

void SolvedGame::deriveResult() {
    const std::uint32_t n = spec_.vertexCount();
    std::uint64_t bestM = 0;
    std::uint32_t bestValue = 0, bestR = 0;
    bool haveBest = false;
    for (std::uint64_t m = 0; m < multisets_; ++m) {
        std::uint32_t worst = 0, worstR = 0;
        for (std::uint32_t r = 0; r < n; ++r) {
            const std::uint32_t l = layer_[m * n + r].load(std::memory_order_relaxed);
            if (l == kUnlabeled) {
                worst = kNeverCaught;
                worstR = r;
                break;
            }
            if (l > worst) {
                worst = l;
                worstR = r;
            }
        }
        if (!haveBest || worst < bestValue) {
            haveBest = true;
            bestValue = worst;
            bestM = m;
            bestR = worstR;
        }
    }
    auto mem = multisetMembers(bestM);
    result_.optimalCopPlacement.assign(mem.begin(), mem.end());
    result_.witnessRobberPlacement = bestR;
    if (bestValue == kNeverCaught) {
        result_.outcome = SolveResult::Outcome::RobberWin;
        result_.captureTime = 0;
    } else {
        result_.outcome = SolveResult::Outcome::CopWin;
        result_.captureTime = bestValue;
    }
}

Strategy SolvedGame::extractStrategy() const {
    const std::uint32_t n = spec_.vertexCount();
    Strategy strategy;
    strategy.vertexCount = n;
    strategy.copChoice.resize(copStates_);
    strategy.robberChoice.resize(copStates_);

    // Successor relation = transpose of the predecessor CSR; predecessors are
    // visited in ascending order, so each successor list comes out sorted.
    std::vector<std::uint64_t> succOff(multisets_ + 1, 0);
    for (std::uint64_t m = 0; m < multisets_; ++m)
        for (std::uint32_t pm : predecessorMultisets(m)) ++succOff[pm + 1];
    for (std::uint64_t m = 0; m < multisets_; ++m) succOff[m + 1] += succOff[m];
    std::vector<std::uint32_t> succFlat(predFlat_.size());
    {
        std::vector<std::uint64_t> cursor(succOff.begin(), succOff.end() - 1);
        for (std::uint64_t m = 0; m < multisets_; ++m)
            for (std::uint32_t pm : predecessorMultisets(m))
                succFlat[cursor[pm]++] = static_cast<std::uint32_t>(m);
    }

    for (std::uint64_t m = 0; m < multisets_; ++m) {
        for (std::uint32_t r = 0; r < n; ++r) {
            const std::uint64_t idx = m * n + r;
            const std::uint32_t l = layer_[idx].load(std::memory_order_relaxed);
            Strategy::CopChoice& choice = strategy.copChoice[idx];
            if (l == kUnlabeled) {
                choice.defined = false;
            } else if (l == 1) {
                choice.defined = true;
                choice.capture = true;
            } else {
                choice.defined = true;
                choice.capture = false;
                bool found = false;
                for (std::uint64_t s = succOff[m]; s < succOff[m + 1] && !found; ++s) {
                    const std::uint32_t succ = succFlat[s];
                    if (robberValue_[static_cast<std::uint64_t>(succ) * n + r] == l - 1) {
                        choice.successorMultiset = succ;
                        found = true;
                    }
                }
                assert(found);
            }

            // Robber reply from the intermediate (m, r): prefer never-caught
            // states, then the deepest layer; out-lists are ascending, so the
            // first hit is the smallest-ranked choice.
            std::uint32_t bestReply = 0, bestLayer = 0;
            bool haveReply = false, haveEscape = false;
            for (std::uint32_t reply : spec_.outNeighbors(r)) {
                const std::uint32_t rl = layer_[m * n + reply].load(std::memory_order_relaxed);
                if (rl == kUnlabeled) {
                    bestReply = reply;
                    haveEscape = true;
                    break;
                }
                if (!haveReply || rl > bestLayer) {
                    haveReply = true;
                    bestLayer = rl;
                    bestReply = reply;
                }
            }
            (void)haveEscape;
            strategy.robberChoice[idx] = bestReply;
        }
    }
    return strategy;
}

TraceTranscript SolvedGame::trace() const {
    const std::uint32_t n = spec_.vertexCount();
    const int k = spec_.copCount();

    auto successorRanks = [&](std::uint64_t m) {
        std::vector<std::span<const std::uint32_t>> choices(k);
        const std::uint32_t* mem = members_.data() + m * k;
        for (int i = 0; i < k; ++i) choices[i] = spec_.outNeighbors(mem[i]);
        std::vector<std::size_t> odometer(k, 0);
        std::vector<std::uint32_t> candidate(k);
        std::vector<std::uint64_t> ranks;
        while (true) {
            for (int i = 0; i < k; ++i) candidate[i] = choices[i][odometer[i]];
            std::sort(candidate.begin(), candidate.end());
            ranks.push_back(index_.rankMultiset(candidate));
            int axis = k - 1;
            while (axis >= 0 && ++odometer[axis] == choices[axis].size()) odometer[axis--] = 0;
            if (axis < 0) break;
        }
        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        return ranks;
    };

    auto robberReply = [&](std::uint64_t m, std::uint32_t r) {
        std::uint32_t bestReply = 0, bestLayer = 0;
        bool haveReply = false;
        for (std::uint32_t reply : spec_.outNeighbors(r)) {
            const std::uint32_t rl = layer_[m * n + reply].load(std::memory_order_relaxed);
            if (rl == kUnlabeled) return reply;
            if (!haveReply || rl > bestLayer) {
                haveReply = true;
                bestLayer = rl;
                bestReply = reply;
            }
        }
        return bestReply;
    };

    TraceTranscript transcript;
    std::uint64_t m = index_.rankMultiset(result_.optimalCopPlacement);
    std::uint32_t r = result_.witnessRobberPlacement;
    std::unordered_map<std::uint64_t, std::uint32_t> seen;
    std::uint32_t round = 1;
    while (true) {
        const std::uint64_t idx = m * n + r;
        if (auto it = seen.find(idx); it != seen.end()) {
            transcript.end = TraceTranscript::End::Cycle;
            transcript.cycleStartRound = it->second;
            break;
        }
        seen.emplace(idx, round);
        auto mem = multisetMembers(m);
        transcript.steps.push_back({round, {mem.begin(), mem.end()}, r});

        const std::uint32_t l = layer_[idx].load(std::memory_order_relaxed);
        if (l == 1) {
            transcript.end = TraceTranscript::End::Capture;
            break;
        }
        auto ranks = successorRanks(m);
        std::uint64_t chosen = ranks.front();
        if (l != kUnlabeled) {
            for (std::uint64_t candidate : ranks) {
                if (robberValue_[candidate * n + r] == l - 1) {
                    chosen = candidate;
                    break;
                }
            }
        }
        m = chosen;
        r = robberReply(m, r);
        ++round;
    }
    return transcript;
}

SolveResult solve(const GameSpec& spec, const SolveOptions& options) {
    return SolvedGame(spec, options).result();
}

std::optional<int> copNumber(const PursuitGraph& graph, int kMax, const SolveOptions& options) {
    if (kMax < 1) throw std::invalid_argument("kMax must be at least 1");
    for (int k = 1; k <= kMax; ++k) {
        if (solve(GameSpec(graph, k), options).copWin()) return k;
    }
    return std::nullopt;
}

Strategy extractStrategy(const GameSpec& spec, const SolveOptions& options) {
    return SolvedGame(spec, options).extractStrategy();
}

TraceTranscript trace(const GameSpec& spec, const SolveOptions& options) {
    return SolvedGame(spec, options).trace();
}

}  // namespace pursuit
