#include "pursuit/oracle.hpp"

#include <algorithm>
#include <limits>

namespace pursuit {

namespace {

constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();

/// Budget-tagged memo. A finite value is the exact game value (a bounded
/// optimum that fits its bound is the optimum); an infinite value only
/// certifies "longer than the budget it was computed with".
struct Memo {
    std::uint32_t value = 0;
    std::uint32_t budget = 0;  // 0 = unset
};

class Minimax {
public:
    Minimax(const GameSpec& spec, const ConfigurationIndex& index)
        : spec_(spec), index_(index), n_(spec.vertexCount()) {
        copMemo_.resize(index.copTurnStates());
        robberMemo_.resize(index.copTurnStates());
        successorCache_.resize(index.multisetCount());
        members_.resize(index.multisetCount() * spec.copCount());
        for (std::uint64_t m = 0; m < index.multisetCount(); ++m)
            index.unrankMultisetInto(m, members_.data() + m * spec.copCount());
    }

    /// Rounds to capture from the cop-turn configuration within the budget;
    /// kInfinite when every branch exceeds it.
    std::uint32_t copTurn(std::uint64_t m, std::uint32_t robber, std::uint32_t budget) {
        if (budget == 0) return kInfinite;
        Memo& memo = copMemo_[m * n_ + robber];
        if (memo.budget != 0) {
            if (memo.value != kInfinite) return memo.value <= budget ? memo.value : kInfinite;
            if (budget <= memo.budget) return kInfinite;
        }
        std::uint32_t value;
        if (captureAvailable(m, robber)) {
            value = 1;
        } else {
            value = kInfinite;
            for (std::uint64_t successor : successors(m)) {
                const std::uint32_t reply = robberTurn(successor, robber, budget);
                if (reply != kInfinite) value = std::min(value, 1 + reply);
            }
        }
        memo = {value, budget};
        return value;
    }

private:
    std::uint32_t robberTurn(std::uint64_t m, std::uint32_t robber, std::uint32_t budget) {
        Memo& memo = robberMemo_[m * n_ + robber];
        if (memo.budget != 0) {
            if (memo.value != kInfinite) return memo.value <= budget - 1 ? memo.value : kInfinite;
            if (budget <= memo.budget) return kInfinite;
        }
        std::uint32_t value = 0;
        for (std::uint32_t reply : spec_.outNeighbors(robber)) {
            const std::uint32_t continuation = copTurn(m, reply, budget - 1);
            if (continuation == kInfinite) {
                value = kInfinite;
                break;
            }
            value = std::max(value, continuation);
        }
        memo = {value, budget};
        return value;
    }

    bool captureAvailable(std::uint64_t m, std::uint32_t robber) const {
        const std::uint32_t* mem = members_.data() + m * spec_.copCount();
        for (int i = 0; i < spec_.copCount(); ++i)
            if (spec_.defends(mem[i], robber)) return true;
        return false;
    }

    const std::vector<std::uint64_t>& successors(std::uint64_t m) {
        std::optional<std::vector<std::uint64_t>>& cached = successorCache_[m];
        if (!cached) {
            Configuration c;
            const std::uint32_t* mem = members_.data() + m * spec_.copCount();
            c.copPositions.assign(mem, mem + spec_.copCount());
            c.robberPosition = 0;
            c.turn = Turn::Cop;
            std::vector<std::uint64_t> ranks;
            for (const auto& multiset : enumerateCopMoves(spec_, c).successors)
                ranks.push_back(index_.rankMultiset(multiset));
            cached = std::move(ranks);
        }
        return *cached;
    }

    const GameSpec& spec_;
    const ConfigurationIndex& index_;
    std::uint32_t n_;
    std::vector<Memo> copMemo_, robberMemo_;
    std::vector<std::optional<std::vector<std::uint64_t>>> successorCache_;
    std::vector<std::uint32_t> members_;
};

}  // namespace

SolveResult oracleSolve(const GameSpec& spec, const OracleOptions& options) {
    if (!options.overrideCostGuard && (spec.vertexCount() > 8 || spec.copCount() > 2))
        throw OracleGuardError("oracleSolve cost guard: n = " + std::to_string(spec.vertexCount()) +
                               ", k = " + std::to_string(spec.copCount()) +
                               " exceeds n <= 8, k <= 2 (set overrideCostGuard to run anyway)");

    const ConfigurationIndex index(spec.vertexCount(), spec.copCount());
    const std::uint64_t horizon64 = index.copTurnStates() + 1;
    if (horizon64 > kInfinite - 1)
        throw StateSpaceError(index.totalConfigurations(), "oracle horizon exceeds 32-bit rounds");
    const std::uint32_t horizon = static_cast<std::uint32_t>(horizon64);
    const std::uint32_t n = spec.vertexCount();

    Minimax minimax(spec, index);

    SolveResult result;
    result.stateCount = index.totalConfigurations();
    result.layerCount = 0;

    std::uint64_t bestM = 0;
    std::uint32_t bestValue = 0, bestR = 0;
    bool haveBest = false;
    for (std::uint64_t m = 0; m < index.multisetCount(); ++m) {
        std::uint32_t worst = 0, worstR = 0;
        for (std::uint32_t r = 0; r < n; ++r) {
            const std::uint32_t value = minimax.copTurn(m, r, horizon);
            if (value == kInfinite) {
                worst = kInfinite;
                worstR = r;
                break;
            }
            if (value > worst) {
                worst = value;
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

    result.optimalCopPlacement = index.unrankMultiset(bestM);
    result.witnessRobberPlacement = bestR;
    if (bestValue == kInfinite) {
        result.outcome = SolveResult::Outcome::RobberWin;
        result.captureTime = 0;
    } else {
        result.outcome = SolveResult::Outcome::CopWin;
        result.captureTime = bestValue;
    }
    return result;
}

}  // namespace pursuit
