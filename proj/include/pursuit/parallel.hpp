#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace pursuit {

/// Worker count resolution: an explicit request wins, then the
/// PURSUIT_WORKERS environment variable, then hardware concurrency.
int resolveWorkerCount(int requested = 0);

/// Splits [0, size) into fixed chunks and runs fn(chunkIndex, begin, end)
/// across the given number of workers with dynamic scheduling. Chunk
/// boundaries depend only on size and chunkCount, so callers that collect
/// per-chunk results and merge them by chunk index get schedule-independent
/// output.
void forEachChunk(std::uint64_t size, std::size_t chunkCount, int workers,
                  const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

}  // namespace pursuit
