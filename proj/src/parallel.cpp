#include "pursuit/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace pursuit {

int resolveWorkerCount(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PURSUIT_WORKERS")) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
        if (ec == std::errc() && *ptr == '\0' && value > 0) return value;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void forEachChunk(std::uint64_t size, std::size_t chunkCount, int workers,
                  const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (size == 0) return;
    if (chunkCount == 0) chunkCount = 1;
    const std::uint64_t chunkSize = (size + chunkCount - 1) / chunkCount;
    chunkCount = static_cast<std::size_t>((size + chunkSize - 1) / chunkSize);

    auto runChunk = [&](std::size_t chunk) {
        const std::uint64_t begin = chunk * chunkSize;
        fn(chunk, begin, std::min(begin + chunkSize, size));
    };

    if (workers <= 1 || chunkCount == 1) {
        for (std::size_t chunk = 0; chunk < chunkCount; ++chunk) runChunk(chunk);
        return;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t chunk = next.fetch_add(1);
            if (chunk >= chunkCount) return;
            runChunk(chunk);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t poolSize = std::min<std::size_t>(workers, chunkCount) - 1;
    pool.reserve(poolSize);
    for (std::size_t i = 0; i < poolSize; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
}

}  // namespace pursuit
