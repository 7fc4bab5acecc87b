#ifndef RAM_PARALLEL_HPP_
#define RAM_PARALLEL_HPP_

#include <cstdint>
#include <functional>

namespace ram {

// 0 means "all hardware threads".
int resolve_threads(int requested);

// Hands out consecutive chunks of [0, count) to `threads` workers until the
// range is exhausted. body(begin, end, worker) must only touch worker-local
// state (indexed by `worker`) or synchronized state. The first exception thrown
// by any worker is rethrown on the calling thread.
void parallel_chunks(std::uint64_t count, int threads, std::uint64_t chunk,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& body);

}  // namespace ram

#endif  // RAM_PARALLEL_HPP_
