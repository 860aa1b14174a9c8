#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace opradius {

/// Worker count: OPRADIUS_THREADS if set and positive, else the hardware
/// concurrency (0 or unset means auto).
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index is executed exactly once;
/// callers write results into slot i so the reduction order never depends on
/// scheduling. Calls made from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Independent generator for stream `index` under `seed`. Sample i draws the
/// same numbers no matter how many workers are running.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace opradius
