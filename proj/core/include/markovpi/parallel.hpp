#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace markovpi {

using Rng = std::mt19937_64;

/// Independent substream seed for task `stream` under a root seed (splitmix64 mixing).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept;

/// 0 means "all hardware threads".
[[nodiscard]] std::size_t resolve_threads(std::size_t requested) noexcept;

/**
 * Runs body(i) for i in [0, count) on up to `threads` workers. Tasks must only
 * write to slots owned by their index. The exception from the failing task
 * with the lowest index is rethrown after all workers finish.
 */
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace markovpi
