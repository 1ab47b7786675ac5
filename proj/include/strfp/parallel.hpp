#pragma once

#include <cstddef>
#include <functional>

namespace strfp {

// Worker count for internal parallelism: hardware concurrency capped by the
// STRFP_THREADS environment variable (read once). Always at least 1.
std::size_t worker_count();

// Runs fn(i) for i in [0, n), chunked over worker_count() threads. Each index
// is processed exactly once, so writes into index-addressed slots are
// deterministic regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace strfp
