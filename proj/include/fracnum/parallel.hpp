#pragma once

#include <cstddef>
#include <functional>

namespace fracnum {

/// Number of worker threads used by parallel sections (default 1).
unsigned worker_count();
void set_worker_count(unsigned workers);

/// Splits [0, n) into fixed chunks of `chunk` indices and runs body(begin, end)
/// on each. Chunk boundaries never depend on the worker count, so any body
/// that writes only to its own index range produces identical results for
/// every worker count.
void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fracnum
