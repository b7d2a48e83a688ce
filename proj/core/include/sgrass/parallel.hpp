#pragma once

#include <cstddef>
#include <functional>

namespace sgrass {

/// Worker count: SGRASS_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Runs body(chunk) for chunk in [0, chunks) on up to thread_count() workers.
/// Callers write into per-chunk slots and reduce in chunk order, which keeps
/// results independent of the worker count.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace sgrass
