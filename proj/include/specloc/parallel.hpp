#ifndef SPECLOC_PARALLEL_HPP
#define SPECLOC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace specloc {

/// Worker count: SPECLOC_THREADS env var caps it (0 or unset = auto).
int thread_count();

/// Runs fn(begin, end) over a deterministic chunking of [0, count).
/// Results must not depend on the chunk assignment (pure per-index work or
/// order-independent reductions only).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace specloc

#endif
