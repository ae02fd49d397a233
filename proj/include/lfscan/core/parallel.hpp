#pragma once

#include <functional>

namespace lfscan {

/// Run fn(i) for i in [0, n) on up to `threads` workers. Indices are split
/// into contiguous chunks; fn must only write state owned by index i, so the
/// result is identical for any thread count. threads <= 1 runs inline.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace lfscan
