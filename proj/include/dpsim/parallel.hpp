#pragma once

#include <cstddef>
#include <functional>

namespace dpsim {

/// Worker count used by the scans: the explicit override if set, otherwise
/// hardware concurrency capped by the DPSIM_THREADS environment variable.
std::size_t thread_count();

/// 0 restores the automatic choice.
void set_thread_count(std::size_t n);

/// Runs fn(0) ... fn(n-1) on the worker pool. Each index is evaluated exactly
/// once and independently, so results written by index do not depend on the
/// worker count. If any call throws, the exception of the lowest index is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace dpsim
