#pragma once
#include <functional>

namespace todaspec {

/// Thread cap from TODA_SPECTRA_THREADS (0 or unset = hardware concurrency).
int max_threads();

/// Evaluates fn(i) for i in [begin, end) across threads.  Each index writes
/// only its own output slot, so results are deterministic regardless of the
/// schedule.  Nested calls run serially.  The first exception thrown by any
/// task is rethrown on the caller.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace todaspec
