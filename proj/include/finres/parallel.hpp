#pragma once

#include <functional>

namespace finres {

/// Worker count used by ParallelFor; values below 1 mean 1.
void SetThreadCount(int threads);
int ThreadCount();

/// Calls body(i) for i in [0, count). Each index is handled exactly once, so
/// results written by index do not depend on the thread count. The first
/// exception thrown by any body is rethrown on the caller's thread.
void ParallelFor(int count, const std::function<void(int)>& body);

}  // namespace finres
