#pragma once

#include <functional>
#include <vector>

namespace cxt::detail {

// requested if positive, else CXT_THREADS, else the hardware concurrency
int thread_count(int requested);
// runs every task; the first stored exception is rethrown after all finish
void run_parallel(std::vector<std::function<void()>>& tasks, int threads);

}  // namespace cxt::detail
