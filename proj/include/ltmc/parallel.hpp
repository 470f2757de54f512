#pragma once
// Thread control and a slot-oriented parallel loop. Workers must write only
// to their own output slots; reductions happen sequentially afterwards, so
// results never depend on the thread count. Bodies must not throw: failures
// are recorded in the slot and handled after the join.

#include <cstddef>
#include <functional>

namespace ltmc {

// 0 restores the default (LTMC_THREADS env var, else hardware concurrency).
void set_max_threads(int n);
int max_threads();

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ltmc
