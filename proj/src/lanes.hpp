#pragma once

#include <functional>
#include <vector>

namespace mgvi::detail {

/// Runs the tasks on up to `lanes` concurrent threads (one task per thread;
/// the task lists here never exceed three entries). Tasks must write to
/// disjoint outputs; the caller observes the same result for any lane count.
void runOnLanes(std::vector<std::function<void()>>&& tasks, int lanes);

}  // namespace mgvi::detail
