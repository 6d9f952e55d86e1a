#include "lanes.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace mgvi::detail {

void runOnLanes(std::vector<std::function<void()>>&& tasks, int lanes) {
  const int workers = int(std::min<size_t>(size_t(std::max(lanes, 1)), tasks.size()));
  if (workers <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  threads.reserve(size_t(workers));
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (size_t i = size_t(w); i < tasks.size(); i += size_t(workers)) tasks[i]();
      } catch (...) {
        errors[size_t(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace mgvi::detail
