#include "declab/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace declab {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(long long n, int workers,
                     const std::function<void(long long, long long, int)>& body) {
  if (n <= 0) return;
  const int w = std::min<long long>(resolve_workers(workers), n);
  if (w <= 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  std::vector<std::exception_ptr> errors(w);
  for (int k = 0; k < w; ++k) {
    const long long begin = n * k / w;
    const long long end = n * (k + 1) / w;
    threads.emplace_back([&, begin, end, k] {
      try {
        body(begin, end, k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace declab
