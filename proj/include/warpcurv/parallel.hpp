#ifndef WARPCURV_PARALLEL_HPP
#define WARPCURV_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace warpcurv {

/// Evaluates f(i) for i in [0, count) into a vector. Each slot is written by
/// exactly one worker, so the result is independent of the thread count;
/// reductions over the output must use a fixed order to stay bit-identical.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, int threads, F&& f) {
  std::vector<T> out(count);
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  const std::size_t nw = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < count; i += nw) out[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

} // namespace warpcurv

#endif
