#ifndef ARS_PARALLEL_HPP
#define ARS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ars {

namespace detail {
inline std::atomic<unsigned>& thread_count_slot()
{
  static std::atomic<unsigned> n{1};
  return n;
}
} // namespace detail

/// Worker count used by row-parallel loops. 0 selects the hardware
/// concurrency. Results never depend on this value: every row is written
/// by exactly one worker and no cross-row reduction happens in parallel.
inline void set_thread_count(unsigned n)
{
  if (n == 0)
    n = std::max(1u, std::thread::hardware_concurrency());
  detail::thread_count_slot().store(n);
}

inline unsigned thread_count() { return detail::thread_count_slot().load(); }

/// Calls fn(row) for row in [0, rows), splitting contiguous blocks of rows
/// across workers. Exceptions from any worker are rethrown in the caller.
template <typename Fn>
void parallel_rows(std::size_t rows, Fn&& fn)
{
  const std::size_t workers = std::min<std::size_t>(thread_count(), rows);
  if (workers <= 1) {
    for (std::size_t r = 0; r < rows; ++r)
      fn(r);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t block = (rows + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(rows, begin + block);
    if (begin >= end)
      break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t r = begin; r < end; ++r)
          fn(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace ars

#endif // ARS_PARALLEL_HPP
