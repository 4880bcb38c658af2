// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_PARALLEL_HPP
#define GMSFEM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmsfem
{

// Runs f(i) for i in [0, n) on up to `threads` workers. Work items are claimed
// dynamically, each writes only its own result slot, so outputs do not depend on the
// schedule. The first exception (by index) is rethrown after all workers finish.
template <typename F>
void ParallelFor(int n, int threads, F &&f)
{
  threads = std::max(1, std::min(threads, n));
  if (threads == 1)
  {
    for (int i = 0; i < n; i++)
    {
      f(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::mutex lock;
  int failed_index = n;
  std::exception_ptr failure;
  auto worker = [&]() {
    for (int i = next++; i < n; i = next++)
    {
      try
      {
        f(i);
      }
      catch (...)
      {
        std::lock_guard<std::mutex> guard(lock);
        if (i < failed_index)
        {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; t++)
  {
    pool.emplace_back(worker);
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }
}

}  // namespace gmsfem

#endif  // GMSFEM_PARALLEL_HPP
