#pragma once

namespace netpoint {

/// Threads used by the OpenMP kernels: an explicit override when set,
/// otherwise NETPOINT_THREADS, otherwise the OpenMP default.
int thread_count();

/// Overrides the thread count for the whole process; 0 clears the override.
void set_thread_count(int threads);

/// Scoped override of thread_count().
class ThreadLimit {
public:
  explicit ThreadLimit(int threads);
  ~ThreadLimit();
  ThreadLimit(const ThreadLimit&) = delete;
  ThreadLimit& operator=(const ThreadLimit&) = delete;

private:
  int previous_;
};

}  // namespace netpoint
