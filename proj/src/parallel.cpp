#include "netpoint/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>

namespace netpoint {

namespace {

std::atomic<int> override_threads{0};

int from_environment() {
  const char* value = std::getenv("NETPOINT_THREADS");
  if (value == nullptr) return 0;
  int parsed = 0;
  auto [end, ec] = std::from_chars(value, value + std::strlen(value), parsed);
  if (ec != std::errc{} || parsed <= 0) return 0;
  return parsed;
}

}  // namespace

int thread_count() {
  if (int forced = override_threads.load(); forced > 0) return forced;
  if (int env = from_environment(); env > 0) return env;
  return std::max(1, omp_get_max_threads());
}

void set_thread_count(int threads) { override_threads.store(std::max(0, threads)); }

ThreadLimit::ThreadLimit(int threads) : previous_(override_threads.load()) {
  set_thread_count(threads);
}

ThreadLimit::~ThreadLimit() { set_thread_count(previous_); }

}  // namespace netpoint
