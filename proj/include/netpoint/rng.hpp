#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace netpoint {

/// Philox4x32-10 counter-based generator. A (seed, stream) pair selects an
/// independent sequence, so per-item streams can be drawn in any order or
/// on any thread with identical results.
class Philox {
public:
  using result_type = std::uint32_t;

  Philox(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// The raw bijection: ten rounds over one counter block.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  unsigned next_ = 4;
};

}  // namespace netpoint
