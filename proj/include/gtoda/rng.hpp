#pragma once

#include <array>
#include <cstdint>

namespace gtoda {

/// Counter-based random stream (Philox4x32-10).
///
/// The pair (seed, stream_id) selects an independent substream; the output is a pure
/// function of (seed, stream_id, draw index), so replica r can always use stream_id r
/// and get the same numbers whatever thread runs it.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }
  std::uint64_t position() const noexcept { return counter_; }

  /// 32 random bits.
  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  /// Standard normal via the inverse CDF of uniform().
  double normal() noexcept;

  /// Raw Philox4x32-10 block for a given counter/key; exposed for tests.
  static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                             std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;  // index of the next 128-bit block
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

/// Inverse of the standard normal CDF, accurate to about 1e-15 relative on (0,1).
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace gtoda
