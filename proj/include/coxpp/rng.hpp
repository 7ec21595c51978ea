#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace coxpp {

/// Counter-based random stream (Philox4x32-10) keyed by a master seed and a
/// stream index. Block j of stream s is philox(key = seed, counter = (j, s)),
/// so any (seed, stream) pair can be materialised independently of any other.
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }
  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), n > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) noexcept;
  double exponential(double rate) noexcept;
  bool bernoulli(double p) noexcept { return uniform() < p; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }
  std::uint64_t blocks_used() const noexcept { return block_; }

private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

/// Raw Philox4x32-10 block function, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Names a family of replicate streams. Replicate i of the family uses stream
/// index base() + i with base() = splitmix64(prefix); child(tag) derives a
/// new family by prefix = splitmix64(prefix ^ (tag * 0x9E3779B97F4A7C15)).
class StreamKey {
public:
  StreamKey(std::uint64_t seed, std::uint64_t prefix = 0) noexcept
      : seed_(seed), prefix_(prefix) {}

  RngStream stream(std::uint64_t replicate) const noexcept {
    return RngStream(seed_, base() + replicate);
  }
  StreamKey child(std::uint64_t tag) const noexcept {
    return StreamKey(seed_, splitmix64(prefix_ ^ (tag * 0x9E3779B97F4A7C15ULL)));
  }
  std::uint64_t base() const noexcept { return splitmix64(prefix_); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t prefix() const noexcept { return prefix_; }

private:
  std::uint64_t seed_;
  std::uint64_t prefix_;
};

/// Poisson variate: sequential inversion below mean 30, PTRS above.
std::uint64_t sample_poisson(RngStream& rng, double mean);

} // namespace coxpp
