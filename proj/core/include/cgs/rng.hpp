#pragma once

// Counter-based random numbers (Philox4x32-10). A stream is a pure function
// of (seed, stream id, counter), so parallel chains are reproducible
// regardless of scheduling.

#include <array>
#include <cstdint>

namespace cgs {

struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter ctr, Key key);
};

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// [0, 1) with 53 random bits.
  double uniform();
  /// (0, 1].
  double uniform_open();

  /// Jumps to the start of block `block`; each block yields four words.
  void seek(std::uint64_t block);
  std::uint64_t block() const { return block_; }

 private:
  void refill();

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

}  // namespace cgs
