#pragma once

#include <array>
#include <cstdint>

namespace necl {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every
// (trajectory, mode) pair owns an independent stream, so any single
// trajectory can be reproduced in isolation and results do not depend on
// how trajectories are distributed over threads.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key);
};

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        base_{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
              substream, 0} {}

  // Uniform on (0,1), open at both ends.
  double uniform() {
    std::uint32_t w = next_word();
    return (static_cast<double>(w) + 0.5) * 0x1p-32;
  }

  // Standard normal via Box-Muller; consumes exactly two words per call.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    return box_muller(u1, u2);
  }

 private:
  static double box_muller(double u1, double u2);
  std::uint32_t next_word();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> base_;  // base_[3] is the draw counter
  std::array<std::uint32_t, 4> cache_{};
  std::uint32_t cached_ = 0;  // how many words of cache_ remain unread
  std::uint32_t counter_ = 0;
};

}  // namespace necl
