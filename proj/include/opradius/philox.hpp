#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace opradius::rng {

/// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2,
/// 3"). Stateless: the output is a pure function of (key, counter).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// A substream addressed by (seed, index, lane). Successive draws advance the
/// last counter word, so streams with distinct (index, lane) never overlap.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t lane);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Integer uniform on [lo, hi], via rejection-free multiply-shift.
  int uniform_int(int lo, int hi);
  /// Standard normal via Box-Muller; both outputs of a pair are used.
  double normal();
  /// Complex normal with E|z|^2 = 1 (independent N(0, 1/2) parts).
  std::complex<double> complex_normal();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace opradius::rng
