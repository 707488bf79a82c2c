// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace fdpnc {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The 128-bit counter is split into a 64-bit position (low words) and a
/// 64-bit substream label (high words); the 64-bit key is the master seed.
/// Distinct labels therefore address disjoint counter ranges of the same
/// keyed bijection, which is what makes substreams independent.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block encrypt(Block counter, Key key);
};

/// Single-owner random source addressed by (seed, substream_id).
///
/// Satisfies UniformRandomBitGenerator with 64-bit output. Two streams built
/// from the same pair emit identical sequences.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t substream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t substream_id() const { return substream_id_; }

  /// Uniform fair coin.
  bool coin();
  /// Standard normal N(0, 1).
  double normal();
  /// Circularly-symmetric CN(0, variance): each component has variance/2.
  std::complex<double> complex_normal(double variance);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t substream_id_;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace fdpnc
