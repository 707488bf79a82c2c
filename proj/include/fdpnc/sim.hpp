// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "fdpnc/channel.hpp"
#include "fdpnc/core.hpp"
#include "fdpnc/random.hpp"
#include "fdpnc/theory.hpp"

namespace fdpnc {

/// Independent random sources for one slot batch.
///
/// Each role gets its own substream so that changing one parameter (say κ_R)
/// leaves the channel, bit and noise sequences of a matched-seed run intact.
struct SlotStreams {
  RandomStream channel;
  RandomStream bits;
  RandomStream noise_relay;
  RandomStream noise_a;
  RandomStream noise_b;

  /// Substream label is (batch_index << 3) | role.
  SlotStreams(std::uint64_t seed, std::uint64_t batch_index);
};

/// What the pipeline carries from slot n−1 into slot n.
struct PipelineState {
  /// s_R[n]; silent exactly in slot 0.
  RelaySymbol relay_tx;
  /// Each node's own slot-(n−1) symbol. It is what the node retains for partner
  /// recovery and also the ground truth the other node's estimate is scored against.
  BpskSymbol pending_a = BpskSymbol::plus();
  BpskSymbol pending_b = BpskSymbol::plus();
};

struct SlotFlags {
  bool relay_error_a = false;   // ŝ_A wrong at the relay
  bool relay_error_b = false;   // ŝ_B wrong at the relay
  bool relay_nc_error = false;  // network-coded decision ≠ true modulated XOR
  bool end_scored = false;      // false in the warm-up slot
  bool relay_tx_wrong = false;  // the s_R broadcast this slot was already wrong
  bool broadcast_error_a = false;
  bool broadcast_error_b = false;
  bool end_error_a = false;  // A's estimate of B's previous symbol is wrong
  bool end_error_b = false;
};

struct SlotResult {
  PipelineState next;
  SlotFlags flags;
};

/// Runs one full-duplex slot: both end nodes send fresh bits, the relay
/// hears them plus its own residual SI, jointly detects and network-codes the
/// pair for the next slot, while the end nodes detect this slot's s_R and
/// recover their partner's previous symbol.
SlotResult run_slot(const PipelineState& state, const SystemParams& params, SlotStreams& streams);

/// Errors observed over a number of scored trials.
struct ErrorCounter {
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;

  double rate() const { return trials == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(trials); }
  /// Binomial standard error √(p̂(1 − p̂)/N).
  double std_error() const;

  ErrorCounter& operator+=(const ErrorCounter& other) {
    errors += other.errors;
    trials += other.trials;
    return *this;
  }
  friend bool operator==(const ErrorCounter&, const ErrorCounter&) = default;
};

struct StopRule {
  std::uint64_t min_errors = 200;
  std::uint64_t max_slots = 100'000'000;
};

struct SimResult {
  std::uint64_t slots_run = 0;
  ErrorCounter relay;  // scored from slot 0 of each batch
  ErrorCounter end_a;  // scored from slot 1 of each batch
  ErrorCounter end_b;
  bool stop_rule_unreachable = false;
  SystemParams params;

  std::uint64_t seed() const { return params.seed; }
  bool same_counters(const SimResult& o) const {
    return slots_run == o.slots_run && relay == o.relay && end_a == o.end_a && end_b == o.end_b;
  }
};

inline constexpr std::uint64_t kDefaultBatchSlots = 4096;

/// Counters of one independent batch, starting from a silent relay.
SimResult run_batch(const SystemParams& params, std::uint64_t batch_index, std::uint64_t slots);

/// Runs batches 0, 1, 2, ... and stops after the first prefix of batches in
/// which every metric has reached stop.min_errors, or when stop.max_slots
/// slots have run. Batches execute on up to `workers` threads; the merged
/// result depends only on (params, stop, batch_slots).
SimResult run_campaign(const SystemParams& params, const StopRule& stop, unsigned workers = 1,
                       std::uint64_t batch_slots = kDefaultBatchSlots);

inline constexpr double kZThreshold = 3.0;

struct MetricCheck {
  double estimate = 0.0;
  double theory = 0.0;
  double std_error = 0.0;
  double z = 0.0;  // |p̂ − p| / stderr
  double relative_deviation = 0.0;
  bool pass = false;
};

struct Scoreboard {
  MetricCheck relay;
  MetricCheck end_a;
  MetricCheck end_b;
  bool pass = false;
};

/// Compares an estimate with its closed form. When p̂ is 0 or 1 the binomial
/// stderr degenerates and the theory value's stderr √(p(1 − p)/N) is used.
MetricCheck check_metric(const ErrorCounter& counter, double theory);

Scoreboard scoreboard(const SimResult& result, const TheoryPoint& theory);

}  // namespace fdpnc
