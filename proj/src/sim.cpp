// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdpnc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "fdpnc/phy.hpp"

namespace fdpnc {

namespace {

enum StreamRole : std::uint64_t { kChannel = 0, kBits = 1, kNoiseRelay = 2, kNoiseA = 3, kNoiseB = 4 };

constexpr std::uint64_t label(std::uint64_t batch, StreamRole role) { return (batch << 3) | role; }

bool stop_reached(const SimResult& r, std::uint64_t min_errors) {
  return r.relay.errors >= min_errors && r.end_a.errors >= min_errors && r.end_b.errors >= min_errors;
}

void merge(SimResult& into, const SimResult& batch) {
  into.slots_run += batch.slots_run;
  into.relay += batch.relay;
  into.end_a += batch.end_a;
  into.end_b += batch.end_b;
}

}  // namespace

SlotStreams::SlotStreams(std::uint64_t seed, std::uint64_t batch_index)
    : channel(seed, label(batch_index, kChannel)),
      bits(seed, label(batch_index, kBits)),
      noise_relay(seed, label(batch_index, kNoiseRelay)),
      noise_a(seed, label(batch_index, kNoiseA)),
      noise_b(seed, label(batch_index, kNoiseB)) {}

SlotResult run_slot(const PipelineState& state, const SystemParams& params, SlotStreams& streams) {
  const ChannelState ch = draw_channel_state(streams.channel);
  const BpskSymbol s_a = modulate(Bit(streams.bits.coin()));
  const BpskSymbol s_b = modulate(Bit(streams.bits.coin()));

  SlotResult out;
  SlotFlags& f = out.flags;

  // Multiple-access half: relay hears both nodes and its own current transmission.
  const Complex r_relay = relay_rx(s_a, s_b, state.relay_tx, ch, params, streams.noise_relay);
  const JointHypothesis joint = relay_joint_detect(r_relay, ch.h_ar, ch.h_br, params.energy_a, params.energy_b);
  f.relay_error_a = joint.s_a != s_a;
  f.relay_error_b = joint.s_b != s_b;
  f.relay_nc_error = network_code(joint.s_a, joint.s_b) != network_code(s_a, s_b);

  // Broadcast half: end nodes hear s_R[n] plus their own residual SI.
  const Complex r_a = endnode_rx(EndNode::A, state.relay_tx, s_a, ch, params, streams.noise_a);
  const Complex r_b = endnode_rx(EndNode::B, state.relay_tx, s_b, ch, params, streams.noise_b);
  if (state.relay_tx) {
    const BpskSymbol sent = *state.relay_tx;
    const BpskSymbol hat_r_at_a = endnode_detect(r_a, ch.h_ar, params.energy_r);
    const BpskSymbol hat_r_at_b = endnode_detect(r_b, ch.h_br, params.energy_r);
    f.end_scored = true;
    f.relay_tx_wrong = sent != network_code(state.pending_a, state.pending_b);
    f.broadcast_error_a = hat_r_at_a != sent;
    f.broadcast_error_b = hat_r_at_b != sent;
    f.end_error_a = recover_partner(state.pending_a, hat_r_at_a) != state.pending_b;
    f.end_error_b = recover_partner(state.pending_b, hat_r_at_b) != state.pending_a;
  }

  out.next.relay_tx = network_code(joint.s_a, joint.s_b);
  out.next.pending_a = s_a;
  out.next.pending_b = s_b;
  return out;
}

double ErrorCounter::std_error() const {
  if (trials == 0) return 0.0;
  const double p = rate();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

SimResult run_batch(const SystemParams& params, std::uint64_t batch_index, std::uint64_t slots) {
  SimResult r;
  r.params = params;
  SlotStreams streams(params.seed, batch_index);
  PipelineState state;
  for (std::uint64_t n = 0; n < slots; ++n) {
    const SlotResult slot = run_slot(state, params, streams);
    r.relay.trials += 1;
    r.relay.errors += slot.flags.relay_nc_error;
    if (slot.flags.end_scored) {
      r.end_a.trials += 1;
      r.end_b.trials += 1;
      r.end_a.errors += slot.flags.end_error_a;
      r.end_b.errors += slot.flags.end_error_b;
    }
    state = slot.next;
  }
  r.slots_run = slots;
  return r;
}

SimResult run_campaign(const SystemParams& params, const StopRule& stop, unsigned workers,
                       std::uint64_t batch_slots) {
  const SystemParams p = validate(params);
  if (stop.min_errors < 1 || stop.max_slots < 1) throw std::invalid_argument("stop rule needs min_errors >= 1 and max_slots >= 1");
  if (batch_slots < 1) throw std::invalid_argument("batch_slots must be >= 1");
  workers = std::max(1u, workers);

  const std::uint64_t total_batches = (stop.max_slots + batch_slots - 1) / batch_slots;
  auto batch_length = [&](std::uint64_t b) { return std::min(batch_slots, stop.max_slots - b * batch_slots); };

  SimResult total;
  total.params = p;
  const std::uint64_t wave = static_cast<std::uint64_t>(workers) * 4;
  std::vector<SimResult> results;

  for (std::uint64_t first = 0; first < total_batches; first += wave) {
    const std::uint64_t count = std::min(wave, total_batches - first);
    results.assign(count, SimResult{});
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
      for (std::uint64_t i = next++; i < count; i = next++) results[i] = run_batch(p, first + i, batch_length(first + i));
    };
    if (workers == 1 || count == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < std::min<std::uint64_t>(workers, count); ++w) pool.emplace_back(work);
    }

    // Merge in batch order so the stopping point is independent of scheduling.
    for (const auto& batch : results) {
      merge(total, batch);
      if (stop_reached(total, stop.min_errors)) return total;
    }
  }
  total.stop_rule_unreachable = true;
  return total;
}

MetricCheck check_metric(const ErrorCounter& counter, double theory) {
  MetricCheck m;
  m.estimate = counter.rate();
  m.theory = theory;
  m.std_error = counter.std_error();
  if (m.std_error == 0.0 && counter.trials > 0)
    m.std_error = std::sqrt(theory * (1.0 - theory) / static_cast<double>(counter.trials));
  const double diff = std::abs(m.estimate - theory);
  if (m.std_error > 0.0) {
    m.z = diff / m.std_error;
  } else {
    m.z = diff == 0.0 && counter.trials > 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  m.relative_deviation = theory > 0.0 ? (m.estimate - theory) / theory : 0.0;
  m.pass = m.z <= kZThreshold;
  return m;
}

Scoreboard scoreboard(const SimResult& result, const TheoryPoint& theory) {
  Scoreboard s;
  s.relay = check_metric(result.relay, theory.ber_relay);
  s.end_a = check_metric(result.end_a, theory.ber_end_a);
  s.end_b = check_metric(result.end_b, theory.ber_end_b);
  s.pass = s.relay.pass && s.end_a.pass && s.end_b.pass;
  return s;
}

}  // namespace fdpnc
