// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>

#include "fdpnc/core.hpp"
#include "fdpnc/random.hpp"

namespace fdpnc {

using Complex = std::complex<double>;

/// One slot's Rayleigh realization. Links are reciprocal: h_ar also carries
/// R→A and h_br carries R→B within the slot.
struct ChannelState {
  Complex h_ar;
  Complex h_br;
  Complex h_aa;
  Complex h_bb;
  Complex h_rr;

  Complex link(EndNode node) const { return node == EndNode::A ? h_ar : h_br; }
  Complex self_loop(EndNode node) const { return node == EndNode::A ? h_aa : h_bb; }
};

/// The relay's transmission in a slot; empty while the pipeline warms up.
using RelaySymbol = std::optional<BpskSymbol>;

/// Five independent CN(0, 1) draws, in the order h_ar, h_br, h_aa, h_bb, h_rr.
ChannelState draw_channel_state(RandomStream& stream);

/// CN(0, variance) sample; exactly zero (and no draws consumed) when variance is 0.
/// Throws std::invalid_argument (NegativeVariance) for variance < 0.
Complex draw_noise(double variance, RandomStream& stream);

/// Noise-free part of the relay observation:
///   √E_A·h_ar·s_a + √E_B·h_br·s_b + κ_R·√E_R·h_rr·s_r.
Complex relay_signal(BpskSymbol s_a, BpskSymbol s_b, RelaySymbol s_r, const ChannelState& ch,
                     const SystemParams& params);

/// Noise-free part of the observation at an end node:
///   √E_R·h_iR·s_r + κ_i·√E_i·h_ii·s_self.
Complex endnode_signal(EndNode node, RelaySymbol s_r, BpskSymbol s_self, const ChannelState& ch,
                       const SystemParams& params);

/// Relay received sample r_R[n]: relay_signal plus CN(0, σ_R²) noise.
Complex relay_rx(BpskSymbol s_a, BpskSymbol s_b, RelaySymbol s_r, const ChannelState& ch,
                 const SystemParams& params, RandomStream& stream);

/// End-node received sample r_i[n]: endnode_signal plus CN(0, σ_i²) noise.
Complex endnode_rx(EndNode node, RelaySymbol s_r, BpskSymbol s_self, const ChannelState& ch,
                   const SystemParams& params, RandomStream& stream);

}  // namespace fdpnc
