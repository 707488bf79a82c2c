// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdpnc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fdpnc {

ChannelState draw_channel_state(RandomStream& stream) {
  ChannelState ch;
  ch.h_ar = stream.complex_normal(1.0);
  ch.h_br = stream.complex_normal(1.0);
  ch.h_aa = stream.complex_normal(1.0);
  ch.h_bb = stream.complex_normal(1.0);
  ch.h_rr = stream.complex_normal(1.0);
  return ch;
}

Complex draw_noise(double variance, RandomStream& stream) {
  if (variance < 0.0) throw std::invalid_argument("NegativeVariance: noise variance must be >= 0");
  if (variance == 0.0) return {0.0, 0.0};
  return stream.complex_normal(variance);
}

Complex relay_signal(BpskSymbol s_a, BpskSymbol s_b, RelaySymbol s_r, const ChannelState& ch,
                     const SystemParams& params) {
  Complex r = std::sqrt(params.energy_a) * s_a.amplitude() * ch.h_ar +
              std::sqrt(params.energy_b) * s_b.amplitude() * ch.h_br;
  if (s_r) r += params.kappa_r * std::sqrt(params.energy_r) * s_r->amplitude() * ch.h_rr;
  return r;
}

Complex endnode_signal(EndNode node, RelaySymbol s_r, BpskSymbol s_self, const ChannelState& ch,
                       const SystemParams& params) {
  Complex r = params.kappa(node) * std::sqrt(params.energy(node)) * s_self.amplitude() * ch.self_loop(node);
  if (s_r) r += std::sqrt(params.energy_r) * s_r->amplitude() * ch.link(node);
  return r;
}

Complex relay_rx(BpskSymbol s_a, BpskSymbol s_b, RelaySymbol s_r, const ChannelState& ch,
                 const SystemParams& params, RandomStream& stream) {
  return relay_signal(s_a, s_b, s_r, ch, params) + draw_noise(params.noise_var_r, stream);
}

Complex endnode_rx(EndNode node, RelaySymbol s_r, BpskSymbol s_self, const ChannelState& ch,
                   const SystemParams& params, RandomStream& stream) {
  return endnode_signal(node, s_r, s_self, ch, params) + draw_noise(params.noise_var(node), stream);
}

}  // namespace fdpnc
