// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>

#include "fdpnc/core.hpp"

namespace fdpnc {

/// 1 → +1, 0 → −1. With this mapping −s_a·s_b is the image of d_a ⊕ d_b.
constexpr BpskSymbol modulate(Bit d) { return d.is_one() ? BpskSymbol::plus() : BpskSymbol::minus(); }
constexpr Bit demodulate(BpskSymbol s) { return Bit(s.is_plus()); }

/// Modulated XOR transmitted by the relay: −s_a·s_b.
constexpr BpskSymbol network_code(BpskSymbol s_a, BpskSymbol s_b) { return -(s_a * s_b); }

/// Partner symbol recovered from the node's own previous symbol and the
/// detected relay symbol: −s_self·ŝ_R.
constexpr BpskSymbol recover_partner(BpskSymbol s_self_prev, BpskSymbol s_r_hat) {
  return -(s_self_prev * s_r_hat);
}

struct JointHypothesis {
  BpskSymbol s_a;
  BpskSymbol s_b;
  double metric;  // squared Euclidean distance to the received sample
};

/// The four (s_a, s_b) pairs in tie-break order.
inline constexpr std::array<std::array<BpskSymbol, 2>, 4> kJointHypotheses = {{
    {BpskSymbol::plus(), BpskSymbol::plus()},
    {BpskSymbol::plus(), BpskSymbol::minus()},
    {BpskSymbol::minus(), BpskSymbol::plus()},
    {BpskSymbol::minus(), BpskSymbol::minus()},
}};

/// Joint minimum-distance detection of both end-node symbols at the relay.
///
/// Exhaustively evaluates |r − √E_A·h_ar·s_a − √E_B·h_br·s_b|² over the four
/// hypotheses and returns the smallest. Exact ties go to the hypothesis that
/// comes first in kJointHypotheses.
JointHypothesis relay_joint_detect(std::complex<double> r, std::complex<double> h_ar, std::complex<double> h_br,
                                   double energy_a, double energy_b);

/// Minimum-distance detection of the relay symbol at an end node. Ties go to +1.
BpskSymbol endnode_detect(std::complex<double> r, std::complex<double> h_ir, double energy_r);

}  // namespace fdpnc
