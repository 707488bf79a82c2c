// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdpnc/phy.hpp"

#include <cmath>

namespace fdpnc {

JointHypothesis relay_joint_detect(std::complex<double> r, std::complex<double> h_ar, std::complex<double> h_br,
                                   double energy_a, double energy_b) {
  const std::complex<double> ga = std::sqrt(energy_a) * h_ar;
  const std::complex<double> gb = std::sqrt(energy_b) * h_br;

  JointHypothesis best{kJointHypotheses[0][0], kJointHypotheses[0][1], 0.0};
  bool first = true;
  for (const auto& [s_a, s_b] : kJointHypotheses) {
    const double metric = std::norm(r - s_a.amplitude() * ga - s_b.amplitude() * gb);
    if (first || metric < best.metric) {
      best = {s_a, s_b, metric};
      first = false;
    }
  }
  return best;
}

BpskSymbol endnode_detect(std::complex<double> r, std::complex<double> h_ir, double energy_r) {
  const std::complex<double> g = std::sqrt(energy_r) * h_ir;
  const double plus = std::norm(r - g);
  const double minus = std::norm(r + g);
  return minus < plus ? BpskSymbol::minus() : BpskSymbol::plus();
}

}  // namespace fdpnc
