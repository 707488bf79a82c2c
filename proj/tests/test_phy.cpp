// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fdpnc/channel.hpp"
#include "fdpnc/phy.hpp"

using namespace fdpnc;
using C = std::complex<double>;

namespace {

const BpskSymbol kPlus = BpskSymbol::plus();
const BpskSymbol kMinus = BpskSymbol::minus();

// Brute-force oracle: evaluates all four pairs with plain ints in the fixed order.
std::pair<int, int> brute_force_pair(C r, C ha, C hb, double ea, double eb) {
  const int order[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  double best = INFINITY;
  std::pair<int, int> arg{0, 0};
  for (const auto& h : order) {
    const C d = r - std::sqrt(ea) * ha * double(h[0]) - std::sqrt(eb) * hb * double(h[1]);
    const double m = d.real() * d.real() + d.imag() * d.imag();
    if (m < best) {
      best = m;
      arg = {h[0], h[1]};
    }
  }
  return arg;
}

}  // namespace

TEST_CASE("modulation mapping") {
  CHECK(modulate(Bit(true)) == kPlus);
  CHECK(modulate(Bit(false)) == kMinus);
  for (bool b : {false, true}) CHECK(demodulate(modulate(Bit(b))) == Bit(b));
}

TEST_CASE("network code is the modulated XOR") {
  CHECK(network_code(kPlus, kPlus) == kMinus);
  CHECK(network_code(kPlus, kMinus) == kPlus);
  CHECK(network_code(kMinus, kMinus) == kMinus);
  for (bool a : {false, true})
    for (bool b : {false, true})
      CHECK(network_code(modulate(Bit(a)), modulate(Bit(b))) == modulate(Bit(a) ^ Bit(b)));
}

TEST_CASE("double errors are transparent to the network code") {
  for (auto a : {kPlus, kMinus})
    for (auto b : {kPlus, kMinus}) CHECK(network_code(-a, -b) == network_code(a, b));
}

TEST_CASE("partner recovery") {
  CHECK(recover_partner(kPlus, kMinus) == kPlus);
  for (auto a : {kPlus, kMinus})
    for (auto b : {kPlus, kMinus}) {
      CHECK(recover_partner(a, network_code(a, b)) == b);
      CHECK(recover_partner(a, -network_code(a, b)) == -b);
    }
}

TEST_CASE("joint detection at the relay") {
  const auto exact = relay_joint_detect(C(1.0, 0.0) + C(0.0, 1.0), C(1.0, 0.0), C(0.0, 1.0), 1.0, 1.0);
  CHECK(exact.s_a == kPlus);
  CHECK(exact.s_b == kPlus);
  CHECK(exact.metric == 0.0);

  // h_ar = 1, h_br = 0.5, r = 0.5: the oracle picks (+1, −1) with metric 0.
  const auto oracle = brute_force_pair(C(0.5, 0.0), C(1.0, 0.0), C(0.5, 0.0), 1.0, 1.0);
  CHECK(oracle == std::pair<int, int>{1, -1});
  const auto d = relay_joint_detect(C(0.5, 0.0), C(1.0, 0.0), C(0.5, 0.0), 1.0, 1.0);
  CHECK(d.s_a.value() == oracle.first);
  CHECK(d.s_b.value() == oracle.second);
  CHECK(d.metric == 0.0);
}

TEST_CASE("joint detection tie-break prefers earlier hypotheses") {
  // r = 0 with h_ar = h_br: (+1,−1) and (−1,+1) both hit r exactly.
  const auto d = relay_joint_detect(C(0.0, 0.0), C(1.0, 0.0), C(1.0, 0.0), 1.0, 1.0);
  CHECK(d.s_a == kPlus);
  CHECK(d.s_b == kMinus);
  // All-zero channels: every metric ties, first hypothesis wins.
  const auto z = relay_joint_detect(C(0.3, 0.1), C(0.0, 0.0), C(0.0, 0.0), 1.0, 1.0);
  CHECK(z.s_a == kPlus);
  CHECK(z.s_b == kPlus);
}

TEST_CASE("joint detection agrees with the brute-force oracle on random inputs") {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> e(0.05, 4.0);
  int mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const C r(2 * n(gen), 2 * n(gen)), ha(n(gen), n(gen)), hb(n(gen), n(gen));
    const double ea = e(gen), eb = e(gen);
    const auto d = relay_joint_detect(r, ha, hb, ea, eb);
    const auto o = brute_force_pair(r, ha, hb, ea, eb);
    mismatches += d.s_a.value() != o.first || d.s_b.value() != o.second;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("joint detection is invariant to a common phase rotation") {
  std::mt19937_64 gen(77);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * M_PI);
  int changed = 0;
  for (int i = 0; i < 20000; ++i) {
    const C r(n(gen), n(gen)), ha(n(gen), n(gen)), hb(n(gen), n(gen));
    const C rot = std::polar(1.0, phase(gen));
    const auto d0 = relay_joint_detect(r, ha, hb, 1.0, 1.0);
    const auto d1 = relay_joint_detect(rot * r, rot * ha, rot * hb, 1.0, 1.0);
    // Rounding can only matter when two metrics are within an ulp-scale gap.
    if (d0.s_a != d1.s_a || d0.s_b != d1.s_b) {
      double second = INFINITY;
      for (const auto& [a, b] : kJointHypotheses) {
        const double m = std::norm(r - a.amplitude() * ha - b.amplitude() * hb);
        if (m > d0.metric) second = std::min(second, m);
      }
      changed += (second - d0.metric) > 1e-9;
    }
  }
  CHECK(changed == 0);
}

TEST_CASE("noiseless high-SNR joint detection is almost always right") {
  RandomStream s(3, 0);
  const SystemParams p = symmetric_params(db_to_linear(-30.0), 0.0);
  int pair_errors = 0;
  constexpr int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const ChannelState ch = draw_channel_state(s);
    const BpskSymbol sa = s.coin() ? kPlus : kMinus;
    const BpskSymbol sb = s.coin() ? kPlus : kMinus;
    const C r = relay_rx(sa, sb, std::nullopt, ch, p, s);
    const auto d = relay_joint_detect(r, ch.h_ar, ch.h_br, 1.0, 1.0);
    pair_errors += d.s_a != sa || d.s_b != sb;
  }
  CHECK(pair_errors / double(n) < 1e-2);
}

TEST_CASE("end-node detection") {
  CHECK(endnode_detect(-C(0.3, -0.7), C(0.3, -0.7), 1.0) == kMinus);
  CHECK(endnode_detect(-2.0 * C(0.3, -0.7), C(0.3, -0.7), 4.0) == kMinus);
  // h = i, r = 0.3i: |r − i|² = 0.49 < |r + i|² = 1.69.
  CHECK(endnode_detect(C(0.0, 0.3), C(0.0, 1.0), 1.0) == kPlus);
  CHECK(endnode_detect(C(0.0, 0.0), C(0.8, 0.2), 1.0) == kPlus);
}

TEST_CASE("end-node detection equals the sign of the matched-filter output") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> n(0.0, 1.0);
  int mismatches = 0, compared = 0;
  for (int i = 0; i < 100000; ++i) {
    const C r(n(gen), n(gen)), h(n(gen), n(gen));
    const double corr = (std::conj(h) * r).real();
    if (std::abs(corr) < 1e-12) continue;
    ++compared;
    mismatches += endnode_detect(r, h, 1.0) != (corr > 0 ? kPlus : kMinus);
  }
  CHECK(compared > 99000);
  CHECK(mismatches == 0);
}
