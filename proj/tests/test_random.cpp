// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"
#include "fdpnc/random.hpp"

using namespace fdpnc;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using B = Philox4x32::Block;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::encrypt(B{0, 0, 0, 0}, K{0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::encrypt(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::encrypt(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("identical (seed, substream) pairs reproduce bit-identical sequences") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  bool same = true;
  for (int i = 0; i < 100000; ++i) {
    same = same && a() == b();
    same = same && a.normal() == b.normal();
  }
  CHECK(same);
}

TEST_CASE("substreams and seeds give different sequences") {
  RandomStream base(42, 7), other_sub(42, 8), other_seed(43, 7);
  int equal_sub = 0, equal_seed = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = base();
    equal_sub += x == other_sub();
    equal_seed += x == other_seed();
  }
  CHECK(equal_sub == 0);
  CHECK(equal_seed == 0);
}

TEST_CASE("adjacent substreams are uncorrelated") {
  constexpr int n = 100000;
  RandomStream s0(1, 0), s1(1, 1);
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s0.normal(), y = s1.normal();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double r = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  CHECK(std::abs(r) < 0.015);  // 3σ of a null correlation at n = 1e5 is 0.0095
}

TEST_CASE("coin is fair and complex_normal splits variance evenly") {
  constexpr int n = 200000;
  RandomStream s(3, 0);
  int heads = 0;
  double re2 = 0, im2 = 0;
  for (int i = 0; i < n; ++i) {
    heads += s.coin();
    const auto z = s.complex_normal(2.0);
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
  }
  CHECK(std::abs(heads / double(n) - 0.5) < 0.005);
  CHECK(re2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(im2 / n == doctest::Approx(1.0).epsilon(0.02));
}
