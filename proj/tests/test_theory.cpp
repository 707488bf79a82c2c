// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "fdpnc/theory.hpp"
#include "oracles.hpp"

using namespace fdpnc;

namespace {

SystemParams random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> log_energy(-1.0, 1.0);
  std::uniform_real_distribution<double> log_noise(-6.0, 1.0);
  std::uniform_real_distribution<double> log_kappa(-5.0, 0.0);
  SystemParams p;
  p.energy_a = std::pow(10.0, log_energy(gen));
  p.energy_b = std::pow(10.0, log_energy(gen));
  p.energy_r = std::pow(10.0, log_energy(gen));
  p.noise_var_a = std::pow(10.0, log_noise(gen));
  p.noise_var_b = std::pow(10.0, log_noise(gen));
  p.noise_var_r = std::pow(10.0, log_noise(gen));
  p.kappa_a = std::pow(10.0, log_kappa(gen));
  p.kappa_b = std::pow(10.0, log_kappa(gen));
  p.kappa_r = std::pow(10.0, log_kappa(gen));
  return p;
}

}  // namespace

TEST_CASE("Q function") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(q_function(40.0) >= 0.0);
  CHECK(q_function(40.0) < 1e-300);
  CHECK(std::abs(q_function(1.0) - 0.15865525393145705) < 1e-12);
  CHECK(std::abs(q_function(1.0) - oracle::gaussian_tail(1.0)) < 1e-12);
  CHECK(std::abs(q_function(-2.5) - oracle::gaussian_tail(-2.5)) < 1e-12);
}

TEST_CASE("SINR at the relay") {
  CHECK(sinr_at_relay(symmetric_params(0.1, 0.0), EndNode::A) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(sinr_at_relay(symmetric_params(0.0, 1.0), EndNode::B) == 1.0);
  SystemParams p = symmetric_params(0.3, 0.2);
  p.energy_a = 1.7;
  SystemParams doubled = p;
  doubled.energy_a *= 2;
  doubled.energy_b *= 2;
  doubled.energy_r *= 2;
  doubled.noise_var_a *= 2;
  doubled.noise_var_b *= 2;
  doubled.noise_var_r *= 2;
  CHECK(sinr_at_relay(doubled, EndNode::A) == doctest::Approx(sinr_at_relay(p, EndNode::A)).epsilon(1e-14));
  CHECK(sinr_at_endnode(doubled, EndNode::A) == doctest::Approx(sinr_at_endnode(p, EndNode::A)).epsilon(1e-14));
}

TEST_CASE("per-stream relay BER") {
  CHECK(ber_relay_stream(symmetric_params(0.0, 0.0), EndNode::A) == 0.0);
  CHECK(std::abs(ber_relay_stream(symmetric_params(1.0, 0.0), EndNode::A) - 0.14644660940672624) < 1e-12);
}

TEST_CASE("per-stream relay BER equals the Rayleigh average of the instantaneous BER") {
  for (double noise : {1.0, 0.1, 0.01, 1e-3}) {
    for (double kappa : {0.0, 0.01, 0.1}) {
      SystemParams p = symmetric_params(noise, kappa);
      p.energy_b = 0.4;
      for (EndNode node : {EndNode::A, EndNode::B}) {
        const double gamma = sinr_at_relay(p, node);
        const double quad = oracle::rayleigh_average_ber(gamma, q_function);
        CHECK(std::abs(ber_relay_stream(p, node) - quad) < 1e-6);
      }
    }
  }
}

TEST_CASE("network-coded relay BER") {
  CHECK(std::abs(ber_relay(symmetric_params(1.0, 0.0)) - 0.25) < 1e-15);
  CHECK(std::abs(ber_relay(symmetric_params(0.0, 0.1)) - 0.0049504950495049505) < 1e-15);
}

TEST_CASE("end-to-end BER") {
  CHECK(ber_end_to_end(symmetric_params(0.0, 0.0), EndNode::A) == 0.0);
  const SystemParams op = symmetric_params(db_to_linear(-38.0), 2e-4);
  const double pe = ber_end_to_end(op, EndNode::A);
  CHECK(pe >= 0.9e-4);
  CHECK(pe <= 1.4e-4);
  CHECK(std::abs(pe - 1.188734329679070e-4) < 1e-15);
}

TEST_CASE("compositional forms equal the closed forms") {
  std::mt19937_64 gen(12345);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SystemParams p = random_params(gen);
    worst = std::max(worst, std::abs(ber_relay_composed(p) - ber_relay(p)));
    for (EndNode node : {EndNode::A, EndNode::B})
      worst = std::max(worst, std::abs(ber_end_to_end_composed(p, node) - ber_end_to_end(p, node)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("error floor") {
  CHECK(error_floor(symmetric_params(0.1, 0.0), EndNode::A) == 0.0);
  CHECK(std::abs(error_floor(symmetric_params(0.1, 0.1), EndNode::A) - 7.407331579213299e-3) < 1e-6);
  for (double kappa : {1e-3, 1e-2, 1e-1}) {
    const SystemParams p = symmetric_params(1e-12, kappa);
    const double unit_formula = 0.5 - 1.0 / (2.0 * (1.0 + kappa * kappa) * std::sqrt(1.0 + kappa * kappa));
    CHECK(std::abs(error_floor(p, EndNode::A) - unit_formula) < 1e-15);
    CHECK(ber_end_to_end(p, EndNode::A) - error_floor(p, EndNode::A) <= 1e-6);
    CHECK(ber_end_to_end(p, EndNode::A) >= error_floor(p, EndNode::A));
  }
}

TEST_CASE("relay SI raises the floor more than end-node SI") {
  const double grid[] = {1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3};
  for (double x : grid)
    for (double y : grid) {
      if (!(x > y)) continue;
      SystemParams relay_worse = symmetric_params(0.01, 0.0);
      relay_worse.kappa_r = x;
      relay_worse.kappa_a = y;
      SystemParams end_worse = relay_worse;
      end_worse.kappa_r = y;
      end_worse.kappa_a = x;
      CHECK(error_floor(relay_worse, EndNode::A) > error_floor(end_worse, EndNode::A));
      CHECK(ber_end_to_end(relay_worse, EndNode::A) > ber_end_to_end(end_worse, EndNode::A));
    }
}

TEST_CASE("regime boundary") {
  CHECK(regime(symmetric_params(0.1, 0.1)) == Regime::NoiseLimited);
  CHECK(regime(symmetric_params(0.02, 0.1)) == Regime::SiLimited);
  CHECK(regime(symmetric_params(0.019, 0.1)) == Regime::SiLimited);
  CHECK(regime(symmetric_params(1e-9, 0.0)) == Regime::NoiseLimited);
  SystemParams asym = symmetric_params(0.1, 0.1);
  asym.kappa_r = 0.2;
  CHECK_THROWS_AS(regime(asym), ConventionViolation);
  SystemParams heavy = symmetric_params(0.1, 0.1);
  heavy.energy_r = 2.0;
  CHECK_THROWS_AS(regime(heavy), ConventionViolation);
}

TEST_CASE("spectral efficiency") {
  CHECK(slots_per_exchange(Scheme::FdPnc) == 1);
  CHECK(slots_per_exchange(Scheme::Pnc) == 2);
  CHECK(slots_per_exchange(Scheme::ClassicalNc) == 3);
  CHECK(time_savings_percent(Scheme::FdPnc, Scheme::Pnc) == 50.0);
  CHECK(time_savings_percent(Scheme::FdPnc, Scheme::ClassicalNc) == 66.7);
  CHECK(time_savings_percent(Scheme::Pnc, Scheme::Pnc) == 0.0);
}

TEST_CASE("end-to-end BER is monotone along random parameter ladders") {
  // Node A's BER falls with E_B, and with E_A / E_R only when the SI they
  // induce (κ_A²E_A at A, κ_R²E_R at the relay) is switched off. It rises
  // with every noise variance and every κ.
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> which(0, 8);
  for (int trial = 0; trial < 300; ++trial) {
    SystemParams p = random_params(gen);
    const int field = which(gen);
    if (field == 0) p.kappa_a = 0.0;
    if (field == 2) p.kappa_r = 0.0;
    double prev = ber_end_to_end(p, EndNode::A);
    for (int step = 0; step < 10; ++step) {
      double* target[] = {&p.energy_a, &p.energy_b, &p.energy_r, &p.noise_var_a, &p.noise_var_b,
                          &p.noise_var_r, &p.kappa_a, &p.kappa_b, &p.kappa_r};
      *target[field] *= 1.5;
      const double now = ber_end_to_end(p, EndNode::A);
      if (field < 3) {
        CHECK(now <= prev);
      } else {
        CHECK(now >= prev);
      }
      prev = now;
    }
  }
}

TEST_CASE("raising the relay energy can hurt when the relay has residual SI") {
  SystemParams p = symmetric_params(1e-4, 0.3);
  const double base = ber_end_to_end(p, EndNode::A);
  p.energy_r = 4.0;
  CHECK(ber_end_to_end(p, EndNode::A) > base);
}

TEST_CASE("theory point invariants") {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 1000; ++i) {
    const TheoryPoint t = evaluate_theory(random_params(gen));
    for (double a : {t.alpha_a, t.alpha_b, t.alpha_r}) {
      CHECK(a > 0.0);
      CHECK(a <= 1.0);
    }
    for (double b : {t.ber_relay, t.ber_end_a, t.ber_end_b}) {
      CHECK(b >= 0.0);
      CHECK(b <= 0.5);
    }
    CHECK(t.ber_end_a >= t.ber_relay);
    CHECK(t.ber_end_b >= t.ber_relay);
    CHECK(t.floor_a >= 0.0);
    CHECK(t.floor_a < 0.5);
  }
  const TheoryPoint sym = evaluate_theory(symmetric_params(0.05, 0.03));
  CHECK(sym.ber_end_a == sym.ber_end_b);
  CHECK_THROWS_AS(evaluate_theory(symmetric_params(0.0, 0.0)), InvalidParams);
}
