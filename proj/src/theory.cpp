// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdpnc/theory.hpp"

#include <cmath>
#include <numbers>

namespace fdpnc {

namespace {

// Each α has the form E / (E + I); log α = −log1p(I / E) keeps precision as α → 1.
double log_alpha(double energy, double interference) { return -std::log1p(interference / energy); }

double relay_interference(const SystemParams& p) { return p.kappa_r * p.kappa_r * p.energy_r + p.noise_var_r; }

double endnode_interference(const SystemParams& p, EndNode node) {
  return p.kappa(node) * p.kappa(node) * p.energy(node) + p.noise_var(node);
}

// (1 − √(Π α)) / 2 from Σ log α.
double ber_from_log_alpha(double sum_log_alpha) { return -0.5 * std::expm1(0.5 * sum_log_alpha); }

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double sinr_at_relay(const SystemParams& p, EndNode node) {
  return p.energy(node) / (p.noise_var_r + p.kappa_r * p.kappa_r * p.energy_r);
}

double sinr_at_endnode(const SystemParams& p, EndNode node) { return p.energy_r / endnode_interference(p, node); }

double alpha_relay_stream(const SystemParams& p, EndNode node) {
  return std::exp(log_alpha(p.energy(node), relay_interference(p)));
}

double alpha_broadcast(const SystemParams& p, EndNode node) {
  return std::exp(log_alpha(p.energy_r, endnode_interference(p, node)));
}

double ber_relay_stream(const SystemParams& p, EndNode node) {
  return ber_from_log_alpha(log_alpha(p.energy(node), relay_interference(p)));
}

double ber_relay(const SystemParams& p) {
  const double ri = relay_interference(p);
  return ber_from_log_alpha(log_alpha(p.energy_a, ri) + log_alpha(p.energy_b, ri));
}

double ber_broadcast(const SystemParams& p, EndNode node) {
  return ber_from_log_alpha(log_alpha(p.energy_r, endnode_interference(p, node)));
}

double ber_end_to_end(const SystemParams& p, EndNode node) {
  const double ri = relay_interference(p);
  return ber_from_log_alpha(log_alpha(p.energy_a, ri) + log_alpha(p.energy_b, ri) +
                            log_alpha(p.energy_r, endnode_interference(p, node)));
}

double ber_relay_composed(const SystemParams& p) {
  const double pa = ber_relay_stream(p, EndNode::A);
  const double pb = ber_relay_stream(p, EndNode::B);
  return pa * (1.0 - pb) + pb * (1.0 - pa);
}

double ber_end_to_end_composed(const SystemParams& p, EndNode node) {
  const double pr = ber_relay(p);
  const double pbc = ber_broadcast(p, node);
  return pr * (1.0 - pbc) + (1.0 - pr) * pbc;
}

double error_floor(const SystemParams& p, EndNode node) {
  SystemParams noiseless = p;
  noiseless.noise_var_a = noiseless.noise_var_b = noiseless.noise_var_r = 0.0;
  return ber_end_to_end(noiseless, node);
}

double regime_boundary_noise_var(double kappa) { return 2.0 * kappa * kappa; }

Regime regime(const SystemParams& p) {
  if (p.kappa_r != p.kappa_a)
    throw ConventionViolation("regime boundary is defined only for kappa_r == kappa_a");
  if (p.energy_a != 1.0 || p.energy_b != 1.0 || p.energy_r != 1.0)
    throw ConventionViolation("regime boundary is defined only for unit energies");
  return p.noise_var_a > regime_boundary_noise_var(p.kappa_a) ? Regime::NoiseLimited : Regime::SiLimited;
}

int slots_per_exchange(Scheme scheme) {
  switch (scheme) {
    case Scheme::FdPnc: return 1;
    case Scheme::Pnc: return 2;
    case Scheme::ClassicalNc: return 3;
  }
  return 0;
}

double time_savings_percent(Scheme scheme, Scheme baseline) {
  const double ratio = static_cast<double>(slots_per_exchange(scheme)) / slots_per_exchange(baseline);
  return std::round((1.0 - ratio) * 1000.0) / 10.0;
}

TheoryPoint evaluate_theory(const SystemParams& params) {
  const SystemParams p = validate(params);
  TheoryPoint t;
  t.gamma_a = sinr_at_relay(p, EndNode::A);
  t.gamma_b = sinr_at_relay(p, EndNode::B);
  t.gamma_r = sinr_at_endnode(p, EndNode::A);
  t.alpha_a = alpha_relay_stream(p, EndNode::A);
  t.alpha_b = alpha_relay_stream(p, EndNode::B);
  t.alpha_r = alpha_broadcast(p, EndNode::A);
  t.ber_relay = ber_relay(p);
  t.ber_end_a = ber_end_to_end(p, EndNode::A);
  t.ber_end_b = ber_end_to_end(p, EndNode::B);
  t.floor_a = error_floor(p, EndNode::A);
  return t;
}

}  // namespace fdpnc
