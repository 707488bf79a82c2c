// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string_view>

#include "fdpnc/core.hpp"

namespace fdpnc {

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

/// Average SINR of node i's stream at the relay: E_i / (σ_R² + κ_R²·E_R).
double sinr_at_relay(const SystemParams& p, EndNode node);

/// Average SINR of the relay's stream at end node i: E_R / (σ_i² + κ_i²·E_i).
double sinr_at_endnode(const SystemParams& p, EndNode node);

/// α_i = E_i / (E_i + κ_R²·E_R + σ_R²), i.e. γ_i / (1 + γ_i).
double alpha_relay_stream(const SystemParams& p, EndNode node);

/// α_R seen by node i = E_R / (E_R + κ_i²·E_i + σ_i²).
double alpha_broadcast(const SystemParams& p, EndNode node);

/// Average BER of node i's symbol at the relay: (1 − √α_i) / 2.
double ber_relay_stream(const SystemParams& p, EndNode node);

/// Average BER of the network-coded symbol at the relay: (1 − √(α_A·α_B)) / 2.
double ber_relay(const SystemParams& p);

/// Average BER of the relay → node i leg alone: (1 − √α_R) / 2.
double ber_broadcast(const SystemParams& p, EndNode node);

/// End-to-end BER of the partner bit recovered at node i: (1 − √(α_A·α_B·α_R)) / 2.
double ber_end_to_end(const SystemParams& p, EndNode node);

/// p_A(1 − p_B) + p_B(1 − p_A) built from ber_relay_stream.
double ber_relay_composed(const SystemParams& p);

/// P_R(1 − P_bc) + (1 − P_R)·P_bc built from ber_relay and ber_broadcast.
double ber_end_to_end_composed(const SystemParams& p, EndNode node);

/// Noise-free limit of ber_end_to_end at node i. For unit energies this is
/// 1/2 − 1/(2(1 + κ_R²)√(1 + κ_i²)). Noise variances in p are ignored.
double error_floor(const SystemParams& p, EndNode node);

enum class Regime { NoiseLimited, SiLimited };

constexpr std::string_view to_string(Regime r) { return r == Regime::NoiseLimited ? "noise_limited" : "si_limited"; }

/// Raised when a formula that is only defined for the symmetric unit-energy
/// case is applied outside it.
class ConventionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Noise variance at which noise and residual SI trade dominance: 2κ².
double regime_boundary_noise_var(double kappa);

/// NoiseLimited iff σ_A² > 2κ²; the boundary itself is SI limited.
/// Requires unit energies and κ_R = κ_A, otherwise throws ConventionViolation.
Regime regime(const SystemParams& p);

enum class Scheme { FdPnc, Pnc, ClassicalNc };

/// Time slots needed for one bidirectional exchange of a bit pair.
int slots_per_exchange(Scheme scheme);

/// Percentage of airtime `scheme` saves relative to `baseline`, rounded to one decimal.
double time_savings_percent(Scheme scheme, Scheme baseline);

/// Every closed-form quantity for one parameter set.
struct TheoryPoint {
  double gamma_a = 0.0;
  double gamma_b = 0.0;
  double gamma_r = 0.0;  // relay stream at node A
  double alpha_a = 0.0;
  double alpha_b = 0.0;
  double alpha_r = 0.0;  // relay stream at node A
  double ber_relay = 0.0;
  double ber_end_a = 0.0;
  double ber_end_b = 0.0;
  double floor_a = 0.0;
};

/// Validates p, then evaluates every field of TheoryPoint.
TheoryPoint evaluate_theory(const SystemParams& p);

}  // namespace fdpnc
