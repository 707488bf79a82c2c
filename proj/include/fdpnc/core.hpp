// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdpnc {

/// End node of the two-way relay channel.
enum class EndNode { A, B };

constexpr std::string_view to_string(EndNode node) { return node == EndNode::A ? "A" : "B"; }

/// Information bit d ∈ {0, 1}.
class Bit {
 public:
  constexpr Bit() = default;
  constexpr explicit Bit(bool one) : one_(one) {}

  /// Throws std::invalid_argument for anything outside {0, 1}.
  static Bit from_int(int v) {
    if (v != 0 && v != 1) throw std::invalid_argument("bit value must be 0 or 1");
    return Bit(v == 1);
  }

  constexpr int value() const { return one_ ? 1 : 0; }
  constexpr bool is_one() const { return one_; }

  friend constexpr Bit operator^(Bit a, Bit b) { return Bit(a.one_ != b.one_); }
  friend constexpr bool operator==(Bit, Bit) = default;

 private:
  bool one_ = false;
};

/// Antipodal BPSK symbol s ∈ {+1, −1}.
class BpskSymbol {
 public:
  static constexpr BpskSymbol plus() { return BpskSymbol(true); }
  static constexpr BpskSymbol minus() { return BpskSymbol(false); }

  /// Throws std::invalid_argument for anything outside {+1, −1}.
  static BpskSymbol from_int(int v) {
    if (v != 1 && v != -1) throw std::invalid_argument("BPSK symbol must be +1 or -1");
    return BpskSymbol(v == 1);
  }

  constexpr int value() const { return positive_ ? 1 : -1; }
  constexpr double amplitude() const { return positive_ ? 1.0 : -1.0; }
  constexpr bool is_plus() const { return positive_; }

  friend constexpr BpskSymbol operator-(BpskSymbol s) { return BpskSymbol(!s.positive_); }
  friend constexpr BpskSymbol operator*(BpskSymbol a, BpskSymbol b) {
    return BpskSymbol(a.positive_ == b.positive_);
  }
  friend constexpr bool operator==(BpskSymbol, BpskSymbol) = default;

 private:
  constexpr explicit BpskSymbol(bool positive) : positive_(positive) {}
  bool positive_ = true;
};

/// Scenario constants, all linear scale. κ values are amplitude coefficients:
/// the residual self-interference power of node i is κ_i²·E_i.
struct SystemParams {
  double energy_a = 1.0;
  double energy_b = 1.0;
  double energy_r = 1.0;
  double noise_var_a = 0.1;
  double noise_var_b = 0.1;
  double noise_var_r = 0.1;
  double kappa_a = 0.0;
  double kappa_b = 0.0;
  double kappa_r = 0.0;
  std::uint64_t seed = 1;

  double energy(EndNode node) const { return node == EndNode::A ? energy_a : energy_b; }
  double noise_var(EndNode node) const { return node == EndNode::A ? noise_var_a : noise_var_b; }
  double kappa(EndNode node) const { return node == EndNode::A ? kappa_a : kappa_b; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Unit energies and a common noise variance / κ at every node.
SystemParams symmetric_params(double noise_var, double kappa, std::uint64_t seed = 1);

enum class ParamErrorKind { NonPositiveEnergy, NegativeNoise, NegativeKappa, DegenerateSinrDenominator };

std::string_view to_string(ParamErrorKind kind);

struct ParamIssue {
  ParamErrorKind kind;
  std::string field;  // offending field, or the receiving node for denominator issues

  std::string message() const;
  friend bool operator==(const ParamIssue&, const ParamIssue&) = default;
};

/// Thrown by validate(); carries every violated invariant.
class InvalidParams : public std::invalid_argument {
 public:
  explicit InvalidParams(std::vector<ParamIssue> issues);
  const std::vector<ParamIssue>& issues() const { return issues_; }

 private:
  std::vector<ParamIssue> issues_;
};

/// Lists every violated invariant; empty when the parameters are usable.
std::vector<ParamIssue> check(const SystemParams& params);

/// Returns params unchanged if check() is empty, otherwise throws InvalidParams.
SystemParams validate(const SystemParams& params);

double db_to_linear(double x_db);

/// Throws std::domain_error (NonPositiveLinearValue) for x ≤ 0.
double linear_to_db(double x);

}  // namespace fdpnc
