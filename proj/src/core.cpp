// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdpnc/core.hpp"

#include <cmath>

namespace fdpnc {

namespace {

std::string join_messages(const std::vector<ParamIssue>& issues) {
  std::string out = "invalid system parameters:";
  for (const auto& issue : issues) {
    out += ' ';
    out += issue.message();
    out += ';';
  }
  return out;
}

}  // namespace

SystemParams symmetric_params(double noise_var, double kappa, std::uint64_t seed) {
  SystemParams p;
  p.energy_a = p.energy_b = p.energy_r = 1.0;
  p.noise_var_a = p.noise_var_b = p.noise_var_r = noise_var;
  p.kappa_a = p.kappa_b = p.kappa_r = kappa;
  p.seed = seed;
  return p;
}

std::string_view to_string(ParamErrorKind kind) {
  switch (kind) {
    case ParamErrorKind::NonPositiveEnergy: return "NonPositiveEnergy";
    case ParamErrorKind::NegativeNoise: return "NegativeNoise";
    case ParamErrorKind::NegativeKappa: return "NegativeKappa";
    case ParamErrorKind::DegenerateSinrDenominator: return "DegenerateSinrDenominator";
  }
  return "Unknown";
}

std::string ParamIssue::message() const {
  return std::string(to_string(kind)) + "(" + field + ")";
}

InvalidParams::InvalidParams(std::vector<ParamIssue> issues)
    : std::invalid_argument(join_messages(issues)), issues_(std::move(issues)) {}

std::vector<ParamIssue> check(const SystemParams& p) {
  std::vector<ParamIssue> issues;
  // NaN fails every comparison, so each test is phrased as "not valid".
  auto energy = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) issues.push_back({ParamErrorKind::NonPositiveEnergy, name});
  };
  auto noise = [&](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) issues.push_back({ParamErrorKind::NegativeNoise, name});
  };
  auto kappa = [&](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) issues.push_back({ParamErrorKind::NegativeKappa, name});
  };
  energy(p.energy_a, "energy_a");
  energy(p.energy_b, "energy_b");
  energy(p.energy_r, "energy_r");
  noise(p.noise_var_a, "noise_var_a");
  noise(p.noise_var_b, "noise_var_b");
  noise(p.noise_var_r, "noise_var_r");
  kappa(p.kappa_a, "kappa_a");
  kappa(p.kappa_b, "kappa_b");
  kappa(p.kappa_r, "kappa_r");

  // Interference-plus-noise power at each receiver must be positive.
  auto denominator = [&](double noise_var, double k, double e, const char* node) {
    if (!(noise_var + k * k * e > 0.0)) issues.push_back({ParamErrorKind::DegenerateSinrDenominator, node});
  };
  denominator(p.noise_var_r, p.kappa_r, p.energy_r, "relay");
  denominator(p.noise_var_a, p.kappa_a, p.energy_a, "node_a");
  denominator(p.noise_var_b, p.kappa_b, p.energy_b, "node_b");
  return issues;
}

SystemParams validate(const SystemParams& params) {
  auto issues = check(params);
  if (!issues.empty()) throw InvalidParams(std::move(issues));
  return params;
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double x) {
  if (!(x > 0.0)) throw std::domain_error("NonPositiveLinearValue: dB conversion requires a positive value");
  return 10.0 * std::log10(x);
}

}  // namespace fdpnc
