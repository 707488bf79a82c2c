// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdpnc/core.hpp"
#include "fdpnc/sim.hpp"

namespace fdpnc::cli {

enum class SweepAxis { SnrDb, Kappa, KappaR, KappaA };

std::string_view to_string(SweepAxis axis);
/// Throws InvalidSweepAxis for names outside snr_db | kappa | kappa_r | kappa_a.
SweepAxis parse_axis(std::string_view name);

class InvalidSweepAxis : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter set plus the SNR label it was built from, so the echoed
/// snr_db column is exactly what the user asked for.
struct OperatingPoint {
  SystemParams params;
  std::optional<double> snr_db;
};

/// Parameter sweep; `grid_axis` optionally adds a second axis (outer loop is `axis`).
struct SweepSpec {
  SweepAxis axis = SweepAxis::SnrDb;
  std::vector<double> values;
  std::optional<SweepAxis> grid_axis;
  std::vector<double> grid_values;
  OperatingPoint fixed;
};

/// start, start + step, ... up to stop inclusive (with a 1e−9·step tolerance).
std::vector<double> expand_range(double start, double stop, double step);

/// Parses "0,5,10" into numbers; throws InvalidSweepAxis on malformed input.
std::vector<double> parse_value_list(std::string_view text);

/// Applies one axis value to a parameter set. snr_db sets a common noise
/// variance 10^(−snr/10) relative to unit energy.
OperatingPoint apply_axis(OperatingPoint p, SweepAxis axis, double value);

/// Every sweep point in output order. Throws InvalidSweepAxis if empty.
std::vector<OperatingPoint> sweep_points(const SweepSpec& sweep);

/// One output row. Empty optionals print as empty CSV cells / JSON null.
struct CurveRecord {
  std::optional<double> snr_db;
  std::optional<double> sigma2;
  double energy_a = 1.0;
  double energy_b = 1.0;
  double energy_r = 1.0;
  double kappa_a = 0.0;
  double kappa_b = 0.0;
  double kappa_r = 0.0;
  std::optional<double> gamma_a;
  std::optional<double> gamma_b;
  std::optional<double> gamma_r;
  std::optional<double> theory_ber_relay;
  std::optional<double> theory_ber_end_a;
  std::optional<double> theory_ber_end_b;
  std::optional<double> floor_a;
  std::optional<std::string> regime;
  std::optional<double> sim_ber_relay;
  std::optional<double> sim_stderr_relay;
  std::optional<double> sim_ber_end_a;
  std::optional<double> sim_stderr_end_a;
  std::optional<double> sim_ber_end_b;
  std::optional<double> sim_stderr_end_b;
  std::optional<std::uint64_t> slots;
  std::optional<double> z_relay;
  std::optional<double> z_end_a;
  std::optional<double> z_end_b;
  std::optional<bool> pass;
  std::uint64_t seed = 0;
  std::string warnings;
};

inline constexpr std::array<std::string_view, 29> kColumns = {
    "snr_db",          "sigma2",           "energy_a",         "energy_b",      "energy_r",         "kappa_a",
    "kappa_b",         "kappa_r",          "gamma_a",          "gamma_b",       "gamma_r",          "theory_ber_relay",
    "theory_ber_end_a", "theory_ber_end_b", "floor_a",          "regime",        "sim_ber_relay",    "sim_stderr_relay",
    "sim_ber_end_a",   "sim_stderr_end_a", "sim_ber_end_b",    "sim_stderr_end_b", "slots",          "z_relay",
    "z_end_a",         "z_end_b",          "pass",             "seed",          "warnings"};

/// Parameter echo only. snr_db falls back to −10·log10(σ²) when all three
/// noise variances agree.
CurveRecord echo_record(const OperatingPoint& p);

/// Parameter echo plus every theory column. Propagates InvalidParams.
CurveRecord cmd_theory(const OperatingPoint& p);
std::vector<CurveRecord> cmd_theory(const SweepSpec& sweep);

/// Theory plus a Monte Carlo campaign and its 3σ scoreboard.
CurveRecord cmd_simulate(const OperatingPoint& p, const StopRule& stop, unsigned workers);

struct SweepRunOptions {
  std::size_t skip_points = 0;   // points already present in the output
  bool parallel_points = false;  // run points concurrently, emit in order
};

/// Runs cmd_simulate per point and hands each row to `emit` in point order.
/// A point that fails validation becomes a row with the error in `warnings`.
/// Returns the number of rows emitted.
std::size_t cmd_sweep(const SweepSpec& sweep, const StopRule& stop, unsigned workers, const SweepRunOptions& run,
                      const std::function<void(const CurveRecord&)>& emit);

/// Floor Γ_A for each κ (κ_R = κ_A = κ_B = κ), with sigma2/snr_db holding the
/// regime boundary 2κ². Throws ConventionViolation unless base energies are 1.
std::vector<CurveRecord> cmd_floor(const std::vector<double>& kappas, const SystemParams& base);

enum class OutputFormat { Csv, Jsonl };
OutputFormat parse_format(std::string_view name);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::string csv_header();
std::string to_csv_row(const CurveRecord& r);
std::string to_jsonl(const CurveRecord& r);

/// Command-line options before defaults are applied. Every field set on the
/// command line wins over the config file.
struct CliOptions {
  std::optional<double> snr_db;
  std::optional<double> sigma2;
  std::optional<double> energy_a, energy_b, energy_r;
  std::optional<double> noise_var_a, noise_var_b, noise_var_r;
  std::optional<double> kappa, kappa_a, kappa_b, kappa_r;
  std::optional<double> si_suppression_db;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> min_errors;
  std::optional<std::uint64_t> max_slots;
  std::optional<unsigned> workers;
  std::optional<std::string> format;
  std::optional<std::string> out;
  std::optional<std::string> axis;
  std::optional<std::string> values;
  std::optional<double> start, stop, step;
  std::optional<std::string> grid_axis;
  std::optional<std::string> grid_values;
  bool strict = false;
  bool skip_completed = false;
  bool parallel_points = false;
};

/// Fills unset fields from a JSON object whose keys are the long flag names
/// (e.g. "snr-db", "kappa-r", "strict"). Throws std::invalid_argument for
/// malformed JSON, unknown keys or mistyped values.
void merge_config(std::string_view json_text, CliOptions& opts);

/// Defaults: unit energies, 10 dB SNR, κ = 0, seed 1. Throws std::invalid_argument
/// for conflicting flags. The result is not validated.
OperatingPoint resolve_point(const CliOptions& opts);
StopRule resolve_stop_rule(const CliOptions& opts);
SweepSpec resolve_sweep(const CliOptions& opts, SweepAxis default_axis);

/// κ giving `db` of self-interference suppression: √(10^(−db/10)).
double kappa_from_suppression_db(double db);

}  // namespace fdpnc::cli
