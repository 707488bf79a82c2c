// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

// fdpnc: closed-form and Monte Carlo BER curves for full-duplex physical-layer
// network coding on the two-way relay channel.
//
//   fdpnc theory   --axis snr_db --start 0 --stop 40 --step 5 --kappa 0.01
//   fdpnc simulate --snr-db 20 --kappa 0.01 --seed 42 --strict
//   fdpnc sweep    --axis snr_db --values 0,10,20 --grid-axis kappa --grid-values 0,0.01
//   fdpnc floor    --values 0.001,0.01,0.1

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "fdpnc/cli.hpp"
#include "fdpnc/theory.hpp"

namespace {

using namespace fdpnc;
using namespace fdpnc::cli;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitStrict = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_param_flags(CLI::App* app, CliOptions& o) {
  app->add_option("--snr-db", o.snr_db, "Common SNR E/sigma^2 in dB (unit energy reference)");
  app->add_option("--sigma2", o.sigma2, "Common noise variance, linear");
  app->add_option("--energy-a", o.energy_a, "Bit energy of node A");
  app->add_option("--energy-b", o.energy_b, "Bit energy of node B");
  app->add_option("--energy-r", o.energy_r, "Bit energy of the relay");
  app->add_option("--noise-var-a", o.noise_var_a, "Noise variance at node A (overrides the common value)");
  app->add_option("--noise-var-b", o.noise_var_b, "Noise variance at node B (overrides the common value)");
  app->add_option("--noise-var-r", o.noise_var_r, "Noise variance at the relay (overrides the common value)");
  app->add_option("--kappa", o.kappa, "Residual SI amplitude coefficient at every node");
  app->add_option("--kappa-a", o.kappa_a, "Residual SI coefficient at node A");
  app->add_option("--kappa-b", o.kappa_b, "Residual SI coefficient at node B");
  app->add_option("--kappa-r", o.kappa_r, "Residual SI coefficient at the relay");
  app->add_option("--si-suppression-db", o.si_suppression_db, "SI suppression in dB; sets kappa = 10^(-dB/20)");
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--format", o.format, "Output format: csv or jsonl");
  app->add_option("--out", o.out, "Output file (default stdout)");
}

void add_sweep_flags(CLI::App* app, CliOptions& o) {
  app->add_option("--axis", o.axis, "Sweep axis: snr_db | kappa | kappa_r | kappa_a");
  app->add_option("--values", o.values, "Comma-separated axis values");
  app->add_option("--start", o.start, "Range start");
  app->add_option("--stop", o.stop, "Range stop (inclusive)");
  app->add_option("--step", o.step, "Range step");
  app->add_option("--grid-axis", o.grid_axis, "Optional second axis (inner loop)");
  app->add_option("--grid-values", o.grid_values, "Comma-separated values of the second axis");
}

void add_sim_flags(CLI::App* app, CliOptions& o) {
  app->add_option("--min-errors", o.min_errors, "Errors required on every metric before stopping");
  app->add_option("--max-slots", o.max_slots, "Hard cap on simulated slots per point");
  app->add_option("--workers", o.workers, "Worker threads");
  app->add_flag("--strict", o.strict, "Exit 2 when any 3-sigma check fails");
}

unsigned resolve_workers(const CliOptions& o) {
  return o.workers.value_or(std::max(1u, std::thread::hardware_concurrency()));
}

// Output sink honouring --format and --out; with `resume` it appends to an
// existing file and reports how many rows it already holds.
class RowWriter {
 public:
  RowWriter(const CliOptions& o, bool resume) : format_(parse_format(o.format.value_or("csv"))) {
    if (!o.out) {
      if (resume) throw std::invalid_argument("--skip-completed requires --out");
      out_ = &std::cout;
      write_header();
      return;
    }
    const std::filesystem::path path = *o.out;
    bool append = false;
    if (resume && std::filesystem::exists(path)) {
      completed_ = count_completed(path);
      append = true;
    }
    file_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!file_) throw IoError("cannot open " + path.string() + " for writing");
    out_ = &file_;
    if (!append || (format_ == OutputFormat::Csv && !header_seen_)) write_header();
  }

  std::size_t completed() const { return completed_; }

  void write(const CurveRecord& r) {
    *out_ << (format_ == OutputFormat::Csv ? to_csv_row(r) : to_jsonl(r)) << '\n';
    out_->flush();
    if (!*out_) throw IoError("write failed");
  }

 private:
  void write_header() {
    if (format_ == OutputFormat::Csv) *out_ << csv_header() << '\n';
  }

  // Complete (newline-terminated) data rows; a torn final line is dropped.
  std::size_t count_completed(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    const auto last_newline = content.rfind('\n');
    const std::size_t keep = last_newline == std::string::npos ? 0 : last_newline + 1;
    if (keep != content.size()) {
      content.resize(keep);
      std::filesystem::resize_file(path, keep);
    }
    std::size_t lines = 0;
    std::istringstream rows(content);
    std::string line;
    bool first = true;
    while (std::getline(rows, line)) {
      if (first && format_ == OutputFormat::Csv) {
        if (line != csv_header()) throw IoError(path.string() + " has a different CSV header; refusing to resume");
        header_seen_ = true;
        first = false;
        continue;
      }
      first = false;
      if (!line.empty()) ++lines;
    }
    return lines;
  }

  OutputFormat format_;
  std::ofstream file_;
  std::ostream* out_ = nullptr;
  std::size_t completed_ = 0;
  bool header_seen_ = false;
};

void load_config(const std::string& path, CliOptions& o) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  merge_config(buf.str(), o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-duplex physical-layer network coding BER engine"};
  app.require_subcommand(1);
  CliOptions opts;
  std::string config_path;

  auto* theory = app.add_subcommand("theory", "Closed-form BER table over a sweep");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run at one operating point, checked against theory");
  auto* sweep = app.add_subcommand("sweep", "Theory and Monte Carlo over a sweep");
  auto* floor = app.add_subcommand("floor", "Error floor and regime boundary per kappa");
  for (auto* sub : {theory, simulate, sweep, floor}) {
    add_param_flags(sub, opts);
    sub->add_option("--config", config_path, "JSON file supplying any flag; explicit flags win");
  }
  for (auto* sub : {theory, sweep, floor}) add_sweep_flags(sub, opts);
  for (auto* sub : {simulate, sweep}) add_sim_flags(sub, opts);
  sweep->add_flag("--skip-completed", opts.skip_completed, "Resume: keep rows already in --out");
  sweep->add_flag("--parallel-points", opts.parallel_points, "Run sweep points concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (!config_path.empty()) load_config(config_path, opts);

    if (theory->parsed()) {
      const SweepSpec spec = resolve_sweep(opts, SweepAxis::SnrDb);
      RowWriter writer(opts, false);
      for (const auto& row : cmd_theory(spec)) writer.write(row);
      return kExitOk;
    }
    if (simulate->parsed()) {
      const OperatingPoint point = resolve_point(opts);
      const StopRule stop = resolve_stop_rule(opts);
      RowWriter writer(opts, false);
      const CurveRecord row = cmd_simulate(point, stop, resolve_workers(opts));
      writer.write(row);
      if (!row.warnings.empty()) std::cerr << "warning: " << row.warnings << '\n';
      return opts.strict && !row.pass.value_or(false) ? kExitStrict : kExitOk;
    }
    if (sweep->parsed()) {
      const SweepSpec spec = resolve_sweep(opts, SweepAxis::SnrDb);
      const StopRule stop = resolve_stop_rule(opts);
      RowWriter writer(opts, opts.skip_completed);
      bool all_pass = true;
      SweepRunOptions run;
      run.skip_points = writer.completed();
      run.parallel_points = opts.parallel_points;
      cmd_sweep(spec, stop, resolve_workers(opts), run, [&](const CurveRecord& row) {
        all_pass = all_pass && row.pass.value_or(false);
        writer.write(row);
      });
      return opts.strict && !all_pass ? kExitStrict : kExitOk;
    }
    if (floor->parsed()) {
      SweepSpec spec = resolve_sweep(opts, SweepAxis::Kappa);
      if (spec.axis != SweepAxis::Kappa || spec.grid_axis)
        throw InvalidSweepAxis("InvalidSweepAxis: floor takes a single kappa axis");
      RowWriter writer(opts, false);
      for (const auto& row : cmd_floor(spec.values, spec.fixed.params)) writer.write(row);
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
