// Copyright 2026 The fdpnc Authors
// SPDX-License-Identifier: Apache-2.0

#include "fdpnc/cli.hpp"

#include <charconv>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "fdpnc/theory.hpp"

namespace fdpnc::cli {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::SnrDb: return "snr_db";
    case SweepAxis::Kappa: return "kappa";
    case SweepAxis::KappaR: return "kappa_r";
    case SweepAxis::KappaA: return "kappa_a";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "snr_db") return SweepAxis::SnrDb;
  if (name == "kappa") return SweepAxis::Kappa;
  if (name == "kappa_r") return SweepAxis::KappaR;
  if (name == "kappa_a") return SweepAxis::KappaA;
  throw InvalidSweepAxis("InvalidSweepAxis: unknown axis '" + std::string(name) + "'");
}

std::vector<double> expand_range(double start, double stop, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidSweepAxis("InvalidSweepAxis: step must be > 0");
  if (!std::isfinite(start) || !std::isfinite(stop) || stop < start)
    throw InvalidSweepAxis("InvalidSweepAxis: need finite start <= stop");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(start + static_cast<double>(i) * step);
  return values;
}

std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw InvalidSweepAxis("InvalidSweepAxis: bad value '" + std::string(item) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

OperatingPoint apply_axis(OperatingPoint p, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::SnrDb:
      p.params.noise_var_a = p.params.noise_var_b = p.params.noise_var_r = db_to_linear(-value);
      p.snr_db = value;
      break;
    case SweepAxis::Kappa: p.params.kappa_a = p.params.kappa_b = p.params.kappa_r = value; break;
    case SweepAxis::KappaR: p.params.kappa_r = value; break;
    case SweepAxis::KappaA: p.params.kappa_a = value; break;
  }
  return p;
}

std::vector<OperatingPoint> sweep_points(const SweepSpec& sweep) {
  if (sweep.values.empty()) throw InvalidSweepAxis("InvalidSweepAxis: sweep has no values");
  if (sweep.grid_axis && sweep.grid_values.empty())
    throw InvalidSweepAxis("InvalidSweepAxis: grid axis has no values");
  std::vector<OperatingPoint> points;
  for (double v : sweep.values) {
    const OperatingPoint outer = apply_axis(sweep.fixed, sweep.axis, v);
    if (!sweep.grid_axis) {
      points.push_back(outer);
      continue;
    }
    for (double g : sweep.grid_values) points.push_back(apply_axis(outer, *sweep.grid_axis, g));
  }
  return points;
}

CurveRecord echo_record(const OperatingPoint& point) {
  const SystemParams& p = point.params;
  CurveRecord r;
  const bool common_noise = p.noise_var_a == p.noise_var_b && p.noise_var_a == p.noise_var_r;
  r.sigma2 = p.noise_var_r;
  if (point.snr_db) {
    r.snr_db = point.snr_db;
  } else if (common_noise && p.noise_var_r > 0.0) {
    r.snr_db = -linear_to_db(p.noise_var_r);
  }
  if (!common_noise) {
    r.warnings = "per_node_noise(a=" + format_double(p.noise_var_a) + ";b=" + format_double(p.noise_var_b) +
                 ";r=" + format_double(p.noise_var_r) + ")";
  }
  r.energy_a = p.energy_a;
  r.energy_b = p.energy_b;
  r.energy_r = p.energy_r;
  r.kappa_a = p.kappa_a;
  r.kappa_b = p.kappa_b;
  r.kappa_r = p.kappa_r;
  r.seed = p.seed;
  return r;
}

namespace {

void append_warning(std::string& warnings, std::string_view w) {
  if (!warnings.empty()) warnings += ';';
  warnings += w;
}

void fill_theory(CurveRecord& r, const SystemParams& p) {
  const TheoryPoint t = evaluate_theory(p);
  r.gamma_a = t.gamma_a;
  r.gamma_b = t.gamma_b;
  r.gamma_r = t.gamma_r;
  r.theory_ber_relay = t.ber_relay;
  r.theory_ber_end_a = t.ber_end_a;
  r.theory_ber_end_b = t.ber_end_b;
  r.floor_a = t.floor_a;
  try {
    r.regime = std::string(to_string(regime(p)));
  } catch (const ConventionViolation&) {
    // Regime is only labelled for the symmetric unit-energy case.
  }
}

std::optional<double> finite(double v) { return std::isfinite(v) ? std::optional<double>(v) : std::nullopt; }

CurveRecord error_record(const OperatingPoint& point, const std::exception& e) {
  CurveRecord r = echo_record(point);
  append_warning(r.warnings, std::string("error:") + e.what());
  return r;
}

}  // namespace

CurveRecord cmd_theory(const OperatingPoint& p) {
  CurveRecord r = echo_record(p);
  fill_theory(r, p.params);
  return r;
}

std::vector<CurveRecord> cmd_theory(const SweepSpec& sweep) {
  std::vector<CurveRecord> rows;
  for (const auto& point : sweep_points(sweep)) rows.push_back(cmd_theory(point));
  return rows;
}

CurveRecord cmd_simulate(const OperatingPoint& p, const StopRule& stop, unsigned workers) {
  CurveRecord r = cmd_theory(p);
  const TheoryPoint theory = evaluate_theory(p.params);
  const SimResult sim = run_campaign(p.params, stop, workers);
  const Scoreboard board = scoreboard(sim, theory);
  r.sim_ber_relay = sim.relay.rate();
  r.sim_stderr_relay = sim.relay.std_error();
  r.sim_ber_end_a = sim.end_a.rate();
  r.sim_stderr_end_a = sim.end_a.std_error();
  r.sim_ber_end_b = sim.end_b.rate();
  r.sim_stderr_end_b = sim.end_b.std_error();
  r.slots = sim.slots_run;
  r.z_relay = finite(board.relay.z);
  r.z_end_a = finite(board.end_a.z);
  r.z_end_b = finite(board.end_b.z);
  r.pass = board.pass;
  if (sim.stop_rule_unreachable) append_warning(r.warnings, "stop_rule_unreachable");
  return r;
}

std::size_t cmd_sweep(const SweepSpec& sweep, const StopRule& stop, unsigned workers, const SweepRunOptions& run,
                      const std::function<void(const CurveRecord&)>& emit) {
  const auto points = sweep_points(sweep);
  if (run.skip_points >= points.size()) return 0;
  const std::size_t first = run.skip_points;
  const std::size_t count = points.size() - first;

  auto simulate_point = [&](std::size_t i, unsigned campaign_workers) {
    try {
      return cmd_simulate(points[first + i], stop, campaign_workers);
    } catch (const std::exception& e) {
      return error_record(points[first + i], e);
    }
  };

  if (!run.parallel_points || workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) emit(simulate_point(i, workers));
    return count;
  }

  // Points run concurrently with one campaign thread each; rows are released
  // strictly in point order as soon as the prefix is complete.
  std::vector<std::optional<CurveRecord>> rows(count);
  std::mutex mu;
  std::condition_variable done;
  std::size_t next = 0;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard lock(mu);
            if (next >= count) return;
            i = next++;
          }
          CurveRecord row = simulate_point(i, 1);
          {
            std::lock_guard lock(mu);
            rows[i] = std::move(row);
          }
          done.notify_all();
        }
      });
    }
    for (std::size_t emitted = 0; emitted < count; ++emitted) {
      std::unique_lock lock(mu);
      done.wait(lock, [&] { return rows[emitted].has_value(); });
      CurveRecord row = std::move(*rows[emitted]);
      lock.unlock();
      emit(row);
    }
  }
  return count;
}

std::vector<CurveRecord> cmd_floor(const std::vector<double>& kappas, const SystemParams& base) {
  if (kappas.empty()) throw InvalidSweepAxis("InvalidSweepAxis: floor needs at least one kappa");
  if (base.energy_a != 1.0 || base.energy_b != 1.0 || base.energy_r != 1.0)
    throw ConventionViolation("ConventionViolation: floor table requires unit energies");
  std::vector<CurveRecord> rows;
  for (double kappa : kappas) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InvalidParams({{ParamErrorKind::NegativeKappa, "kappa"}});
    SystemParams p = base;
    p.kappa_a = p.kappa_b = p.kappa_r = kappa;
    const double boundary = regime_boundary_noise_var(kappa);
    p.noise_var_a = p.noise_var_b = p.noise_var_r = boundary;
    CurveRecord r = echo_record({p, std::nullopt});
    r.floor_a = error_floor(p, EndNode::A);
    r.regime = std::string(to_string(Regime::SiLimited));
    rows.push_back(std::move(r));
  }
  return rows;
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "jsonl") return OutputFormat::Jsonl;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

// Column values in kColumns order; nullopt means empty.
std::vector<std::optional<std::string>> cells(const CurveRecord& r) {
  auto d = [](const std::optional<double>& v) -> std::optional<std::string> {
    if (v && std::isfinite(*v)) return format_double(*v);
    return std::nullopt;
  };
  std::vector<std::optional<std::string>> c;
  c.reserve(kColumns.size());
  c.push_back(d(r.snr_db));
  c.push_back(d(r.sigma2));
  c.push_back(d(r.energy_a));
  c.push_back(d(r.energy_b));
  c.push_back(d(r.energy_r));
  c.push_back(d(r.kappa_a));
  c.push_back(d(r.kappa_b));
  c.push_back(d(r.kappa_r));
  c.push_back(d(r.gamma_a));
  c.push_back(d(r.gamma_b));
  c.push_back(d(r.gamma_r));
  c.push_back(d(r.theory_ber_relay));
  c.push_back(d(r.theory_ber_end_a));
  c.push_back(d(r.theory_ber_end_b));
  c.push_back(d(r.floor_a));
  c.push_back(r.regime);
  c.push_back(d(r.sim_ber_relay));
  c.push_back(d(r.sim_stderr_relay));
  c.push_back(d(r.sim_ber_end_a));
  c.push_back(d(r.sim_stderr_end_a));
  c.push_back(d(r.sim_ber_end_b));
  c.push_back(d(r.sim_stderr_end_b));
  c.push_back(r.slots ? std::optional<std::string>(std::to_string(*r.slots)) : std::nullopt);
  c.push_back(d(r.z_relay));
  c.push_back(d(r.z_end_a));
  c.push_back(d(r.z_end_b));
  c.push_back(r.pass ? std::optional<std::string>(*r.pass ? "true" : "false") : std::nullopt);
  c.push_back(std::to_string(r.seed));
  c.push_back(r.warnings.empty() ? std::nullopt : std::optional<std::string>(r.warnings));
  return c;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string to_csv_row(const CurveRecord& r) {
  const auto c = cells(r);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    if (c[i]) out += csv_escape(*c[i]);
  }
  return out;
}

std::string to_jsonl(const CurveRecord& r) {
  auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    if (v && std::isfinite(*v)) return *v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["snr_db"] = opt(r.snr_db);
  j["sigma2"] = opt(r.sigma2);
  j["energy_a"] = r.energy_a;
  j["energy_b"] = r.energy_b;
  j["energy_r"] = r.energy_r;
  j["kappa_a"] = r.kappa_a;
  j["kappa_b"] = r.kappa_b;
  j["kappa_r"] = r.kappa_r;
  j["gamma_a"] = opt(r.gamma_a);
  j["gamma_b"] = opt(r.gamma_b);
  j["gamma_r"] = opt(r.gamma_r);
  j["theory_ber_relay"] = opt(r.theory_ber_relay);
  j["theory_ber_end_a"] = opt(r.theory_ber_end_a);
  j["theory_ber_end_b"] = opt(r.theory_ber_end_b);
  j["floor_a"] = opt(r.floor_a);
  j["regime"] = r.regime ? nlohmann::ordered_json(*r.regime) : nullptr;
  j["sim_ber_relay"] = opt(r.sim_ber_relay);
  j["sim_stderr_relay"] = opt(r.sim_stderr_relay);
  j["sim_ber_end_a"] = opt(r.sim_ber_end_a);
  j["sim_stderr_end_a"] = opt(r.sim_stderr_end_a);
  j["sim_ber_end_b"] = opt(r.sim_ber_end_b);
  j["sim_stderr_end_b"] = opt(r.sim_stderr_end_b);
  j["slots"] = r.slots ? nlohmann::ordered_json(*r.slots) : nullptr;
  j["z_relay"] = opt(r.z_relay);
  j["z_end_a"] = opt(r.z_end_a);
  j["z_end_b"] = opt(r.z_end_b);
  j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nullptr;
  j["seed"] = r.seed;
  j["warnings"] = r.warnings.empty() ? nullptr : nlohmann::ordered_json(r.warnings);
  return j.dump();
}

void merge_config(std::string_view json_text, CliOptions& opts) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!config.is_object()) throw std::invalid_argument("config: top level must be a JSON object");

  // Only fills fields the command line left unset.
  auto number = [&](const nlohmann::json& v, const std::string& key, std::optional<double>& field) {
    if (!v.is_number()) throw std::invalid_argument("config: '" + key + "' must be a number");
    if (!field) field = v.get<double>();
  };
  auto count = [&](const nlohmann::json& v, const std::string& key, auto& field) {
    if (!v.is_number_unsigned()) throw std::invalid_argument("config: '" + key + "' must be a non-negative integer");
    using T = typename std::remove_reference_t<decltype(field)>::value_type;
    if (!field) field = v.get<T>();
  };
  auto text = [&](const nlohmann::json& v, const std::string& key, std::optional<std::string>& field) {
    if (!v.is_string()) throw std::invalid_argument("config: '" + key + "' must be a string");
    if (!field) field = v.get<std::string>();
  };
  auto flag = [&](const nlohmann::json& v, const std::string& key, bool& field) {
    if (!v.is_boolean()) throw std::invalid_argument("config: '" + key + "' must be true or false");
    field = field || v.get<bool>();
  };

  const std::map<std::string, std::function<void(const nlohmann::json&, const std::string&)>> handlers = {
      {"snr-db", [&](auto& v, auto& k) { number(v, k, opts.snr_db); }},
      {"sigma2", [&](auto& v, auto& k) { number(v, k, opts.sigma2); }},
      {"energy-a", [&](auto& v, auto& k) { number(v, k, opts.energy_a); }},
      {"energy-b", [&](auto& v, auto& k) { number(v, k, opts.energy_b); }},
      {"energy-r", [&](auto& v, auto& k) { number(v, k, opts.energy_r); }},
      {"noise-var-a", [&](auto& v, auto& k) { number(v, k, opts.noise_var_a); }},
      {"noise-var-b", [&](auto& v, auto& k) { number(v, k, opts.noise_var_b); }},
      {"noise-var-r", [&](auto& v, auto& k) { number(v, k, opts.noise_var_r); }},
      {"kappa", [&](auto& v, auto& k) { number(v, k, opts.kappa); }},
      {"kappa-a", [&](auto& v, auto& k) { number(v, k, opts.kappa_a); }},
      {"kappa-b", [&](auto& v, auto& k) { number(v, k, opts.kappa_b); }},
      {"kappa-r", [&](auto& v, auto& k) { number(v, k, opts.kappa_r); }},
      {"si-suppression-db", [&](auto& v, auto& k) { number(v, k, opts.si_suppression_db); }},
      {"seed", [&](auto& v, auto& k) { count(v, k, opts.seed); }},
      {"min-errors", [&](auto& v, auto& k) { count(v, k, opts.min_errors); }},
      {"max-slots", [&](auto& v, auto& k) { count(v, k, opts.max_slots); }},
      {"workers", [&](auto& v, auto& k) { count(v, k, opts.workers); }},
      {"format", [&](auto& v, auto& k) { text(v, k, opts.format); }},
      {"out", [&](auto& v, auto& k) { text(v, k, opts.out); }},
      {"axis", [&](auto& v, auto& k) { text(v, k, opts.axis); }},
      {"values", [&](auto& v, auto& k) { text(v, k, opts.values); }},
      {"start", [&](auto& v, auto& k) { number(v, k, opts.start); }},
      {"stop", [&](auto& v, auto& k) { number(v, k, opts.stop); }},
      {"step", [&](auto& v, auto& k) { number(v, k, opts.step); }},
      {"grid-axis", [&](auto& v, auto& k) { text(v, k, opts.grid_axis); }},
      {"grid-values", [&](auto& v, auto& k) { text(v, k, opts.grid_values); }},
      {"strict", [&](auto& v, auto& k) { flag(v, k, opts.strict); }},
      {"skip-completed", [&](auto& v, auto& k) { flag(v, k, opts.skip_completed); }},
      {"parallel-points", [&](auto& v, auto& k) { flag(v, k, opts.parallel_points); }},
  };
  for (const auto& [key, value] : config.items()) {
    const auto it = handlers.find(key);
    if (it == handlers.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
    it->second(value, key);
  }
}

double kappa_from_suppression_db(double db) { return std::sqrt(db_to_linear(-db)); }

OperatingPoint resolve_point(const CliOptions& o) {
  if (o.snr_db && o.sigma2) throw std::invalid_argument("--snr-db and --sigma2 are mutually exclusive");
  if (o.kappa && o.si_suppression_db)
    throw std::invalid_argument("--kappa and --si-suppression-db are mutually exclusive");

  OperatingPoint point;
  SystemParams& p = point.params;
  double sigma2 = 0.1;
  if (o.sigma2) {
    sigma2 = *o.sigma2;
  } else {
    point.snr_db = o.snr_db.value_or(10.0);
    sigma2 = db_to_linear(-*point.snr_db);
  }
  p.noise_var_a = o.noise_var_a.value_or(sigma2);
  p.noise_var_b = o.noise_var_b.value_or(sigma2);
  p.noise_var_r = o.noise_var_r.value_or(sigma2);
  if (o.noise_var_a || o.noise_var_b || o.noise_var_r) point.snr_db.reset();

  p.energy_a = o.energy_a.value_or(1.0);
  p.energy_b = o.energy_b.value_or(1.0);
  p.energy_r = o.energy_r.value_or(1.0);

  double kappa = 0.0;
  if (o.kappa) kappa = *o.kappa;
  if (o.si_suppression_db) kappa = kappa_from_suppression_db(*o.si_suppression_db);
  p.kappa_a = o.kappa_a.value_or(kappa);
  p.kappa_b = o.kappa_b.value_or(kappa);
  p.kappa_r = o.kappa_r.value_or(kappa);
  p.seed = o.seed.value_or(1);
  return point;
}

StopRule resolve_stop_rule(const CliOptions& o) {
  StopRule stop;
  stop.min_errors = o.min_errors.value_or(stop.min_errors);
  stop.max_slots = o.max_slots.value_or(stop.max_slots);
  if (stop.min_errors < 1 || stop.max_slots < 1)
    throw std::invalid_argument("--min-errors and --max-slots must be >= 1");
  return stop;
}

SweepSpec resolve_sweep(const CliOptions& o, SweepAxis default_axis) {
  SweepSpec sweep;
  sweep.axis = o.axis ? parse_axis(*o.axis) : default_axis;
  sweep.fixed = resolve_point(o);
  if (o.values) {
    sweep.values = parse_value_list(*o.values);
  } else if (o.start && o.stop && o.step) {
    sweep.values = expand_range(*o.start, *o.stop, *o.step);
  } else if (o.start || o.stop || o.step) {
    throw InvalidSweepAxis("InvalidSweepAxis: --start, --stop and --step must be given together");
  }
  if (sweep.values.empty()) throw InvalidSweepAxis("InvalidSweepAxis: sweep needs --values or --start/--stop/--step");
  if (o.grid_axis) {
    sweep.grid_axis = parse_axis(*o.grid_axis);
    if (!o.grid_values) throw InvalidSweepAxis("InvalidSweepAxis: --grid-axis needs --grid-values");
    sweep.grid_values = parse_value_list(*o.grid_values);
    if (sweep.grid_values.empty()) throw InvalidSweepAxis("InvalidSweepAxis: empty --grid-values");
  }
  return sweep;
}

}  // namespace fdpnc::cli
