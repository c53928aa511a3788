#include "morphcomp/rotator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "morphcomp/error.hpp"
#include "morphcomp/parallel.hpp"

namespace morph::rotator {
namespace {

double sgn(double v) { return v >= 0.0 ? 1.0 : -1.0; }

void put(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void put_fixed(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  out << buf;
}

struct RunResult {
  double asoc_a, c_a, asoc_w, c_w;
};

RunResult run_cell_episode(const Grid& grid, const Config& base, std::size_t cell,
                           std::size_t run) {
  const auto ie = cell / grid.beta.size();
  const auto ib = cell % grid.beta.size();
  Config cfg = base;
  cfg.eta = grid.eta[ie];
  cfg.beta = grid.beta[ib];
  cfg.seed = derive_seed(base.seed, ie, ib, run);
  const auto report = episode_measures(run_episode(cfg));
  return {*report.get(Measure::ASOC_A), *report.get(Measure::C_A), *report.get(Measure::ASOC_W),
          *report.get(Measure::C_W)};
}

// Averages runs in run order so serial and parallel sweeps agree bit for bit.
std::vector<Cell> average(const Grid& grid, const std::vector<RunResult>& results) {
  std::vector<Cell> cells(grid.cells());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Cell& out = cells[c];
    out.eta = grid.eta[c / grid.beta.size()];
    out.beta = grid.beta[c % grid.beta.size()];
    out.runs = grid.runs;
    for (std::size_t r = 0; r < grid.runs; ++r) {
      const auto& x = results[c * grid.runs + r];
      out.asoc_a += x.asoc_a;
      out.c_a += x.c_a;
      out.asoc_w += x.asoc_w;
      out.c_w += x.c_w;
    }
    const auto n = static_cast<double>(grid.runs);
    out.asoc_a /= n;
    out.c_a /= n;
    out.asoc_w /= n;
    out.c_w /= n;
  }
  return cells;
}

void check_grid(const Grid& grid) {
  if (grid.runs == 0) throw ArgumentError("rotator sweep: runs per cell must be at least 1");
  if (grid.cells() == 0) throw ArgumentError("rotator sweep: empty grid");
}

}  // namespace

void Config::validate() const {
  if (!(f_max > 0.0)) throw ArgumentError("rotator: f_max must be positive");
  if (!(control_dt > 0.0)) throw ArgumentError("rotator: control_dt must be positive");
  if (steps < 1) throw ArgumentError("rotator: steps must be at least 1");
  if (substeps < 1) throw ArgumentError("rotator: substeps must be at least 1");
  if (!(eta >= 0.0)) throw ArgumentError("rotator: eta must be nonnegative");
  if (!(beta >= 0.0)) throw ArgumentError("rotator: beta must be nonnegative");
  if (!(mass > 0.0) || !(length > 0.0)) {
    throw ArgumentError("rotator: mass and length must be positive");
  }
}

std::vector<std::string> Config::soft_limit_warnings() const {
  std::vector<std::string> w;
  if (eta > 0.5) w.push_back("eta " + std::to_string(eta) + " is outside the studied range [0, 0.5]");
  if (beta > 2.0) {
    w.push_back("beta " + std::to_string(beta) + " is outside the studied range [0, 2]");
  }
  return w;
}

double angular_acceleration(double theta, double theta_dot, double force, const Config& c) {
  return (force - c.friction * c.length * theta_dot - c.mass * c.gravity * std::sin(theta)) /
         (c.mass * c.length);
}

PendulumState dynamics_step(const PendulumState& state, double force, const Config& config,
                            double dt) {
  if (!(dt > 0.0)) throw ArgumentError("dynamics_step: dt must be positive");
  const double h = dt / static_cast<double>(config.substeps);
  double th = state.theta;
  double w = state.theta_dot;
  for (std::size_t i = 0; i < config.substeps; ++i) {
    const double k1t = w;
    const double k1w = angular_acceleration(th, w, force, config);
    const double k2t = w + 0.5 * h * k1w;
    const double k2w = angular_acceleration(th + 0.5 * h * k1t, k2t, force, config);
    const double k3t = w + 0.5 * h * k2w;
    const double k3w = angular_acceleration(th + 0.5 * h * k2t, k3t, force, config);
    const double k4t = w + h * k3w;
    const double k4w = angular_acceleration(th + h * k3t, k4t, force, config);
    th += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
  }
  if (!std::isfinite(th) || !std::isfinite(w)) {
    throw NumericalError("pendulum state became non-finite at t = " +
                         std::to_string(state.time + dt));
  }
  return {th, w, state.time + dt};
}

double energy(const PendulumState& s, const Config& c) {
  return 0.5 * c.mass * c.length * c.length * s.theta_dot * s.theta_dot -
         c.mass * c.gravity * c.length * std::cos(s.theta);
}

ControlOutput control_law(double sensed, const Config& c) {
  const double error = c.theta_dot_target - sensed;
  const double g = error - sgn(sensed) * c.beta + sgn(sensed) * c.f_min;
  const double clamped = std::clamp(g, -1.0, 1.0);
  const double force = std::abs(error) < c.beta ? 0.0 : clamped * c.f_max;
  return {sensed, clamped, force};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

ControlOutput controller(double theta_dot, const Config& c, std::mt19937_64& rng) {
  const double noise = uniform(rng, -c.eta, c.eta) * c.theta_dot_target;
  return control_law(theta_dot + noise, c);
}

Episode run_episode(const Config& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  PendulumState state{config.theta0, config.theta_dot0, 0.0};

  std::vector<double> sensors;
  std::vector<double> actions;
  std::vector<TransientSample> transients;
  sensors.reserve(config.steps + 1);
  actions.reserve(config.steps);
  transients.reserve(config.steps);
  for (std::size_t t = 0; t < config.steps; ++t) {
    const auto out = controller(state.theta_dot, config, rng);
    sensors.push_back(config.record_noisy_sensor ? out.sensor : state.theta_dot);
    actions.push_back(out.force / config.f_max);
    transients.push_back({state.time, out.sensor, out.g_clamped, out.force});
    state = dynamics_step(state, out.force, config, config.control_dt);
  }
  // Final reading closes the last transition; the noise draw keeps the
  // recorded noisy sensor consistent with the controller's view.
  const double last_noise = uniform(rng, -config.eta, config.eta) * config.theta_dot_target;
  sensors.push_back(config.record_noisy_sensor ? state.theta_dot + last_noise : state.theta_dot);

  std::vector<std::size_t> s_sym(sensors.size());
  std::vector<std::size_t> a_sym(actions.size());
  std::transform(sensors.begin(), sensors.end(), s_sym.begin(),
                 [&](double v) { return config.sensor_bins(v); });
  std::transform(actions.begin(), actions.end(), a_sym.begin(),
                 [&](double v) { return config.action_bins(v); });
  return Episode{SymbolSeries(std::move(s_sym), std::move(a_sym), config.sensor_bins.bins,
                              config.action_bins.bins),
                 std::move(transients), std::move(sensors), std::move(actions)};
}

MeasureReport episode_measures(const Episode& episode) {
  auto report = intrinsic_report(estimate(episode.series));
  report.sample_count = episode.series.steps();
  return report;
}

void write_transients_csv(std::ostream& out, const Episode& episode) {
  out << "t,s,g_clamped,f\n";
  for (const auto& x : episode.transients) {
    put(out, x.t);
    out << ',';
    put(out, x.s);
    out << ',';
    put(out, x.g_clamped);
    out << ',';
    put(out, x.f);
    out << '\n';
  }
}

void write_series_csv(std::ostream& out, const Episode& episode) {
  out << "t,s,a\n";
  for (std::size_t t = 0; t < episode.sensor_values.size(); ++t) {
    out << t << ',';
    put(out, episode.sensor_values[t]);
    out << ',';
    if (t < episode.action_values.size()) put(out, episode.action_values[t]);
    out << '\n';
  }
}

Grid Grid::standard() {
  Grid g;
  for (int i = 0; i <= 20; ++i) g.eta.push_back(0.025 * i);
  for (int i = 0; i <= 200; ++i) g.beta.push_back(0.01 * i);
  g.runs = 10;
  return g;
}

std::uint64_t derive_seed(std::uint64_t master, std::size_t eta_index, std::size_t beta_index,
                          std::size_t run) {
  std::uint64_t h = mix_seed(master);
  h = mix_seed(h ^ eta_index);
  h = mix_seed(h ^ beta_index);
  return mix_seed(h ^ run);
}

std::vector<Cell> sweep_serial(const Grid& grid, const Config& base) {
  check_grid(grid);
  std::vector<RunResult> results;
  results.reserve(grid.cells() * grid.runs);
  for (std::size_t c = 0; c < grid.cells(); ++c)
    for (std::size_t r = 0; r < grid.runs; ++r) results.push_back(run_cell_episode(grid, base, c, r));
  return average(grid, results);
}

std::vector<Cell> sweep(const Grid& grid, const Config& base) {
  check_grid(grid);
  std::vector<RunResult> results(grid.cells() * grid.runs);
  parallel_for(results.size(), [&](std::size_t i) {
    results[i] = run_cell_episode(grid, base, i / grid.runs, i % grid.runs);
  });
  return average(grid, results);
}

void write_sweep_csv(std::ostream& out, const std::vector<Cell>& cells) {
  out << "eta,beta,asoc_a,c_a,asoc_w,c_w,runs\n";
  for (const auto& c : cells) {
    put_fixed(out, c.eta);
    out << ',';
    put_fixed(out, c.beta);
    for (double v : {c.asoc_a, c.c_a, c.asoc_w, c.c_w}) {
      out << ',';
      put_fixed(out, v);
    }
    out << ',' << c.runs << '\n';
  }
}

}  // namespace morph::rotator
