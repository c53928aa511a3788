#pragma once

// Rotating pendulum driven by a deadband velocity controller.
//
// Plant:      m l theta'' + gamma l theta' + m g sin(theta) - f = 0
// Controller: s = theta' + u(-eta, eta) * target
//             g = (target - s) - sgn(s) beta + sgn(s) f_min
//             f = clamp(g, -1, 1) * f_max   if |target - s| >= beta, else 0
//
// The force is held constant over each control interval. The recorded sensor
// stream is the angular velocity the plant actually has; the controller acts on
// the noisy reading s. The recorded action is f / f_max.

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "morphcomp/estimation.hpp"
#include "morphcomp/measures.hpp"

namespace morph::rotator {

struct Config {
  double f_max = 10.0;
  double f_min = 0.25;
  double theta_dot_target = 2.0 * std::numbers::pi;
  double mass = 1.0;
  double length = 1.0;
  double gravity = 9.81;
  double friction = 0.0;
  double eta = 0.0;   // sensor noise as a fraction of the target velocity
  double beta = 0.0;  // controller deadband
  std::size_t steps = 5000;
  double control_dt = 0.01;
  std::size_t substeps = 10;  // RK4 steps per control interval
  double theta0 = 0.0;
  double theta_dot0 = 0.0;
  bool record_noisy_sensor = false;
  Binner sensor_bins{0.0, 8.0, 30};
  Binner action_bins{-1.0, 1.0, 30};
  std::uint64_t seed = 0;

  /// Hard invariants; throws ArgumentError.
  void validate() const;
  /// Parameter choices outside the studied ranges (eta in [0, 0.5], beta in [0, 2]).
  std::vector<std::string> soft_limit_warnings() const;
};

struct PendulumState {
  double theta = 0.0;
  double theta_dot = 0.0;
  double time = 0.0;
};

/// theta'' for the given state and force.
double angular_acceleration(double theta, double theta_dot, double force, const Config& config);

/// Advances the plant by dt with `config.substeps` RK4 steps, force held fixed.
/// Throws NumericalError if the state becomes non-finite.
PendulumState dynamics_step(const PendulumState& state, double force, const Config& config,
                            double dt);

/// E = m l^2 theta'^2 / 2 - m g l cos(theta).
double energy(const PendulumState& state, const Config& config);

struct ControlOutput {
  double sensor;     // s, the reading the controller acts on
  double g_clamped;  // g clipped to [-1, 1]
  double force;      // f
};

/// Deterministic part of the controller, applied to a sensed velocity.
ControlOutput control_law(double sensed, const Config& config);

/// Draws sensor noise from `rng` and applies the control law. sgn(0) is +1.
ControlOutput controller(double theta_dot, const Config& config, std::mt19937_64& rng);

/// Uniform draw in [lo, hi) from the top 53 bits of one engine output.
double uniform(std::mt19937_64& rng, double lo, double hi);

struct TransientSample {
  double t;
  double s;
  double g_clamped;
  double f;
};

struct Episode {
  SymbolSeries series;
  std::vector<TransientSample> transients;  // one per control step
  std::vector<double> sensor_values;        // recorded, before binning (steps + 1)
  std::vector<double> action_values;        // f / f_max (steps)
};

Episode run_episode(const Config& config);

/// Estimate the intrinsic model of an episode and compute its measures.
MeasureReport episode_measures(const Episode& episode);

/// Transients CSV: t, s, g_clamped, f.
void write_transients_csv(std::ostream& out, const Episode& episode);
/// Series CSV with raw values: t, s, a (the final row has no action).
void write_series_csv(std::ostream& out, const Episode& episode);

struct Grid {
  std::vector<double> eta;
  std::vector<double> beta;
  std::size_t runs = 10;

  /// eta in {0, 0.025, ..., 0.5}, beta in {0, 0.01, ..., 2.0}, 10 runs.
  static Grid standard();
  std::size_t cells() const { return eta.size() * beta.size(); }
};

struct Cell {
  double eta = 0.0;
  double beta = 0.0;
  std::size_t runs = 0;
  double asoc_a = 0.0;
  double c_a = 0.0;
  double asoc_w = 0.0;
  double c_w = 0.0;
};

/// Seed of one episode, derived from the master seed and grid coordinates.
std::uint64_t derive_seed(std::uint64_t master, std::size_t eta_index, std::size_t beta_index,
                          std::size_t run);

/// Serial reference implementation. Cells are ordered eta-major.
std::vector<Cell> sweep_serial(const Grid& grid, const Config& base);
/// OpenMP implementation; identical output to sweep_serial.
std::vector<Cell> sweep(const Grid& grid, const Config& base);

/// Columns: eta, beta, asoc_a, c_a, asoc_w, c_w, runs.
void write_sweep_csv(std::ostream& out, const std::vector<Cell>& cells);

}  // namespace morph::rotator
