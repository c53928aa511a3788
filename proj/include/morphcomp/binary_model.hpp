#pragma once

// Closed-form one-step sensori-motor loop over the binary alphabet {-1, +1}.
//
// Symbol index 0 is -1 and index 1 is +1. All kernels are two-way softmaxes:
//   world   alpha(w'|w,a) ~ exp(phi w' w + psi w' a)
//   sensor  beta(s|w)     ~ exp(zeta s w)
//   policy  pi(a|s)       ~ exp(mu a s)
//   prior   p(w)          ~ exp(tau w)

#include <iosfwd>
#include <vector>

#include "morphcomp/measures.hpp"
#include "morphcomp/prob.hpp"

namespace morph::binary {

/// Stand-in for "parameter much larger than zero".
inline constexpr double kLarge = 20.0;

struct Params {
  double phi = 0.0;   // world self-coupling
  double psi = 0.0;   // action coupling
  double zeta = kLarge;  // sensor sharpness
  double mu = 0.0;    // policy sharpness
  double tau = 0.0;   // world prior bias

  void validate() const;
};

Alphabet omega();
/// Value of symbol index i: -1 or +1.
inline double spin(std::size_t i) { return i == 0 ? -1.0 : 1.0; }

struct Kernels {
  Kernel3 world;       // alpha(w'|w,a)
  Kernel2 sensor;      // beta(s|w)
  Kernel2 policy;      // pi(a|s)
  Distribution prior;  // p(w)
};

Kernels kernels(const Params& params);

/// gamma(a|w) = sum_s pi(a|s) beta(s|w).
Kernel2 world_policy(const Kernels& k);

/// p(w, a, w') = p(w) gamma(a|w) alpha(w'|w,a).
Joint3 world_joint(const Params& params);

/// p(s), pi(a|s) and p(s'|s,a) derived from the world-level kernels.
/// Throws SupportError if a sensor symbol has zero probability.
IntrinsicModel intrinsic_model(const Params& params);

/// MC_A and MC_W from the world joint; ASOC_A, ASOC_W, C_A, C_W from the
/// intrinsic model.
MeasureReport evaluate(const Params& params);

struct Grid {
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> mu;
  double zeta = kLarge;
  double tau = 0.0;

  /// 51 x 51 points over [0, 5] for (phi, psi), mu in {0, 1, 20}.
  static Grid standard();
  std::size_t size() const { return phi.size() * psi.size() * mu.size(); }
  /// Params of flat index i; phi varies slowest, mu fastest.
  Params at(std::size_t i) const;
};

struct SweepRow {
  Params params;
  MeasureReport report;
};

/// Serial reference implementation.
std::vector<SweepRow> sweep_serial(const Grid& grid);
/// OpenMP implementation; output order and values match sweep_serial.
std::vector<SweepRow> sweep(const Grid& grid);

/// Columns: phi, psi, mu, mc_a, mc_w, asoc_a, asoc_w, c_a, c_w.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// n evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace morph::binary
