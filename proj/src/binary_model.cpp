#include "morphcomp/binary_model.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "morphcomp/error.hpp"
#include "morphcomp/estimation.hpp"
#include "morphcomp/parallel.hpp"

namespace morph::binary {
namespace {

// exp(x v) / sum_{v'} exp(x v') for v = -1 (first) and v = +1 (second),
// evaluated without overflow for large |x|.
std::array<double, 2> two_way_softmax(double x) {
  const auto logistic = [](double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
  };
  return {logistic(-2.0 * x), logistic(2.0 * x)};
}

Kernel2 spin_kernel(double coupling) {
  std::vector<double> e;
  for (std::size_t x = 0; x < 2; ++x) {
    const auto p = two_way_softmax(coupling * spin(x));
    e.insert(e.end(), p.begin(), p.end());
  }
  return Kernel2(omega(), omega(), std::move(e));
}

void format_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  out << buf;
}

}  // namespace

void Params::validate() const {
  if (!(phi >= 0.0) || !(psi >= 0.0) || !(zeta >= 0.0) || !(mu >= 0.0) || !std::isfinite(tau) ||
      !std::isfinite(phi) || !std::isfinite(psi) || !std::isfinite(zeta) || !std::isfinite(mu)) {
    throw ArgumentError("binary model: phi, psi, zeta, mu must be finite and nonnegative");
  }
}

Alphabet omega() { return Alphabet(2, {"-1", "+1"}); }

Kernels kernels(const Params& params) {
  params.validate();
  std::vector<double> world;
  for (std::size_t w = 0; w < 2; ++w) {
    for (std::size_t a = 0; a < 2; ++a) {
      const auto p = two_way_softmax(params.phi * spin(w) + params.psi * spin(a));
      world.insert(world.end(), p.begin(), p.end());
    }
  }
  const auto prior = two_way_softmax(params.tau);
  return Kernels{Kernel3(omega(), omega(), omega(), std::move(world)), spin_kernel(params.zeta),
                 spin_kernel(params.mu), Distribution(omega(), {prior[0], prior[1]})};
}

Kernel2 world_policy(const Kernels& k) {
  std::vector<double> e(4, 0.0);
  for (std::size_t w = 0; w < 2; ++w)
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t a = 0; a < 2; ++a) e[w * 2 + a] += k.sensor(w, s) * k.policy(s, a);
  return Kernel2(omega(), omega(), std::move(e));
}

Joint3 world_joint(const Params& params) {
  const auto k = kernels(params);
  return compose_joint(k.prior, world_policy(k), k.world);
}

IntrinsicModel intrinsic_model(const Params& params) {
  const auto k = kernels(params);
  std::vector<double> ps(2, 0.0);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t w = 0; w < 2; ++w) ps[s] += k.sensor(w, s) * k.prior[w];
  for (std::size_t s = 0; s < 2; ++s) {
    if (ps[s] <= 0.0) {
      throw SupportError("binary model: sensor symbol " + omega().label(s) +
                         " has zero probability");
    }
  }

  // p(s'|s,a) = sum_{w,w'} beta(s'|w') alpha(w'|w,a) beta(s|w) p(w) / p(s)
  std::vector<double> world_model(8, 0.0);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t next = 0; next < 2; ++next) {
        double sum = 0.0;
        for (std::size_t w = 0; w < 2; ++w)
          for (std::size_t wn = 0; wn < 2; ++wn)
            sum += k.sensor(wn, next) * k.world(w, a, wn) * k.sensor(w, s) * k.prior[w];
        world_model[(s * 2 + a) * 2 + next] = sum / ps[s];
      }
  return IntrinsicModel(Distribution(omega(), std::move(ps)), k.policy,
                        Kernel3(omega(), omega(), omega(), std::move(world_model)));
}

MeasureReport evaluate(const Params& params) {
  const auto joint = world_joint(params);
  const auto model = intrinsic_model(params);
  MeasureReport r = intrinsic_report(model);
  r.set(Measure::MC_A, mc_a(joint));
  r.set(Measure::MC_W, mc_w(joint));
  r.parameters = {{"phi", params.phi}, {"psi", params.psi}, {"zeta", params.zeta},
                  {"mu", params.mu},   {"tau", params.tau}};
  return r;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

Grid Grid::standard() {
  return Grid{linspace(0.0, 5.0, 51), linspace(0.0, 5.0, 51), {0.0, 1.0, kLarge}, kLarge, 0.0};
}

Params Grid::at(std::size_t i) const {
  const auto nm = mu.size();
  const auto np = psi.size();
  return Params{phi[i / (np * nm)], psi[(i / nm) % np], zeta, mu[i % nm], tau};
}

std::vector<SweepRow> sweep_serial(const Grid& grid) {
  if (grid.size() == 0) throw ArgumentError("binary sweep: empty grid");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.at(i);
    rows.push_back({p, evaluate(p)});
  }
  return rows;
}

std::vector<SweepRow> sweep(const Grid& grid) {
  if (grid.size() == 0) throw ArgumentError("binary sweep: empty grid");
  std::vector<SweepRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto p = grid.at(i);
    rows[i] = {p, evaluate(p)};
  });
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "phi,psi,mu,mc_a,mc_w,asoc_a,asoc_w,c_a,c_w\n";
  constexpr Measure cols[] = {Measure::MC_A,   Measure::MC_W, Measure::ASOC_A,
                              Measure::ASOC_W, Measure::C_A,  Measure::C_W};
  for (const auto& row : rows) {
    format_value(out, row.params.phi);
    out << ',';
    format_value(out, row.params.psi);
    out << ',';
    format_value(out, row.params.mu);
    for (Measure m : cols) {
      out << ',';
      format_value(out, row.report.get(m).value_or(std::nan("")));
    }
    out << '\n';
  }
}

}  // namespace morph::binary
