#include "oracles.hpp"

#include <cassert>
#include <cmath>

namespace morph::testing {

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t n, double zero_chance) {
  std::exponential_distribution<double> draw(1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<double> v(n);
  double total = 0.0;
  for (auto& x : v) {
    x = coin(rng) < zero_chance ? 0.0 : draw(rng);
    total += x;
  }
  if (total == 0.0) {
    v[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1.0;
    return v;
  }
  for (auto& x : v) x /= total;
  return v;
}

std::vector<double> random_rows(std::mt19937_64& rng, std::size_t rows, std::size_t n,
                                double zero_chance) {
  std::vector<double> out;
  out.reserve(rows * n);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = random_simplex(rng, n, zero_chance);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

Joint3 random_joint(std::mt19937_64& rng, std::size_t nx, std::size_t ny, std::size_t nz) {
  return Joint3(Alphabet(nx), Alphabet(ny), Alphabet(nz), random_simplex(rng, nx * ny * nz));
}

IntrinsicModel random_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(2, 5);
  const std::size_t ns = size(rng);
  const std::size_t na = size(rng);
  const Alphabet s(ns), a(na);
  return IntrinsicModel(Distribution(s, random_simplex(rng, ns)),
                        Kernel2(s, a, random_rows(rng, ns, na, 0.2)),
                        Kernel3(s, a, s, random_rows(rng, ns * na, ns, 0.2)));
}

namespace {

struct Marginals {
  std::vector<double> x, y, xy, xz, yz;
};

Marginals marginals(const Joint3& j) {
  const auto [nx, ny, nz] = j.dims();
  Marginals m{std::vector<double>(nx), std::vector<double>(ny), std::vector<double>(nx * ny),
              std::vector<double>(nx * nz), std::vector<double>(ny * nz)};
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const double p = j(x, y, z);
        m.x[x] += p;
        m.y[y] += p;
        m.xy[x * ny + y] += p;
        m.xz[x * nz + z] += p;
        m.yz[y * nz + z] += p;
      }
  return m;
}

}  // namespace

double brute_mc_a(const Joint3& j) {
  const auto [nx, ny, nz] = j.dims();
  const auto m = marginals(j);
  double info = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const double p = j(x, y, z);
        if (p == 0.0) continue;
        const double z_given_xy = p / m.xy[x * ny + y];
        const double z_given_x = m.xz[x * nz + z] / m.x[x];
        info += p * std::log(z_given_xy / z_given_x);
      }
  return 1.0 - info / std::log(static_cast<double>(nx));
}

double brute_mc_w(const Joint3& j) {
  const auto [nx, ny, nz] = j.dims();
  const auto m = marginals(j);
  double info = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t z = 0; z < nz; ++z) {
        const double p = j(x, y, z);
        if (p == 0.0) continue;
        const double z_given_xy = p / m.xy[x * ny + y];
        const double z_given_y = m.yz[y * nz + z] / m.y[y];
        info += p * std::log(z_given_xy / z_given_y);
      }
  return info / std::log(static_cast<double>(nx));
}

double brute_cmi_zy_given_x(const Joint3& j) {
  const auto [nx, ny, nz] = j.dims();
  const auto m = marginals(j);
  double total = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const double pxy = m.xy[x * ny + y];
      if (pxy == 0.0) continue;
      double d = 0.0;
      for (std::size_t z = 0; z < nz; ++z) {
        const double p = j(x, y, z) / pxy;
        if (p == 0.0) continue;
        d += p * std::log(p / (m.xz[x * nz + z] / m.x[x]));
      }
      total += pxy * d;
    }
  return total;
}

double brute_c_a_deliberative(const std::vector<double>& joint_ca, std::size_t nc, std::size_t na,
                              const Kernel2& do_c, const Kernel2& do_a_kernel) {
  const std::size_t ns = do_a_kernel.to().size();
  double total = 0.0;
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t a = 0; a < na; ++a) {
      const double w = joint_ca[c * na + a];
      if (w == 0.0) continue;
      for (std::size_t s = 0; s < ns; ++s) {
        const double p = do_a_kernel(a, s);
        if (p > 0.0) total += w * p * std::log(p / do_c(c, s));
      }
    }
  return 1.0 - total / std::log(static_cast<double>(ns));
}

rotator::PendulumState verlet(rotator::PendulumState s, double force, const rotator::Config& c,
                              double duration, double h) {
  assert(c.friction == 0.0);
  const auto accel = [&](double theta) {
    return (force - c.mass * c.gravity * std::sin(theta)) / (c.mass * c.length);
  };
  const auto n = static_cast<std::size_t>(std::llround(duration / h));
  double acc = accel(s.theta);
  for (std::size_t i = 0; i < n; ++i) {
    s.theta_dot += 0.5 * h * acc;
    s.theta += h * s.theta_dot;
    acc = accel(s.theta);
    s.theta_dot += 0.5 * h * acc;
  }
  s.time += duration;
  return s;
}

}  // namespace morph::testing
