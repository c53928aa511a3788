#include "morphcomp/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "morphcomp/error.hpp"

namespace morph {
namespace {

// Checks one block of probabilities, renormalizing tiny drift in place.
void normalize_block(std::span<double> block, const char* what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const double v = block[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidDistributionError(std::string(what) + ": entry " + std::to_string(i) +
                                     " is negative or not finite");
    }
    sum += v;
  }
  const double off = std::abs(sum - 1.0);
  if (off > kRejectTolerance) {
    throw InvalidDistributionError(std::string(what) + ": sums to " + std::to_string(sum));
  }
  if (off > kRenormalizeTolerance) {
    for (double& v : block) v /= sum;
  }
}

void normalize_rows(std::vector<double>& entries, std::size_t width, const char* what) {
  for (std::size_t off = 0; off < entries.size(); off += width) {
    normalize_block(std::span<double>(entries).subspan(off, width), what);
  }
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(want) +
                         " entries, got " + std::to_string(got));
  }
}

std::size_t axis_index(Axis a) { return static_cast<std::size_t>(a); }

std::vector<Axis> sorted_unique(std::span<const Axis> axes) {
  std::vector<Axis> out(axes.begin(), axes.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ArgumentError("axis listed twice");
  }
  return out;
}

// Flat index of the (x,y,z) cell projected onto `axes`.
std::size_t project(const std::array<std::size_t, 3>& cell, const std::vector<Axis>& axes,
                    const std::array<std::size_t, 3>& dims) {
  std::size_t idx = 0;
  for (Axis a : axes) idx = idx * dims[axis_index(a)] + cell[axis_index(a)];
  return idx;
}

}  // namespace

Alphabet::Alphabet(std::size_t size, std::vector<std::string> labels)
    : size_(size), labels_(std::move(labels)) {
  if (size_ == 0) throw ArgumentError("alphabet size must be at least 1");
  if (!labels_.empty() && labels_.size() != size_) {
    throw ArgumentError("alphabet has " + std::to_string(size_) + " symbols but " +
                        std::to_string(labels_.size()) + " labels");
  }
}

std::string Alphabet::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_.at(i);
}

Distribution::Distribution(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  require_size(probs_.size(), alphabet_.size(), "distribution");
  normalize_block(probs_, "distribution");
}

Distribution Distribution::uniform(Alphabet alphabet) {
  const auto n = alphabet.size();
  return Distribution(std::move(alphabet), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point(Alphabet alphabet, std::size_t symbol) {
  if (symbol >= alphabet.size()) throw ArgumentError("point mass outside alphabet");
  std::vector<double> p(alphabet.size(), 0.0);
  p[symbol] = 1.0;
  return Distribution(std::move(alphabet), std::move(p));
}

Kernel2::Kernel2(Alphabet from, Alphabet to, std::vector<double> entries)
    : from_(std::move(from)), to_(std::move(to)), entries_(std::move(entries)) {
  require_size(entries_.size(), from_.size() * to_.size(), "kernel");
  normalize_rows(entries_, to_.size(), "kernel row");
}

Kernel2 Kernel2::uniform(Alphabet from, Alphabet to) {
  const auto n = from.size() * to.size();
  const double v = 1.0 / static_cast<double>(to.size());
  return Kernel2(std::move(from), std::move(to), std::vector<double>(n, v));
}

Kernel2 Kernel2::identity(Alphabet alphabet) {
  const auto n = alphabet.size();
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Kernel2(alphabet, alphabet, std::move(e));
}

Kernel3::Kernel3(Alphabet from1, Alphabet from2, Alphabet to, std::vector<double> entries)
    : from1_(std::move(from1)),
      from2_(std::move(from2)),
      to_(std::move(to)),
      entries_(std::move(entries)) {
  require_size(entries_.size(), from1_.size() * from2_.size() * to_.size(), "kernel3");
  normalize_rows(entries_, to_.size(), "kernel3 row");
}

Kernel3 Kernel3::uniform(Alphabet from1, Alphabet from2, Alphabet to) {
  const auto n = from1.size() * from2.size() * to.size();
  const double v = 1.0 / static_cast<double>(to.size());
  return Kernel3(std::move(from1), std::move(from2), std::move(to), std::vector<double>(n, v));
}

Joint3::Joint3(Alphabet x, Alphabet y, Alphabet z, std::vector<double> probs)
    : alphabets_{std::move(x), std::move(y), std::move(z)}, probs_(std::move(probs)) {
  require_size(probs_.size(), alphabets_[0].size() * alphabets_[1].size() * alphabets_[2].size(),
               "joint");
  normalize_block(probs_, "joint");
}

double Table::total() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

Distribution Table::to_distribution() const {
  if (axes.size() != 1) throw ArgumentError("to_distribution needs a one-axis table");
  return Distribution(Alphabet(dims[0]), probs);
}

Kernel2 ConditionalTable::to_kernel2(const Alphabet& from, const Alphabet& to) const {
  if (given.size() != 1) throw ArgumentError("to_kernel2 needs exactly one conditioning axis");
  require_size(rows(), from.size(), "conditional rows");
  require_size(target_size, to.size(), "conditional columns");
  std::vector<double> e = probs;
  const double u = 1.0 / static_cast<double>(target_size);
  for (std::size_t r = 0; r < rows(); ++r) {
    if (!defined(r)) std::fill_n(e.begin() + static_cast<std::ptrdiff_t>(r * target_size),
                                 target_size, u);
  }
  return Kernel2(from, to, std::move(e));
}

Joint3 compose_joint(const Distribution& prior, const Kernel2& policy, const Kernel3& kernel) {
  if (!(prior.alphabet() == policy.from()) || !(prior.alphabet() == kernel.from1()) ||
      !(policy.to() == kernel.from2())) {
    throw DimensionError("compose_joint: prior, policy and kernel alphabets disagree");
  }
  const auto nx = prior.size();
  const auto ny = policy.to().size();
  const auto nz = kernel.to().size();
  std::vector<double> p(nx * ny * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double w = prior[x] * policy(x, y);
      for (std::size_t z = 0; z < nz; ++z) p[(x * ny + y) * nz + z] = w * kernel(x, y, z);
    }
  }
  return Joint3(prior.alphabet(), policy.to(), kernel.to(), std::move(p));
}

Table marginal(const Joint3& joint, std::span<const Axis> axes) {
  if (axes.empty()) throw ArgumentError("marginal: no axes to keep");
  Table t;
  t.axes = sorted_unique(axes);
  const auto dims = joint.dims();
  std::size_t n = 1;
  for (Axis a : t.axes) {
    t.dims.push_back(dims[axis_index(a)]);
    n *= dims[axis_index(a)];
  }
  t.probs.assign(n, 0.0);
  for (std::size_t x = 0; x < dims[0]; ++x)
    for (std::size_t y = 0; y < dims[1]; ++y)
      for (std::size_t z = 0; z < dims[2]; ++z)
        t.probs[project({x, y, z}, t.axes, dims)] += joint(x, y, z);
  return t;
}

Table marginal(const Joint3& joint, std::initializer_list<Axis> axes) {
  return marginal(joint, std::span<const Axis>(axes.begin(), axes.size()));
}

ConditionalTable condition(const Joint3& joint, Axis target, std::span<const Axis> given) {
  ConditionalTable c;
  c.target = target;
  c.given = sorted_unique(given);
  if (std::find(c.given.begin(), c.given.end(), target) != c.given.end()) {
    throw ArgumentError("condition: target also listed as conditioning axis");
  }
  const auto dims = joint.dims();
  c.target_size = dims[axis_index(target)];
  std::size_t cells = 1;
  for (Axis a : c.given) {
    c.given_dims.push_back(dims[axis_index(a)]);
    cells *= dims[axis_index(a)];
  }
  c.probs.assign(cells * c.target_size, 0.0);
  c.mass.assign(cells, 0.0);
  for (std::size_t x = 0; x < dims[0]; ++x)
    for (std::size_t y = 0; y < dims[1]; ++y)
      for (std::size_t z = 0; z < dims[2]; ++z) {
        const std::array<std::size_t, 3> cell{x, y, z};
        const auto g = project(cell, c.given, dims);
        const double p = joint(x, y, z);
        c.probs[g * c.target_size + cell[axis_index(target)]] += p;
        c.mass[g] += p;
      }
  for (std::size_t g = 0; g < cells; ++g) {
    if (c.mass[g] <= 0.0) continue;
    for (std::size_t t = 0; t < c.target_size; ++t) c.probs[g * c.target_size + t] /= c.mass[g];
  }
  return c;
}

ConditionalTable condition(const Joint3& joint, Axis target, std::initializer_list<Axis> given) {
  return condition(joint, target, std::span<const Axis>(given.begin(), given.size()));
}

double kl(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("kl: distributions over different alphabets");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      throw DivergenceError(i, "kl: p > 0 where q = 0 at index " + std::to_string(i));
    }
    if (p[i] == q[i]) continue;
    d += p[i] * std::log(p[i] / q[i]);
  }
  // Termwise sums can dip a hair below zero; D(p||q) >= 0 holds exactly.
  return std::max(d, 0.0);
}

double kl(const Distribution& p, const Distribution& q) {
  if (!(p.alphabet() == q.alphabet())) throw DimensionError("kl: alphabets differ");
  return kl(p.probs(), q.probs());
}

double conditional_mutual_information(const Joint3& joint, Axis target, Axis source, Axis given) {
  if (target == source || target == given || source == given) {
    throw ArgumentError("conditional_mutual_information: axes must be distinct");
  }
  const auto dims = joint.dims();
  const std::vector<Axis> g{given};
  std::vector<Axis> gs{given, source};
  std::vector<Axis> gt{given, target};
  std::sort(gs.begin(), gs.end());
  std::sort(gt.begin(), gt.end());
  const auto pg = marginal(joint, g);
  const auto pgs = marginal(joint, gs);
  const auto pgt = marginal(joint, gt);

  double info = 0.0;
  for (std::size_t x = 0; x < dims[0]; ++x)
    for (std::size_t y = 0; y < dims[1]; ++y)
      for (std::size_t z = 0; z < dims[2]; ++z) {
        const double p = joint(x, y, z);
        if (p <= 0.0) continue;
        const std::array<std::size_t, 3> cell{x, y, z};
        // p(t|s,g) / p(t|g) = p(x,y,z) p(g) / (p(g,s) p(g,t))
        const double num = p * pg.probs[project(cell, g, dims)];
        const double den = pgs.probs[project(cell, gs, dims)] * pgt.probs[project(cell, gt, dims)];
        info += p * std::log(num / den);
      }
  return std::max(info, 0.0);
}

}  // namespace morph
