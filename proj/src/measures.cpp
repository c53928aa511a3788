#include "morphcomp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "morphcomp/error.hpp"
#include "morphcomp/estimation.hpp"

namespace morph {
namespace {

constexpr std::array<std::string_view, 7> kNames{"MC_A", "MC_W", "ASOC_A", "ASOC_W",
                                                 "C_A",  "C_A_d", "C_W"};

// Mixture sum_x w[x] K(x, .) of kernel rows.
std::vector<double> mix_rows(const Kernel2& k, std::span<const double> weights) {
  std::vector<double> m(k.to().size(), 0.0);
  for (std::size_t x = 0; x < k.from().size(); ++x) {
    if (weights[x] == 0.0) continue;
    const auto row = k.row(x);
    for (std::size_t y = 0; y < m.size(); ++y) m[y] += weights[x] * row[y];
  }
  return m;
}

}  // namespace

std::string_view measure_name(Measure m) { return kNames[static_cast<std::size_t>(m)]; }

std::optional<Measure> parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (measure_name(m) == name) return m;
  }
  return std::nullopt;
}

IntrinsicModel::IntrinsicModel(Distribution sensor_prior, Kernel2 policy, Kernel3 world_model)
    : sensor_prior_(std::move(sensor_prior)),
      policy_(std::move(policy)),
      world_model_(std::move(world_model)) {
  const auto& s = sensor_prior_.alphabet();
  if (!(policy_.from() == s) || !(world_model_.from1() == s) || !(world_model_.to() == s) ||
      !(world_model_.from2() == policy_.to())) {
    throw DimensionError("intrinsic model: sensor/action alphabets disagree");
  }
}

double clamp_unit(double value, std::string_view what) {
  if (!(value >= -kRangeTolerance && value <= 1.0 + kRangeTolerance)) {
    throw ConsistencyError(std::string(what) + " left [0,1]: " + std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

void MeasureReport::set(Measure m, double value) {
  values_[m] = clamp_unit(value, measure_name(m));
}

std::optional<double> MeasureReport::get(Measure m) const {
  const auto it = values_.find(m);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double normalizer(const Alphabet& alphabet) {
  if (alphabet.size() < 2) {
    throw DegenerateAlphabetError("measure undefined on a one-symbol alphabet");
  }
  return std::log(static_cast<double>(alphabet.size()));
}

double mc_a(const Joint3& world_joint) {
  const double norm = normalizer(world_joint.alphabet(Axis::X));
  const double info = conditional_mutual_information(world_joint, Axis::Z, Axis::Y, Axis::X);
  return clamp_unit(1.0 - info / norm, "MC_A");
}

double mc_w(const Joint3& world_joint) {
  const double norm = normalizer(world_joint.alphabet(Axis::X));
  const double info = conditional_mutual_information(world_joint, Axis::Z, Axis::X, Axis::Y);
  return clamp_unit(info / norm, "MC_W");
}

double asoc_a(const Joint3& sensor_joint) {
  const double norm = normalizer(sensor_joint.alphabet(Axis::X));
  const double info = conditional_mutual_information(sensor_joint, Axis::Z, Axis::Y, Axis::X);
  return clamp_unit(1.0 - info / norm, "ASOC_A");
}

double asoc_w(const Joint3& sensor_joint) {
  const double norm = normalizer(sensor_joint.alphabet(Axis::X));
  const double info = conditional_mutual_information(sensor_joint, Axis::Z, Axis::X, Axis::Y);
  return clamp_unit(info / norm, "ASOC_W");
}

Distribution action_marginal(const IntrinsicModel& model) {
  return Distribution(model.actions(),
                      mix_rows(model.policy(), model.sensor_prior().probs()));
}

Kernel2 do_a(const IntrinsicModel& model) {
  const auto ns = model.sensors().size();
  const auto na = model.actions().size();
  const auto& ps = model.sensor_prior();
  const auto& world = model.world_model();
  std::vector<double> e(na * ns, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t s = 0; s < ns; ++s) {
      if (ps[s] == 0.0) continue;
      const auto row = world.row(s, a);
      for (std::size_t t = 0; t < ns; ++t) e[a * ns + t] += row[t] * ps[s];
    }
  }
  return Kernel2(model.actions(), model.sensors(), std::move(e));
}

Kernel2 do_s(const IntrinsicModel& model) {
  const auto intervened = do_a(model);
  const auto ns = model.sensors().size();
  std::vector<double> e;
  e.reserve(ns * ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const auto row = mix_rows(intervened, model.policy().row(s));
    e.insert(e.end(), row.begin(), row.end());
  }
  return Kernel2(model.sensors(), model.sensors(), std::move(e));
}

double cif(const Kernel2& interventional, const Distribution& source_prior) {
  if (!(interventional.from() == source_prior.alphabet())) {
    throw DimensionError("cif: kernel source and prior alphabets differ");
  }
  const auto post = mix_rows(interventional, source_prior.probs());
  double flow = 0.0;
  for (std::size_t x = 0; x < source_prior.size(); ++x) {
    if (source_prior[x] == 0.0) continue;
    flow += source_prior[x] * kl(interventional.row(x), post);
  }
  return flow;
}

CausalActionForms c_a_forms(const IntrinsicModel& model) {
  const double norm = normalizer(model.sensors());
  const auto intervened_a = do_a(model);
  const auto intervened_s = do_s(model);
  const auto pa = action_marginal(model);
  const auto& ps = model.sensor_prior();

  const double flow_s = cif(intervened_s, ps);
  const double flow_a = cif(intervened_a, pa);

  double divergence = 0.0;
  for (std::size_t s = 0; s < ps.size(); ++s) {
    for (std::size_t a = 0; a < pa.size(); ++a) {
      const double w = ps[s] * model.policy()(s, a);
      if (w == 0.0) continue;
      divergence += w * kl(intervened_a.row(a), intervened_s.row(s));
    }
  }
  return {1.0 + (flow_s - flow_a) / norm, 1.0 - divergence / norm};
}

double c_a(const IntrinsicModel& model) {
  const auto forms = c_a_forms(model);
  if (std::abs(forms.bottleneck - forms.divergence) > kDualFormTolerance) {
    throw ConsistencyError("C_A: information-flow form " + std::to_string(forms.bottleneck) +
                           " and divergence form " + std::to_string(forms.divergence) +
                           " disagree");
  }
  return clamp_unit(forms.divergence, "C_A");
}

double c_a_deliberative(const Distribution& controller_prior, const Kernel2& controller_policy,
                        const Kernel2& do_c, const Kernel2& do_a_kernel,
                        std::span<const double> joint_ca) {
  const auto& c_alpha = controller_prior.alphabet();
  const auto& a_alpha = controller_policy.to();
  if (!(controller_policy.from() == c_alpha) || !(do_c.from() == c_alpha) ||
      !(do_a_kernel.from() == a_alpha) || !(do_c.to() == do_a_kernel.to())) {
    throw DimensionError("c_a_deliberative: alphabets disagree");
  }
  const auto nc = c_alpha.size();
  const auto na = a_alpha.size();
  if (joint_ca.size() != nc * na) throw DimensionError("c_a_deliberative: p(c,a) has wrong size");
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t a = 0; a < na; ++a) {
      if (std::abs(joint_ca[c * na + a] - controller_prior[c] * controller_policy(c, a)) >
          kRejectTolerance) {
        throw ArgumentError("c_a_deliberative: p(c,a) differs from p(c) p(a|c)");
      }
    }
  }
  const double norm = normalizer(do_c.to());
  double divergence = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t a = 0; a < na; ++a) {
      const double w = joint_ca[c * na + a];
      if (w == 0.0) continue;
      divergence += w * kl(do_a_kernel.row(a), do_c.row(c));
    }
  }
  return clamp_unit(1.0 - divergence / norm, "C_A_d");
}

Kernel2 sensor_transition(const IntrinsicModel& model) {
  const auto ns = model.sensors().size();
  const auto na = model.actions().size();
  std::vector<double> e(ns * ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t a = 0; a < na; ++a) {
      const double w = model.policy()(s, a);
      if (w == 0.0) continue;
      const auto row = model.world_model().row(s, a);
      for (std::size_t t = 0; t < ns; ++t) e[s * ns + t] += w * row[t];
    }
  }
  return Kernel2(model.sensors(), model.sensors(), std::move(e));
}

Kernel2 world_free_transition(const IntrinsicModel& model) {
  const auto ns = model.sensors().size();
  const auto na = model.actions().size();
  const auto& ps = model.sensor_prior();
  const auto& policy = model.policy();
  const auto pa = action_marginal(model);

  // p(s'|a) = sum_s'' p(s'|s'',a) p(a|s'') p(s'') / p(a)
  std::vector<double> given_action(na * ns, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    if (pa[a] == 0.0) {
      for (std::size_t s = 0; s < ns; ++s) {
        if (policy(s, a) > 0.0) {
          throw SupportError("C_W: action " + std::to_string(a) +
                             " has policy mass but zero marginal probability");
        }
      }
      continue;
    }
    for (std::size_t s = 0; s < ns; ++s) {
      const double w = policy(s, a) * ps[s];
      if (w == 0.0) continue;
      const auto row = model.world_model().row(s, a);
      for (std::size_t t = 0; t < ns; ++t) given_action[a * ns + t] += row[t] * w;
    }
    for (std::size_t t = 0; t < ns; ++t) given_action[a * ns + t] /= pa[a];
  }

  std::vector<double> e(ns * ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t a = 0; a < na; ++a) {
      const double w = policy(s, a);
      if (w == 0.0) continue;
      for (std::size_t t = 0; t < ns; ++t) e[s * ns + t] += w * given_action[a * ns + t];
    }
    double sum = 0.0;
    for (std::size_t t = 0; t < ns; ++t) sum += e[s * ns + t];
    if (std::abs(sum - 1.0) > kRejectTolerance) {
      throw ConsistencyError("C_W: world-free transition row " + std::to_string(s) + " sums to " +
                             std::to_string(sum));
    }
  }
  return Kernel2(model.sensors(), model.sensors(), std::move(e));
}

double c_w(const IntrinsicModel& model) {
  const double norm = normalizer(model.sensors());
  const auto observed = sensor_transition(model);
  const auto world_free = world_free_transition(model);
  const auto& ps = model.sensor_prior();
  double divergence = 0.0;
  for (std::size_t s = 0; s < ps.size(); ++s) {
    if (ps[s] == 0.0) continue;
    divergence += ps[s] * kl(observed.row(s), world_free.row(s));
  }
  return clamp_unit(divergence / norm, "C_W");
}

MeasureReport intrinsic_report(const IntrinsicModel& model) {
  MeasureReport r;
  const auto joint = joint_from_model(model);
  r.set(Measure::ASOC_A, asoc_a(joint));
  r.set(Measure::ASOC_W, asoc_w(joint));
  r.set(Measure::C_A, c_a(model));
  r.set(Measure::C_W, c_w(model));
  return r;
}

}  // namespace morph
