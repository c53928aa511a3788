#pragma once

// Morphological-computation measures.
//
// World-level measures (mc_a, mc_w) take the joint p(w, a, w') over the true
// world state. Intrinsic measures take either the joint p(s, a, s') or an
// IntrinsicModel built from sensor/action data. Every public measure returns a
// value in [0, 1]; results outside [-1e-9, 1 + 1e-9] raise ConsistencyError.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "morphcomp/prob.hpp"

namespace morph {

inline constexpr double kRangeTolerance = 1e-9;
inline constexpr double kDualFormTolerance = 1e-9;

enum class Measure { MC_A, MC_W, ASOC_A, ASOC_W, C_A, C_A_d, C_W };

inline constexpr std::array<Measure, 7> kAllMeasures{Measure::MC_A,   Measure::MC_W, Measure::ASOC_A,
                                                     Measure::ASOC_W, Measure::C_A,  Measure::C_A_d,
                                                     Measure::C_W};

std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

/// Sensor prior p(s), reactive policy p(a|s) and internal world model p(s'|s,a).
class IntrinsicModel {
 public:
  IntrinsicModel(Distribution sensor_prior, Kernel2 policy, Kernel3 world_model);

  const Distribution& sensor_prior() const noexcept { return sensor_prior_; }
  const Kernel2& policy() const noexcept { return policy_; }
  const Kernel3& world_model() const noexcept { return world_model_; }
  const Alphabet& sensors() const noexcept { return sensor_prior_.alphabet(); }
  const Alphabet& actions() const noexcept { return policy_.to(); }

 private:
  Distribution sensor_prior_;
  Kernel2 policy_;
  Kernel3 world_model_;
};

class MeasureReport {
 public:
  /// Band-checks `value` and stores it clamped to [0, 1].
  void set(Measure m, double value);
  std::optional<double> get(Measure m) const;
  const std::map<Measure, double>& values() const noexcept { return values_; }

  std::map<std::string, double> parameters;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;

 private:
  std::map<Measure, double> values_;
};

/// Band check then clamp to [0, 1].
double clamp_unit(double value, std::string_view what);

/// ln|alphabet|; throws DegenerateAlphabetError for a one-symbol alphabet.
double normalizer(const Alphabet& alphabet);

// World-level measures on p(w, a, w').
double mc_a(const Joint3& world_joint);
double mc_w(const Joint3& world_joint);

// Associative measures on p(s, a, s').
double asoc_a(const Joint3& sensor_joint);
double asoc_w(const Joint3& sensor_joint);

/// p(a) = sum_s p(a|s) p(s).
Distribution action_marginal(const IntrinsicModel& model);

/// p(s'|do(a)) = sum_s p(s'|s,a) p(s).
Kernel2 do_a(const IntrinsicModel& model);
/// p(s'|do(s)) = sum_a p(a|s) p(s'|do(a)).
Kernel2 do_s(const IntrinsicModel& model);

/// Causal information flow from X to S' given p(s'|do(x)) and p(x), in nats.
double cif(const Kernel2& interventional, const Distribution& source_prior);

struct CausalActionForms {
  double bottleneck;  // 1 + (CIF(S->S') - CIF(A->S')) / ln|S|
  double divergence;  // 1 - D(p(s'|do(a)) || p(s'|do(s))) / ln|S|
};

/// Both formulations of the causal measure, unclamped and unchecked.
CausalActionForms c_a_forms(const IntrinsicModel& model);

/// Causal measure for a reactive agent. Throws ConsistencyError when the two
/// formulations disagree by more than kDualFormTolerance.
double c_a(const IntrinsicModel& model);

/// Causal measure for an agent whose action depends on a controller state C.
/// `joint_ca` is p(c, a) row-major (|C| x |A|) and must equal p(c) p(a|c).
double c_a_deliberative(const Distribution& controller_prior, const Kernel2& controller_policy,
                        const Kernel2& do_c, const Kernel2& do_a_kernel,
                        std::span<const double> joint_ca);

/// p(s'|s) = sum_a p(s'|s,a) p(a|s).
Kernel2 sensor_transition(const IntrinsicModel& model);
/// p~(s'|s) = sum_a p(a|s) p(s'|a): the transition if the world ignored its own state.
Kernel2 world_free_transition(const IntrinsicModel& model);

double c_w(const IntrinsicModel& model);

/// ASOC_A, ASOC_W, C_A and C_W of a model.
MeasureReport intrinsic_report(const IntrinsicModel& model);

}  // namespace morph
