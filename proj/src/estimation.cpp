#include "morphcomp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "morphcomp/error.hpp"

namespace morph {
namespace {

// (count + 1/|Y|) / (n + 1) for every row of a count table.
std::vector<double> smoothed_rows(const std::vector<double>& counts, std::size_t width) {
  std::vector<double> p(counts.size());
  const double prior = 1.0 / static_cast<double>(width);
  for (std::size_t off = 0; off < counts.size(); off += width) {
    double n = 0.0;
    for (std::size_t i = 0; i < width; ++i) n += counts[off + i];
    for (std::size_t i = 0; i < width; ++i) p[off + i] = (counts[off + i] + prior) / (n + 1.0);
  }
  return p;
}

}  // namespace

Binner::Binner(double low_, double high_, std::size_t bins_) : low(low_), high(high_), bins(bins_) {
  if (!(low < high)) throw ArgumentError("binner: low must be below high");
  if (bins == 0) throw ArgumentError("binner: need at least one bin");
}

std::size_t Binner::operator()(double value) const {
  if (std::isnan(value)) throw DataError("cannot bin NaN");
  if (value < low) return 0;
  if (value >= high) return bins - 1;
  const auto idx = static_cast<std::size_t>(
      std::floor(static_cast<double>(bins) * (value - low) / (high - low)));
  return std::min(idx, bins - 1);
}

SymbolSeries::SymbolSeries(std::vector<std::size_t> sensors, std::vector<std::size_t> actions,
                           std::size_t sensor_alphabet, std::size_t action_alphabet)
    : sensors_(std::move(sensors)),
      actions_(std::move(actions)),
      sensor_alphabet_(sensor_alphabet),
      action_alphabet_(action_alphabet) {
  if (sensor_alphabet_ == 0 || action_alphabet_ == 0) {
    throw ArgumentError("series: empty alphabet");
  }
  if (sensors_.size() != actions_.size() + 1) {
    throw DataError("series: need exactly one more sensor reading than actions (got " +
                    std::to_string(sensors_.size()) + " and " + std::to_string(actions_.size()) +
                    ")");
  }
  for (std::size_t t = 0; t < sensors_.size(); ++t) {
    if (sensors_[t] >= sensor_alphabet_) {
      throw DataError("series: sensor symbol " + std::to_string(sensors_[t]) + " at step " +
                      std::to_string(t) + " outside alphabet");
    }
  }
  for (std::size_t t = 0; t < actions_.size(); ++t) {
    if (actions_[t] >= action_alphabet_) {
      throw DataError("series: action symbol " + std::to_string(actions_[t]) + " at step " +
                      std::to_string(t) + " outside alphabet");
    }
  }
}

IncrementalKernel::IncrementalKernel(std::size_t cells, std::size_t outcomes)
    : outcomes_(outcomes),
      probs_(cells * outcomes, 1.0 / static_cast<double>(outcomes)),
      visits_(cells, 0) {
  if (cells == 0 || outcomes == 0) throw ArgumentError("incremental kernel: empty shape");
}

void IncrementalKernel::observe(std::size_t cell, std::size_t outcome) {
  if (cell >= visits_.size() || outcome >= outcomes_) {
    throw ArgumentError("incremental kernel: observation outside shape");
  }
  const auto n = static_cast<double>(++visits_[cell]);
  const double keep = n / (n + 1.0);
  double* row = probs_.data() + cell * outcomes_;
  for (std::size_t y = 0; y < outcomes_; ++y) row[y] *= keep;
  row[outcome] += 1.0 / (n + 1.0);
}

IntrinsicModel estimate(const SymbolSeries& series) {
  if (series.steps() == 0) throw DataError("estimate: series has no actions");
  const auto ns = series.sensor_alphabet();
  const auto na = series.action_alphabet();
  const auto& s = series.sensors();
  const auto& a = series.actions();

  std::vector<double> sensor_counts(ns, 0.0);
  std::vector<double> policy_counts(ns * na, 0.0);
  std::vector<double> world_counts(ns * na * ns, 0.0);
  for (std::size_t t = 0; t < series.steps(); ++t) {
    sensor_counts[s[t]] += 1.0;
    policy_counts[s[t] * na + a[t]] += 1.0;
    world_counts[(s[t] * na + a[t]) * ns + s[t + 1]] += 1.0;
  }
  const Alphabet sensors(ns);
  const Alphabet actions(na);
  return IntrinsicModel(Distribution(sensors, smoothed_rows(sensor_counts, ns)),
                        Kernel2(sensors, actions, smoothed_rows(policy_counts, na)),
                        Kernel3(sensors, actions, sensors, smoothed_rows(world_counts, ns)));
}

Joint3 joint_from_model(const IntrinsicModel& model) {
  return compose_joint(model.sensor_prior(), model.policy(), model.world_model());
}

}  // namespace morph
