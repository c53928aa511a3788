#pragma once

// Estimating an IntrinsicModel from a recorded sensor/action stream.
//
// Every conditional cell starts at the uniform distribution and is updated
// with a pseudo-count of one, so after n observations of a cell
//   p(y | cell) = (count(y, cell) + 1/|Y|) / (n + 1).
// estimate() evaluates this closed form from counts; IncrementalKernel applies
// the observation-by-observation recursion.

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphcomp/measures.hpp"
#include "morphcomp/prob.hpp"

namespace morph {

/// Equal-width bins over [low, high); values outside clamp to the edge bins.
struct Binner {
  double low;
  double high;
  std::size_t bins;

  Binner(double low, double high, std::size_t bins);
  /// Throws DataError for NaN.
  std::size_t operator()(double value) const;
  Alphabet alphabet() const { return Alphabet(bins); }
};

inline std::size_t bin(double value, const Binner& binner) { return binner(value); }

/// sensors[t] observed, then actions[t] emitted, then sensors[t + 1] observed.
class SymbolSeries {
 public:
  SymbolSeries(std::vector<std::size_t> sensors, std::vector<std::size_t> actions,
               std::size_t sensor_alphabet, std::size_t action_alphabet);

  const std::vector<std::size_t>& sensors() const noexcept { return sensors_; }
  const std::vector<std::size_t>& actions() const noexcept { return actions_; }
  std::size_t steps() const noexcept { return actions_.size(); }
  std::size_t sensor_alphabet() const noexcept { return sensor_alphabet_; }
  std::size_t action_alphabet() const noexcept { return action_alphabet_; }

  friend bool operator==(const SymbolSeries&, const SymbolSeries&) = default;

 private:
  std::vector<std::size_t> sensors_;
  std::vector<std::size_t> actions_;
  std::size_t sensor_alphabet_;
  std::size_t action_alphabet_;
};

/// Streaming form of the uniform-prior estimator for p(y | cell).
class IncrementalKernel {
 public:
  IncrementalKernel(std::size_t cells, std::size_t outcomes);

  void observe(std::size_t cell, std::size_t outcome);

  std::span<const double> row(std::size_t cell) const {
    return std::span<const double>(probs_).subspan(cell * outcomes_, outcomes_);
  }
  std::size_t visits(std::size_t cell) const { return visits_[cell]; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::size_t outcomes_;
  std::vector<double> probs_;
  std::vector<std::size_t> visits_;
};

/// p(s), p(a|s) and p(s'|s,a) estimated from the series. p(s) counts the
/// sensor readings that have a successor (sensors[0 .. T-1]).
IntrinsicModel estimate(const SymbolSeries& series);

/// p(s, a, s') = p(s) p(a|s) p(s'|s,a).
Joint3 joint_from_model(const IntrinsicModel& model);

/// Column interpretation for series CSV input.
struct ColumnSpec {
  std::optional<Binner> binner;           // set: parse reals and bin
  std::optional<std::size_t> alphabet;    // integer symbols; unset: max index + 1
};

/// Reads a `t,s,a` CSV. The last row may leave `a` empty to carry the final
/// sensor reading; if every row has an action, the last action has no
/// successor and is dropped. Throws ParseError with the offending line.
SymbolSeries read_series_csv(std::istream& in, const ColumnSpec& sensor, const ColumnSpec& action);

}  // namespace morph
