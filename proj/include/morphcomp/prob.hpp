#pragma once

// Dense finite-alphabet probability tables.
//
// All objects validate on construction and are immutable afterwards. Inputs
// whose normalization is off by at most kRejectTolerance are renormalized,
// anything further off is rejected.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace morph {

inline constexpr double kRenormalizeTolerance = 1e-12;
inline constexpr double kRejectTolerance = 1e-9;

class Alphabet {
 public:
  explicit Alphabet(std::size_t size, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Label of symbol i, or its decimal index when unlabeled.
  std::string label(std::size_t i) const;

  // Sizes only; labels are descriptive.
  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.size_ == b.size_; }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

class Distribution {
 public:
  Distribution(Alphabet alphabet, std::vector<double> probs);

  static Distribution uniform(Alphabet alphabet);
  static Distribution point(Alphabet alphabet, std::size_t symbol);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  Alphabet alphabet_;
  std::vector<double> probs_;
};

/// Conditional distribution p(y|x); rows indexed by x.
class Kernel2 {
 public:
  /// `entries` is row-major, from.size() rows of to.size() columns.
  Kernel2(Alphabet from, Alphabet to, std::vector<double> entries);

  static Kernel2 uniform(Alphabet from, Alphabet to);
  static Kernel2 identity(Alphabet alphabet);

  const Alphabet& from() const noexcept { return from_; }
  const Alphabet& to() const noexcept { return to_; }
  double operator()(std::size_t x, std::size_t y) const { return entries_[x * to_.size() + y]; }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(entries_).subspan(x * to_.size(), to_.size());
  }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  Alphabet from_;
  Alphabet to_;
  std::vector<double> entries_;
};

/// Conditional distribution p(z|x,y); entries indexed (x, y, z).
class Kernel3 {
 public:
  Kernel3(Alphabet from1, Alphabet from2, Alphabet to, std::vector<double> entries);

  static Kernel3 uniform(Alphabet from1, Alphabet from2, Alphabet to);

  const Alphabet& from1() const noexcept { return from1_; }
  const Alphabet& from2() const noexcept { return from2_; }
  const Alphabet& to() const noexcept { return to_; }
  double operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return entries_[(x * from2_.size() + y) * to_.size() + z];
  }
  std::span<const double> row(std::size_t x, std::size_t y) const {
    return std::span<const double>(entries_).subspan((x * from2_.size() + y) * to_.size(),
                                                     to_.size());
  }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  Alphabet from1_;
  Alphabet from2_;
  Alphabet to_;
  std::vector<double> entries_;
};

enum class Axis : std::size_t { X = 0, Y = 1, Z = 2 };

/// Full joint p(x,y,z).
class Joint3 {
 public:
  Joint3(Alphabet x, Alphabet y, Alphabet z, std::vector<double> probs);

  const Alphabet& alphabet(Axis axis) const { return alphabets_[static_cast<std::size_t>(axis)]; }
  std::array<std::size_t, 3> dims() const noexcept {
    return {alphabets_[0].size(), alphabets_[1].size(), alphabets_[2].size()};
  }
  double operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return probs_[(x * alphabets_[1].size() + y) * alphabets_[2].size() + z];
  }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::array<Alphabet, 3> alphabets_;
  std::vector<double> probs_;
};

/// Marginal over a subset of the joint's axes, stored row-major in axis order.
struct Table {
  std::vector<Axis> axes;
  std::vector<std::size_t> dims;
  std::vector<double> probs;

  double total() const;
  /// Only valid for one-axis tables.
  Distribution to_distribution() const;
};

/// Conditional p(target | given...) with one row per conditioning cell.
/// Rows whose conditioning cell has zero mass are undefined and stored as zeros.
struct ConditionalTable {
  Axis target;
  std::vector<Axis> given;
  std::vector<std::size_t> given_dims;
  std::size_t target_size = 0;
  std::vector<double> probs;  // [cell][target]
  std::vector<double> mass;   // p(cell)

  std::size_t rows() const noexcept { return mass.size(); }
  bool defined(std::size_t cell) const { return mass[cell] > 0.0; }
  std::span<const double> row(std::size_t cell) const {
    return std::span<const double>(probs).subspan(cell * target_size, target_size);
  }
  /// One-axis conditionals only. Undefined rows become uniform; they carry no mass.
  Kernel2 to_kernel2(const Alphabet& from, const Alphabet& to) const;
};

/// p(x,y,z) = p(x) p(y|x) p(z|x,y).
Joint3 compose_joint(const Distribution& prior, const Kernel2& policy, const Kernel3& kernel);

/// Keeps `axes` and sums out the rest.
Table marginal(const Joint3& joint, std::span<const Axis> axes);
Table marginal(const Joint3& joint, std::initializer_list<Axis> axes);

ConditionalTable condition(const Joint3& joint, Axis target, std::span<const Axis> given);
ConditionalTable condition(const Joint3& joint, Axis target, std::initializer_list<Axis> given);

/// D(p||q) in nats with 0 ln(0/q) = 0. Throws DivergenceError where p > 0 = q.
double kl(std::span<const double> p, std::span<const double> q);
double kl(const Distribution& p, const Distribution& q);

/// I(target; source | given) in nats, evaluated as
/// sum p(x,y,z) ln[p(target|source,given) / p(target|given)].
double conditional_mutual_information(const Joint3& joint, Axis target, Axis source, Axis given);

}  // namespace morph
