#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "regdecomp/errors.hpp"

namespace regdecomp {

// Convention for turning a value grid into a measure space.
//
//   Probability : each cell carries weight n^-l, so the constant-one tensor
//                 has unit mass and L^p norms are nested increasingly in p.
//   Counting    : each cell carries weight 1; norms are the usual vector
//                 l^p norms and nest decreasingly in p.
enum class Measure { kProbability, kCounting };

// An exponent in [1, inf]. Infinity is a tagged value with exact dispatch,
// not a number that happens to be large; is_infinite() is the discriminant.
class Exponent {
 public:
  Exponent(double v);  // NOLINT: implicit by design, lp_norm(t, 2) should read plainly
  static Exponent infinity() noexcept;

  bool is_infinite() const noexcept { return infinite_; }
  // Finite value; calling this on an infinite exponent is a contract error.
  double value() const;
  // 1/p, with 1/inf == 0. Safe for both branches.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator<(const Exponent& a, const Exponent& b) noexcept {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Exponent& a, const Exponent& b) noexcept {
    return a == b || a < b;
  }

 private:
  Exponent() noexcept : value_(0), infinite_(true) {}
  double value_;
  bool infinite_;
};

// Holder conjugate: 1/p + 1/p* = 1, with 1* = inf and inf* = 1.
Exponent dual_exponent(const Exponent& p);

// A step function on [0,1]^l stored as an order-l tensor of reals, constant
// on the cells of the uniform n-subdivision of each axis. Values are
// row-major: the flat index of (i_1, ..., i_l) is ((i_1*n + i_2)*n + ...).
// All norms, inner products and oracles read the attached Measure; mixing
// tensors of different shape or measure in one operation is a precondition
// error, never a silent coercion.
class StepTensor {
 public:
  StepTensor(int order, int resolution, Measure measure,
             std::vector<double> values);

  static StepTensor zeros(int order, int resolution, Measure measure);
  static StepTensor constant(int order, int resolution, Measure measure,
                             double value);

  int order() const noexcept { return order_; }
  int resolution() const noexcept { return resolution_; }
  Measure measure() const noexcept { return measure_; }

  std::size_t cell_count() const noexcept { return values_.size(); }
  // Weight of a single cell under the attached measure.
  double cell_weight() const noexcept;

  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t flat) const noexcept { return values_[flat]; }
  double& operator[](std::size_t flat) noexcept { return values_[flat]; }

  bool same_shape(const StepTensor& other) const noexcept;

  StepTensor& operator+=(const StepTensor& other);
  StepTensor& operator-=(const StepTensor& other);
  StepTensor& operator*=(double scalar);

 private:
  int order_;
  int resolution_;
  Measure measure_;
  std::vector<double> values_;
};

StepTensor operator+(StepTensor a, const StepTensor& b);
StepTensor operator-(StepTensor a, const StepTensor& b);
StepTensor operator*(double scalar, StepTensor t);

// Number of cells n^l, with an overflow/size guard.
std::size_t cell_count_for(int order, int resolution);

// (sum_x w(x) |t(x)|^p)^(1/p), or max |t(x)| for p = inf. Internally rescaled
// so large finite p does not overflow.
double lp_norm(const StepTensor& t, const Exponent& p);

// sum_x w(x) a(x) b(x); shapes and measures must agree.
double inner_product(const StepTensor& a, const StepTensor& b);

// Outer product f_1 x ... x f_l of order-1 factor vectors, all of one length.
StepTensor rank1(const std::vector<std::vector<double>>& factors,
                 Measure measure);

// Deterministic draw from the unit ball of L^p: i.i.d. standard normals
// rescaled by max(1, lp_norm). Same seed, same bytes, on every platform (the
// generator layers Box-Muller over raw mt19937_64 output; no distribution
// from <random> whose stream is implementation-defined is involved).
StepTensor random_ball_sample(int order, int resolution, const Exponent& p,
                              Measure measure, std::uint64_t seed);

}  // namespace regdecomp
