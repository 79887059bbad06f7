#include "regdecomp/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace regdecomp {

namespace {

constexpr std::size_t kMaxCells = std::size_t{1} << 26;

void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

}  // namespace

Exponent::Exponent(double v) : value_(v), infinite_(false) {
  if (std::isinf(v) && v > 0) {
    infinite_ = true;
    value_ = std::numeric_limits<double>::infinity();
    return;
  }
  require(std::isfinite(v) && v >= 1.0,
          "exponent must lie in [1, inf], got " + std::to_string(v));
}

Exponent Exponent::infinity() noexcept { return Exponent(); }

double Exponent::value() const {
  require(!infinite_, "finite exponent value requested from inf");
  return value_;
}

Exponent dual_exponent(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1.0);
  double v = p.value();
  if (v == 1.0) return Exponent::infinity();
  return Exponent(v / (v - 1.0));
}

std::size_t cell_count_for(int order, int resolution) {
  require(order >= 1, "tensor order must be >= 1");
  require(resolution >= 1, "tensor resolution must be >= 1");
  std::size_t cells = 1;
  for (int i = 0; i < order; ++i) {
    require(cells <= kMaxCells / static_cast<std::size_t>(resolution),
            "tensor would exceed the cell limit");
    cells *= static_cast<std::size_t>(resolution);
  }
  return cells;
}

StepTensor::StepTensor(int order, int resolution, Measure measure,
                       std::vector<double> values)
    : order_(order),
      resolution_(resolution),
      measure_(measure),
      values_(std::move(values)) {
  std::size_t cells = cell_count_for(order, resolution);
  require(values_.size() == cells,
          "value count " + std::to_string(values_.size()) +
              " does not match resolution^order = " + std::to_string(cells));
  for (double v : values_) {
    require(std::isfinite(v), "tensor values must be finite");
  }
}

StepTensor StepTensor::zeros(int order, int resolution, Measure measure) {
  return StepTensor(order, resolution, measure,
                    std::vector<double>(cell_count_for(order, resolution), 0.0));
}

StepTensor StepTensor::constant(int order, int resolution, Measure measure,
                                double value) {
  return StepTensor(
      order, resolution, measure,
      std::vector<double>(cell_count_for(order, resolution), value));
}

double StepTensor::cell_weight() const noexcept {
  if (measure_ == Measure::kCounting) return 1.0;
  double w = 1.0;
  for (int i = 0; i < order_; ++i) w /= static_cast<double>(resolution_);
  return w;
}

bool StepTensor::same_shape(const StepTensor& other) const noexcept {
  return order_ == other.order_ && resolution_ == other.resolution_ &&
         measure_ == other.measure_;
}

StepTensor& StepTensor::operator+=(const StepTensor& other) {
  require(same_shape(other), "shape/measure mismatch in tensor addition");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

StepTensor& StepTensor::operator-=(const StepTensor& other) {
  require(same_shape(other), "shape/measure mismatch in tensor subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

StepTensor& StepTensor::operator*=(double scalar) {
  require(std::isfinite(scalar), "scalar must be finite");
  for (double& v : values_) v *= scalar;
  return *this;
}

StepTensor operator+(StepTensor a, const StepTensor& b) { return a += b; }
StepTensor operator-(StepTensor a, const StepTensor& b) { return a -= b; }
StepTensor operator*(double scalar, StepTensor t) { return t *= scalar; }

double lp_norm(const StepTensor& t, const Exponent& p) {
  const auto& x = t.values();
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double pv = p.value();
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double w = t.cell_weight();
  double acc = 0.0;
  if (pv == 1.0) {
    for (double v : x) acc += std::abs(v);
    return w * acc;
  }
  if (pv == 2.0) {
    for (double v : x) acc += (v / m) * (v / m);
  } else {
    for (double v : x) acc += std::pow(std::abs(v) / m, pv);
  }
  return m * std::pow(w * acc, 1.0 / pv);
}

double inner_product(const StepTensor& a, const StepTensor& b) {
  if (!a.same_shape(b)) {
    throw precondition_error("shape/measure mismatch in inner product");
  }
  double acc = 0.0;
  const auto& x = a.values();
  const auto& y = b.values();
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return a.cell_weight() * acc;
}

StepTensor rank1(const std::vector<std::vector<double>>& factors,
                 Measure measure) {
  require(!factors.empty(), "rank1 needs at least one factor");
  int order = static_cast<int>(factors.size());
  std::size_t n = factors[0].size();
  require(n >= 1, "rank1 factors must be nonempty");
  for (const auto& f : factors) {
    require(f.size() == n, "rank1 factors must share one length");
    for (double v : f) require(std::isfinite(v), "rank1 factors must be finite");
  }
  int res = static_cast<int>(n);
  std::size_t cells = cell_count_for(order, res);
  std::vector<double> values(cells, 1.0);
  std::size_t stride = cells;
  for (int axis = 0; axis < order; ++axis) {
    stride /= n;
    for (std::size_t flat = 0; flat < cells; ++flat) {
      values[flat] *= factors[static_cast<std::size_t>(axis)][(flat / stride) % n];
    }
  }
  return StepTensor(order, res, measure, std::move(values));
}

namespace {

// 53-bit uniform in (0,1]; feeding Box-Muller below keeps the byte stream
// identical across standard libraries.
double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

StepTensor random_ball_sample(int order, int resolution, const Exponent& p,
                              Measure measure, std::uint64_t seed) {
  std::size_t cells = cell_count_for(order, resolution);
  std::mt19937_64 rng(seed);
  std::vector<double> values(cells);
  const double two_pi = 6.283185307179586476925286766559;
  for (std::size_t i = 0; i < cells; i += 2) {
    double u1 = unit_open(rng);
    double u2 = unit_open(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    values[i] = r * std::cos(two_pi * u2);
    if (i + 1 < cells) values[i + 1] = r * std::sin(two_pi * u2);
  }
  StepTensor t(order, resolution, measure, std::move(values));
  double norm = lp_norm(t, p);
  if (norm > 1.0) t *= 1.0 / norm;
  return t;
}

}  // namespace regdecomp
