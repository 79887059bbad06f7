#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "regdecomp/tensor.hpp"

namespace testfix {

inline double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

inline regdecomp::StepTensor random_tensor(int order, int resolution,
                                           regdecomp::Measure measure,
                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t cells = 1;
  for (int i = 0; i < order; ++i) cells *= static_cast<std::size_t>(resolution);
  std::vector<double> values(cells);
  for (auto& v : values) v = uniform_pm1(rng);
  return regdecomp::StepTensor(order, resolution, measure, std::move(values));
}

// The 2x2 sign pattern [[1,-1],[-1,1]] over the probability measure.
inline regdecomp::StepTensor sign_square() {
  return regdecomp::StepTensor(2, 2, regdecomp::Measure::kProbability,
                               {1.0, -1.0, -1.0, 1.0});
}

inline double cell_weight_of(const regdecomp::StepTensor& t) {
  if (t.measure() == regdecomp::Measure::kCounting) return 1.0;
  return std::pow(static_cast<double>(t.resolution()),
                  -static_cast<double>(t.order()));
}

}  // namespace testfix
