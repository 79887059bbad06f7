#pragma once

#include <cstdint>
#include <vector>

#include "regdecomp/seminorm.hpp"
#include "regdecomp/tensor.hpp"

namespace regdecomp::detail {

inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 20;

// Steps an exact best_response would enumerate; UINT64_MAX when no exact
// mode exists (continuum families).
std::uint64_t exact_oracle_steps(const SeminormFamily& family);

// Maximize <g, r>_w over the weighted lq ball ||r||_q <= 1, closed form.
// Returns the maximizer and the attained value (the dual norm of g).
struct DualWitness {
  std::vector<double> vector;
  double value;
};
DualWitness dual_witness(const std::vector<double>& g, const Exponent& q,
                         double axis_weight);

}  // namespace regdecomp::detail
