#pragma once

#include <functional>
#include <vector>

#include "regdecomp/seminorm.hpp"
#include "regdecomp/tensor.hpp"

namespace regdecomp {

struct GreedyTerm {
  double coefficient;
  StepTensor witness;
};

struct GreedyDecomposition {
  std::vector<GreedyTerm> terms;
  StepTensor residual;
  int k_requested;
  bool certified;           // every oracle call was exhaustive
  double residual_r_bound;  // oracle value at the final residual
};

// Greedy weak-regularity decomposition: peel a = sum c_i r_i + residual by
// repeatedly subtracting <a_i, r> r for the oracle's best response r, while
// the response value stays >= 1/sqrt(k). Each accepted step lowers the
// squared 2-norm by at least value^2, so at most k terms are ever taken and
// the loop always terminates with the residual bound recorded.
//
// pre: Probability measure, lp_norm(a, 2) <= 1 + 1e-12, and the family's
// members must lie in the unit 2-ball (any cut/sign/rectangle family, or
// hoelder(q) with q >= 2).
GreedyDecomposition greedy_decompose(const StepTensor& a,
                                     const SeminormFamily& family, int k,
                                     const Mode& mode);

struct PipelineApprox {
  StepTensor bounded_part;
  StepTensor approximant;
  double scale_c;
  std::vector<GreedyTerm> terms;
  double error_bound;    // tail bound + scale_c * residual bound
  double measured_error; // r_seminorm(family, w - approximant) in `mode`
  bool certified;
};

// Bounded-approximation pipeline for w in the unit L^p ball, p > 1: threshold
// w at c = eps^(1/(1-p)) so the tail is eps-small in L^1, then run the greedy
// decomposition on bounded/c with k = ceil((c/eps)^2). The returned
// approximant satisfies ||w - approximant||_R <= 2 eps in exact mode.
// Family must be cut or rectangle.
PipelineApprox weak_banach_approx(const StepTensor& w, const Exponent& p,
                                  const SeminormFamily& family, double epsilon,
                                  const Mode& mode);

struct StrongDecomposition {
  StepTensor w_prime;
  StepTensor y;
  int parts;        // m, parts of the final axis partition
  double r_gap;     // bound on r_seminorm(family, w - w_prime)
  double l2_gap;    // lp_norm(w_prime - y, 2)
  int rounds;
  bool certified;
};

// Strong decomposition with an error budget h(epsilon, m) that may depend on
// the number of partition parts m. Rounds: average w over the current axis
// partition to get y, greedily strip w - y down to an R-small residual with
// k = max(schedule, ceil(h^-2)) (schedule 4, 8, 16, ...), and accept
// w' = w - residual once ||w - w'||_R <= h(epsilon, m) and
// ||w' - y||_2 <= epsilon. A failed round refines the partition by the
// witnesses' slice patterns; a witness with nonzero coefficient against
// w - y is never measurable in the current partition, so each failed round
// refines strictly and the loop ends after at most n-1 refinements.
//
// pre: lp_norm(w, 2) <= 1 + 1e-12, Probability measure, order 2,
// h maps into (0, 1).
StrongDecomposition strong_decompose(
    const StepTensor& w, const SeminormFamily& family, double epsilon,
    const std::function<double(double, int)>& h, const Mode& mode);

// Conditional expectation of an order-2 tensor onto the blocks of an axis
// partition (applied to both axes). `parts` must partition [0, n).
StepTensor partition_average(const StepTensor& w,
                             const std::vector<std::vector<int>>& parts);

}  // namespace regdecomp
