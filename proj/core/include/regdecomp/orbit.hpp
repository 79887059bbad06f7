#pragma once

#include <cstdint>
#include <vector>

#include "regdecomp/seminorm.hpp"
#include "regdecomp/tensor.hpp"

namespace regdecomp {

// A relabeling of the n uniform cells of one axis, acting simultaneously on
// every axis of a tensor. perm[i] is the image of cell i and must visit each
// index exactly once.
struct BlockPermutation {
  std::vector<int> perm;

  static BlockPermutation identity(int n);
};

// g.t with (g.t)(i_1, ..., i_l) = t(g^-1 i_1, ..., g^-1 i_l). Preserves every
// lp_norm and every permutation-stable seminorm.
StepTensor apply_permutation(const StepTensor& t, const BlockPermutation& g);

// Replicates cells so the tensor lives at a finer resolution; the new
// resolution must be a positive multiple of the old one. Values (and every
// Probability-measure norm) are unchanged.
StepTensor refine_to(const StepTensor& t, int resolution);

struct OrbitDistanceResult {
  double distance;
  BlockPermutation aligner;
  bool exact;
};

// inf over permutations g of r_seminorm(family, a - g.b). Tensors must share
// order and measure; differing resolutions are first unified by common
// refinement, and the family must match the unified shape. Exact mode
// enumerates all n! permutations with the exact inner oracle and is limited
// to n <= 8. Heuristic mode runs first-improvement transposition descent
// from a sorted-marginal alignment plus `restarts` seeded random starts and
// returns an upper bound; candidate alignments are scored with the exact
// inner oracle whenever the family enumerates in at most 1024 steps, so at
// small resolutions the heuristic value always dominates the exact one. At
// larger resolutions the descent ranks candidates with a single-start
// oracle and rescores the winning alignment with the full inner mode.
OrbitDistanceResult orbit_distance(const StepTensor& a, const StepTensor& b,
                                   const SeminormFamily& family,
                                   const Mode& mode);

// Greedy farthest-point epsilon-net in the orbit pseudometric. net holds
// indices into samples; assignment[i] is the position in net of sample i's
// covering element and distances[i] the distance to it, both as bounded by
// the mode's orbit_distance. Net elements are pairwise more than epsilon
// apart under the same bounds. Deterministic given sample order and seed.
struct CoverResult {
  std::vector<int> net;
  std::vector<int> assignment;
  std::vector<double> distances;
  bool exact;
};

CoverResult greedy_cover(const std::vector<StepTensor>& samples,
                         const SeminormFamily& family, double epsilon,
                         const Mode& mode);

// The interpolation pair 1/p_theta = (1-theta)/p* + theta/q and
// 1/q_theta = (1-theta)/p + theta/q*, with 1/inf = 0. Requires p, q in
// (1, inf], q > dual_exponent(p), and theta in (0, 1).
struct InterpolatedExponents {
  Exponent p_theta;
  Exponent q_theta;
};

InterpolatedExponents interp_exponents(const Exponent& p, const Exponent& q,
                                       double theta);

// Empirical check of the interpolation inequality
// ||W||_{p_theta -> q_theta} <= ||W||_{q -> q*}^theta. Both sides come from
// optimizers, so interpolated_norm is a lower bound and endpoint_norm a
// best-found value; a violation beyond 1e-3 is flagged as an anomaly, never
// as a proof.
struct RieszThorinReport {
  Exponent p_theta;
  Exponent q_theta;
  double interpolated_norm;  // lower bound on ||W||_{p_theta -> q_theta}
  double endpoint_norm;      // best found ||W||_{q -> q*}
  double endpoint_power;     // endpoint_norm^theta
  bool anomaly;
};

RieszThorinReport riesz_thorin_check(const StepTensor& W, const Exponent& p,
                                     const Exponent& q, double theta,
                                     const Mode& mode);

}  // namespace regdecomp
