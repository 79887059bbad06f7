#pragma once

#include <cstdint>
#include <string>

#include "regdecomp/tensor.hpp"

namespace regdecomp {

enum class FamilyKind { kCut, kSign, kHoelder, kRectangle };

// A family R of test tensors inside the unit ball of L^2, defining the
// seminorm ||a||_R = sup_{r in R} |<a, r>|. All four families act on
// Probability-measure tensors of one fixed order and resolution:
//
//   cut        : indicators of A x B, order 2
//   rectangle  : indicators of A_1 x ... x A_l
//   sign       : r_1 x ... x r_l with entries +-1
//   hoelder(q) : r_1 x ... x r_l with lp_norm(r_j, q) <= 1 per factor
class SeminormFamily {
 public:
  static SeminormFamily cut(int resolution);
  static SeminormFamily sign(int order, int resolution);
  static SeminormFamily hoelder(const Exponent& q, int order, int resolution);
  static SeminormFamily rectangle(int order, int resolution);

  FamilyKind kind() const noexcept { return kind_; }
  int order() const noexcept { return order_; }
  int resolution() const noexcept { return resolution_; }
  const Exponent& hoelder_q() const;

  std::string name() const;

 private:
  SeminormFamily(FamilyKind kind, int order, int resolution, Exponent q);
  FamilyKind kind_;
  int order_;
  int resolution_;
  Exponent q_;
};

// Oracle mode. Exact modes enumerate and are permitted only within the
// 2^20-step budget; heuristic modes run `restarts` seeded multistarts
// (per-restart seed = seed XOR restart index) and certify a lower bound.
struct Mode {
  bool exact = false;
  int restarts = 32;
  std::uint64_t seed = 0;

  static Mode Exact() { return Mode{true, 0, 0}; }
  static Mode Heuristic(int restarts = 32, std::uint64_t seed = 0) {
    return Mode{false, restarts, seed};
  }
};

struct OracleResult {
  StepTensor witness;
  double value;  // |inner_product(a, witness)|, recomputed from the witness
  bool exact;    // true only when produced by exhaustive enumeration
};

// argsup_{r in R} |<a, r>|. Exact mode breaks ties by the lexicographically
// smallest witness encoding; heuristic mode is deterministic given the seed.
OracleResult best_response(const SeminormFamily& family, const StepTensor& a,
                           const Mode& mode);

double r_seminorm(const SeminormFamily& family, const StepTensor& a,
                  const Mode& mode);

// ||a||_cut for an order-2 tensor; shorthand for the cut family's seminorm.
double cut_norm(const StepTensor& a, const Mode& mode);

// Operator norm p0 -> q0 of the kernel action (Wf)(x) = sum_y w(y) W(x,y) f(y)
// on an order-2 tensor. Exact mode exists only for (p0, q0) = (inf, 1);
// heuristic mode runs alternating dual ascent and reports a valid lower bound.
double operator_norm(const StepTensor& W, const Exponent& p0,
                     const Exponent& q0, const Mode& mode);

// Whether r lies within 1e-12 of a member of the family.
bool family_membership(const SeminormFamily& family, const StepTensor& r);

}  // namespace regdecomp
