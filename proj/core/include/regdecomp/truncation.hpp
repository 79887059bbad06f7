#pragma once

#include <cstdint>
#include <vector>

#include "regdecomp/tensor.hpp"

namespace regdecomp {

// Level-set split f = bounded + tail at the threshold K = eps^(p'/(p'-p)).
// The two parts have disjoint supports: bounded keeps the cells with
// |f| <= K, tail keeps the rest. The tail is certifiably small in the
// weaker norm: lp_norm(tail, p_prime) <= K^((p'-p)/p') = eps.
struct TruncationSplit {
  StepTensor bounded;
  StepTensor tail;
  double threshold_k;
  double tail_norm_bound;  // the certified bound on lp_norm(tail, p_prime)
};

// Splits a Probability-measure tensor with lp_norm(f, p) <= 1. Requires
// p > p_prime >= 1 and eps > 0. For p = inf the threshold is 1 and the
// tail is empty.
TruncationSplit threshold_split(const StepTensor& f, const Exponent& p,
                                const Exponent& p_prime, double epsilon);

enum class RankOneTag { kBounded, kSmall };

// One rank-1 summand of a split product, as its factor vectors. The
// certificate is the quantity the tag bounds: for kBounded the product of
// factor sup norms, for kSmall the product of factor s-norms (probability
// weights), which the construction keeps <= eps.
struct RankOneTerm {
  RankOneTag tag;
  std::vector<std::vector<double>> factors;
  double certificate;
};

// Tagged decomposition of an outer product of unit-p-ball factors. The
// terms sum to the exact outer product; every kBounded term lies in
// bound_constant * R^inf and every kSmall term in eps * R^s, for the
// bound_constant this instance constructs (no universal formula is
// claimed).
struct RankOneSplit {
  std::vector<RankOneTerm> terms;
  double bound_constant;
};

// Splits factor_1 x ... x factor_l, each factor in the unit L^p ball under
// the probability weights on its axis, into bounded and eps-small rank-1
// terms. Requires p > s >= 1, eps > 0, all factors of one positive length.
// A single factor reduces to threshold_split; identically zero pieces are
// dropped, so an input already below the computed threshold comes back as
// one kBounded term.
RankOneSplit rank1_split(const std::vector<std::vector<double>>& factors,
                         const Exponent& p, const Exponent& s, double epsilon);

// Smallest sufficient support size for eps-accurate top-k truncation of a
// unit-p-ball vector measured in the q norm, 1 <= p < q <= inf, eps in
// (0, 1]. For q = inf this is ceil(eps^-p); for finite q the smallest k
// whose integral-test tail bound k^(1-q/p)/(q/p - 1) is <= eps^q.
std::int64_t k_bound(const Exponent& p, const Exponent& q, double epsilon);

// Top-k truncation x |-> x_K: sparse agrees with x on the support K and is
// zero elsewhere; |K| <= k_bound_used. The support is sorted ascending.
struct SparsifyResult {
  std::vector<std::int64_t> support;
  StepTensor sparse;
  std::int64_t k_bound_used;
  double achieved_error;  // lp_norm(x - sparse, q), guaranteed <= eps
};

// Keeps the k_bound(p, q, eps) largest-magnitude cells of a Counting-measure
// tensor with lp_norm(x, p) <= 1. Ties break toward the lowest flat index;
// zero cells are never included in the support.
SparsifyResult top_k_sparsify(const StepTensor& x, const Exponent& p,
                              const Exponent& q, double epsilon);

}  // namespace regdecomp
